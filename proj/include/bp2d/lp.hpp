#pragma once

#include <vector>

namespace bp2d {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

/// A small dense LP. All variables are non-negative; bounds beyond that are
/// expressed as rows. Rows may use relations '<', '>', '='.
struct LinearProgram {
    bool maximize = true;
    int num_vars = 0;
    std::vector<double> objective;

    struct Row {
        std::vector<std::pair<int, double>> coeffs;
        char rel = '<';
        double rhs = 0.0;
    };
    std::vector<Row> rows;

    int add_var(double obj_coeff) {
        objective.push_back(obj_coeff);
        return num_vars++;
    }
    void add_row(std::vector<std::pair<int, double>> coeffs, char rel,
                 double rhs) {
        rows.push_back({std::move(coeffs), rel, rhs});
    }
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    std::vector<double> x;
    std::vector<double> duals;   // one per row, sign convention of the row
    std::vector<int> basis;      // basic column indices, reusable as warm start
};

/// Two-phase primal simplex on a dense tableau, Dantzig pricing with a
/// Bland's-rule fallback to guarantee termination. Deterministic for a fixed
/// input ordering. `warm_basis` (from a previous solve of a related program)
/// skips phase one when it is still feasible.
LpSolution solve_lp(const LinearProgram& lp,
                    const std::vector<int>* warm_basis = nullptr);

struct KnapsackResult {
    double value = 0.0;
    std::vector<int> chosen;  // indices into the input arrays
};

/// Exact 0-1 knapsack by dynamic programming over the capacity.
KnapsackResult knapsack_01(const std::vector<int>& weights, int capacity,
                           const std::vector<double>& profits);

}  // namespace bp2d
