#include "bp2d/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bp2d {

namespace {

constexpr double kEps = 1e-9;
constexpr double kPivotEps = 1e-9;

// Dense tableau simplex on:  maximize c'x  s.t.  Ax = b, x >= 0, b >= 0,
// after slack/surplus/artificial augmentation. The artificial column of row
// i is the unit vector e_i, which makes dual extraction uniform.
struct Tableau {
    int m = 0;
    int n = 0;                           // structural + slack + artificial
    std::vector<std::vector<double>> a;  // m x (n+1), last column = rhs
    std::vector<double> cost;            // n
    std::vector<int> basis;              // basic column per row
    long long iterations = 0;

    double rhs(int i) const { return a[i][n]; }

    void pivot(int row, int col) {
        std::vector<double>& pr = a[row];
        double inv = 1.0 / pr[col];
        for (int j = 0; j <= n; ++j) pr[j] *= inv;
        pr[col] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = a[i][col];
            if (std::fabs(f) < kPivotEps) { a[i][col] = 0.0; continue; }
            std::vector<double>& ri = a[i];
            for (int j = 0; j <= n; ++j) ri[j] -= f * pr[j];
            ri[col] = 0.0;
        }
        basis[row] = col;
    }

    double reduced_cost(int j) const {
        double zj = 0.0;
        for (int i = 0; i < m; ++i)
            if (a[i][j] != 0.0) zj += cost[basis[i]] * a[i][j];
        return cost[j] - zj;
    }

    // Returns false on unboundedness. Dantzig pricing, switching to Bland's
    // rule after a quarter of the iteration budget so degeneracy terminates.
    bool optimize(const std::vector<char>& allowed, long long max_iter) {
        const long long bland_after = iterations + max_iter / 4;
        const long long stop = iterations + max_iter;
        for (;;) {
            if (iterations >= stop) return true;
            bool bland = iterations >= bland_after;
            int enter = -1;
            double best = kEps;
            for (int j = 0; j < n; ++j) {
                if (!allowed[j]) continue;
                double rc = reduced_cost(j);
                if (rc > best) {
                    enter = j;
                    if (bland) break;
                    best = rc;
                }
            }
            if (enter < 0) return true;  // optimal
            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m; ++i) {
                if (a[i][enter] > kPivotEps) {
                    double ratio = rhs(i) / a[i][enter];
                    if (leave < 0 || ratio < best_ratio - kEps ||
                        (ratio < best_ratio + kEps && basis[i] < basis[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
            ++iterations;
        }
    }

    double objective_value() const {
        double v = 0.0;
        for (int i = 0; i < m; ++i) v += cost[basis[i]] * rhs(i);
        return v;
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const std::vector<int>* warm_basis) {
    const int m = static_cast<int>(lp.rows.size());
    const int nv = lp.num_vars;
    const int slack0 = nv;
    const int art0 = nv + m;

    Tableau t;
    t.m = m;
    t.n = nv + 2 * m;
    t.basis.assign(m, -1);
    t.cost.assign(t.n, 0.0);

    std::vector<double> row_sign(m, 1.0);
    std::vector<char> has_slack(m, 0);

    auto rebuild = [&]() {
        t.a.assign(m, std::vector<double>(t.n + 1, 0.0));
        for (int i = 0; i < m; ++i) {
            const LinearProgram::Row& r = lp.rows[i];
            double s = r.rhs < 0.0 ? -1.0 : 1.0;
            row_sign[i] = s;
            char rel = r.rel;
            if (s < 0.0 && rel != '=') rel = rel == '<' ? '>' : '<';
            for (const auto& [j, v] : r.coeffs) t.a[i][j] += s * v;
            t.a[i][t.n] = s * r.rhs;
            if (rel == '<') {
                t.a[i][slack0 + i] = 1.0;
                has_slack[i] = 1;
            } else if (rel == '>') {
                t.a[i][slack0 + i] = -1.0;
                has_slack[i] = 1;
            }
            t.a[i][art0 + i] = 1.0;
        }
    };
    rebuild();

    std::vector<char> allowed(t.n, 1);

    auto warm_start = [&]() -> bool {
        if (!warm_basis || static_cast<int>(warm_basis->size()) != m) return false;
        for (int c : *warm_basis)
            if (c < 0 || c >= art0) return false;
        for (int i = 0; i < m; ++i) {
            int col = (*warm_basis)[i];
            int prow = -1;
            double best = 1e-7;
            for (int r = i; r < m; ++r)
                if (std::fabs(t.a[r][col]) > best) {
                    best = std::fabs(t.a[r][col]);
                    prow = r;
                }
            if (prow < 0) return false;
            std::swap(t.a[i], t.a[prow]);
            t.basis[i] = col;
            double inv = 1.0 / t.a[i][col];
            for (int j = 0; j <= t.n; ++j) t.a[i][j] *= inv;
            for (int r = 0; r < m; ++r) {
                if (r == i) continue;
                double f = t.a[r][col];
                if (std::fabs(f) < kPivotEps) continue;
                for (int j = 0; j <= t.n; ++j) t.a[r][j] -= f * t.a[i][j];
            }
        }
        for (int i = 0; i < m; ++i)
            if (t.rhs(i) < -1e-7) return false;
        for (int i = 0; i < m; ++i)
            if (t.rhs(i) < 0.0) t.a[i][t.n] = 0.0;
        return true;
    };

    if (!warm_start()) {
        rebuild();
        bool need_phase1 = false;
        for (int i = 0; i < m; ++i) {
            if (has_slack[i] && t.a[i][slack0 + i] > 0.5) {
                t.basis[i] = slack0 + i;
            } else {
                t.basis[i] = art0 + i;
                need_phase1 = true;
            }
        }
        if (need_phase1) {
            for (int i = 0; i < m; ++i) t.cost[art0 + i] = -1.0;
            t.optimize(allowed, 20000);
            if (-t.objective_value() > 1e-7) {
                LpSolution out;
                out.status = LpStatus::Infeasible;
                return out;
            }
            // Drive artificials that linger in the basis at level zero out
            // whenever some real column can replace them; a row where none
            // can is redundant and its artificial stays pinned at zero.
            for (int i = 0; i < m; ++i) {
                if (t.basis[i] >= art0) {
                    for (int j = 0; j < art0; ++j)
                        if (std::fabs(t.a[i][j]) > 1e-7) {
                            t.pivot(i, j);
                            break;
                        }
                }
            }
            std::fill(t.cost.begin(), t.cost.end(), 0.0);
        }
    }

    for (int i = 0; i < m; ++i) allowed[art0 + i] = 0;

    const double obj_sign = lp.maximize ? 1.0 : -1.0;
    for (int j = 0; j < nv; ++j) t.cost[j] = obj_sign * lp.objective[j];
    long long before = t.iterations;
    bool bounded = t.optimize(allowed, 200000);

    LpSolution out;
    if (!bounded) {
        out.status = LpStatus::Unbounded;
        return out;
    }
    out.status = (t.iterations - before) >= 200000 ? LpStatus::IterationLimit
                                                   : LpStatus::Optimal;
    out.x.assign(nv, 0.0);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < nv) out.x[t.basis[i]] = std::max(0.0, t.rhs(i));
    out.value = obj_sign * t.objective_value();
    out.basis = t.basis;

    // y_scaled_i is the z-value of the artificial (identity) column of row i;
    // undo the row scaling and the objective-sense flip.
    out.duals.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double zj = 0.0;
        for (int r = 0; r < m; ++r) {
            double v = t.a[r][art0 + i];
            if (v != 0.0) zj += t.cost[t.basis[r]] * v;
        }
        out.duals[i] = obj_sign * row_sign[i] * zj;
    }
    return out;
}

KnapsackResult knapsack_01(const std::vector<int>& weights, int capacity,
                           const std::vector<double>& profits) {
    const int n = static_cast<int>(weights.size());
    KnapsackResult res;
    if (capacity < 0) return res;
    std::vector<double> dp(capacity + 1, 0.0);
    std::vector<std::vector<char>> take(n, std::vector<char>(capacity + 1, 0));
    for (int i = 0; i < n; ++i) {
        int w = weights[i];
        double p = profits[i];
        if (w > capacity || p <= 0.0) continue;
        for (int c = capacity; c >= w; --c) {
            double cand = dp[c - w] + p;
            if (cand > dp[c] + 1e-12) {
                dp[c] = cand;
                take[i][c] = 1;
            }
        }
    }
    res.value = dp[capacity];
    int c = capacity;
    for (int i = n - 1; i >= 0; --i) {
        if (take[i][c]) {
            res.chosen.push_back(i);
            c -= weights[i];
        }
    }
    std::reverse(res.chosen.begin(), res.chosen.end());
    return res;
}

}  // namespace bp2d
