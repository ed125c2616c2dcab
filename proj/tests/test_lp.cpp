#include <doctest.h>

#include <cmath>

#include "bp2d/lp.hpp"
#include "oracle.hpp"

using namespace bp2d;

TEST_CASE("simplex solves the basic cases") {
    {
        LinearProgram lp;
        lp.add_var(1.0);
        lp.add_row({{0, 1.0}}, '<', 10.0);
        LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.value == doctest::Approx(10.0));
    }
    {
        LinearProgram lp;
        lp.add_var(1.0);
        lp.add_var(1.0);
        lp.add_row({{0, 1.0}, {1, 1.0}}, '<', 10.0);
        LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.value == doctest::Approx(10.0));
        CHECK(s.duals[0] == doctest::Approx(1.0));
    }
    {
        LinearProgram lp;
        lp.add_var(1.0);
        lp.add_row({{0, 1.0}}, '<', -1.0);
        CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    }
    {
        LinearProgram lp;  // unbounded
        lp.add_var(1.0);
        lp.add_row({{0, 1.0}}, '>', 1.0);
        CHECK(solve_lp(lp).status == LpStatus::Unbounded);
    }
    {
        LinearProgram lp;  // minimization with equality
        lp.maximize = false;
        lp.add_var(3.0);
        lp.add_var(5.0);
        lp.add_row({{0, 1.0}, {1, 1.0}}, '=', 4.0);
        LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.value == doctest::Approx(12.0));
    }
}

TEST_CASE("duals satisfy strong duality and sign conventions") {
    for (uint64_t seed = 1; seed <= 60; ++seed) {
        bp2d::testing::TestRng rng{seed};
        LinearProgram lp;
        int nv = rng.uniform(1, 5);
        for (int j = 0; j < nv; ++j) lp.add_var(rng.uniform(-3, 8));
        // Box rows keep it bounded; a few general rows exercise every sense.
        for (int j = 0; j < nv; ++j)
            lp.add_row({{j, 1.0}}, '<', rng.uniform(1, 10));
        int extra = rng.uniform(0, 3);
        for (int r = 0; r < extra; ++r) {
            std::vector<std::pair<int, double>> row;
            for (int j = 0; j < nv; ++j)
                if (rng.uniform(0, 1)) row.push_back({j, double(rng.uniform(1, 4))});
            if (row.empty()) row.push_back({0, 1.0});
            char rel = rng.uniform(0, 1) ? '<' : '>';
            double rhs = rel == '<' ? rng.uniform(2, 20) : 0.0;
            lp.add_row(std::move(row), rel, rhs);
        }
        LpSolution s = solve_lp(lp);
        if (s.status != LpStatus::Optimal) continue;

        double dual_value = 0.0;
        for (size_t i = 0; i < lp.rows.size(); ++i) {
            dual_value += s.duals[i] * lp.rows[i].rhs;
            if (lp.rows[i].rel == '<') CHECK(s.duals[i] >= -1e-7);
            if (lp.rows[i].rel == '>') CHECK(s.duals[i] <= 1e-7);
        }
        CHECK(dual_value == doctest::Approx(s.value).epsilon(1e-7));

        // Dual feasibility: reduced costs of all variables non-positive.
        for (int j = 0; j < nv; ++j) {
            double aty = 0.0;
            for (size_t i = 0; i < lp.rows.size(); ++i)
                for (auto [col, v] : lp.rows[i].coeffs)
                    if (col == j) aty += s.duals[i] * v;
            CHECK(lp.objective[j] - aty <= 1e-6);
        }
    }
}

TEST_CASE("knapsack matches the pinned cases") {
    {
        auto r = knapsack_01({6, 6, 6}, 10, {10.0, 10.0, 10.0});
        CHECK(r.value == doctest::Approx(10.0));
        CHECK(r.chosen.size() == 1);
    }
    {
        auto r = knapsack_01({3, 4}, 0, {1.0, 1.0});
        CHECK(r.value == doctest::Approx(0.0));
        CHECK(r.chosen.empty());
    }
    {
        auto r = knapsack_01({3, 4}, 7, {1.0, 1.0});
        CHECK(r.value == doctest::Approx(2.0));
        CHECK(r.chosen.size() == 2);
    }
}

TEST_CASE("knapsack equals exhaustive enumeration") {
    for (uint64_t seed = 1; seed <= 200; ++seed) {
        bp2d::testing::TestRng rng{seed * 77};
        int n = rng.uniform(1, 15);
        int cap = rng.uniform(0, 40);
        std::vector<int> w(n);
        std::vector<double> p(n);
        for (int i = 0; i < n; ++i) {
            w[i] = rng.uniform(1, 20);
            p[i] = rng.uniform(0, 30) / 3.0;
        }
        auto r = knapsack_01(w, cap, p);

        double best = 0.0;
        for (int mask = 0; mask < (1 << n); ++mask) {
            int tw = 0;
            double tp = 0.0;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) {
                    tw += w[i];
                    tp += p[i];
                }
            if (tw <= cap) best = std::max(best, tp);
        }
        CHECK(r.value == doctest::Approx(best).epsilon(1e-9));

        int cw = 0;
        double cp = 0.0;
        for (int i : r.chosen) {
            cw += w[i];
            cp += p[i];
        }
        CHECK(cw <= cap);
        CHECK(cp == doctest::Approx(r.value));
    }
}
