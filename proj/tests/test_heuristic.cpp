#include <doctest.h>

#include "bp2d/heuristic.hpp"
#include "oracle.hpp"

using namespace bp2d;

TEST_CASE("bin_fill pins the basic cases") {
    {
        FillResult r = bin_fill({{0, 3, 10}}, 3, 10);
        REQUIRE(r.packed.size() == 1);
        CHECK(r.coords[0].x == 0);
        CHECK(r.coords[0].y == 0);
    }
    {
        FillResult r = bin_fill({{0, 6, 6}, {1, 6, 6}, {2, 6, 6}}, 10, 10);
        CHECK(r.packed.size() == 1);
    }
    {
        FillResult r = bin_fill({{0, 6, 6}, {1, 4, 4}, {2, 4, 4}}, 10, 10);
        CHECK(r.packed.size() == 3);
    }
}

TEST_CASE("bin_fill never claims an unplaced item") {
    for (uint64_t seed = 0; seed < 100; ++seed) {
        Instance inst = bp2d::testing::random_instance(seed, 1, 10, 10, 10);
        FillResult r = bin_fill(inst.items, inst.W, inst.H);
        Solution sol;
        BinPacking bin;
        for (int idx : r.packed) bin.items.push_back(inst.items[idx].id);
        bin.coords = r.coords;
        sol.bins.push_back(bin);
        // Check in-bounds and overlap only (partial packing is fine).
        Instance sub;
        sub.W = inst.W;
        sub.H = inst.H;
        std::vector<int> remap(inst.n(), -1);
        for (int idx : r.packed) {
            remap[inst.items[idx].id] = sub.n();
            Item copy = inst.items[idx];
            copy.id = sub.n();
            sub.items.push_back(copy);
        }
        for (auto& p : sol.bins[0].coords) p.id = remap[p.id];
        for (auto& id : sol.bins[0].items) id = remap[id];
        sub.m = std::max(1, sub.n());
        if (sub.n() > 0) CHECK(!verify_solution(sub, sol));
    }
}

TEST_CASE("initial_solution pins the basic cases") {
    {
        Instance inst;
        inst.W = inst.H = 10;
        inst.items = {{0, 6, 6}, {1, 6, 6}, {2, 6, 6}};
        inst.m = 3;
        Solution sol = initial_solution(inst);
        CHECK(sol.upper_bound == 3);
        CHECK(!verify_solution(inst, sol));
    }
    {
        Instance inst;
        inst.W = inst.H = 10;
        inst.items = {{0, 5, 10}, {1, 5, 10}};
        inst.m = 2;
        Solution sol = initial_solution(inst);
        CHECK(sol.upper_bound == 1);
        CHECK(!verify_solution(inst, sol));
    }
    {
        Instance inst;
        inst.W = inst.H = 10;
        inst.items = {{0, 2, 2}};
        Solution sol = initial_solution(inst, 3);
        CHECK(sol.upper_bound == 3);
        CHECK(sol.external_bound);
        CHECK(sol.bins.empty());
    }
}

TEST_CASE("heuristic solutions always verify") {
    for (uint64_t seed = 0; seed < 150; ++seed) {
        Instance inst = bp2d::testing::random_instance(seed + 1000, 1, 12, 10, 10);
        Solution sol = initial_solution(inst);
        auto violation = verify_solution(inst, sol);
        if (violation) FAIL("seed ", seed, ": ", *violation);
        CHECK(sol.upper_bound == (int)sol.bins.size());
    }
}
