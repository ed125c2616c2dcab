#include "oracle.hpp"

#include <vector>

#include "bp2d/opp.hpp"

namespace bp2d::testing {

Instance random_instance(uint64_t seed, int n_min, int n_max, int W, int H) {
    TestRng rng{seed * 0x9e3779b97f4a7c15ULL + 12345};
    Instance inst;
    inst.W = W;
    inst.H = H;
    int n = rng.uniform(n_min, n_max);
    for (int j = 0; j < n; ++j)
        inst.items.push_back({j, rng.uniform(1, W), rng.uniform(1, H)});
    inst.m = n;
    return inst;
}

int optimal_bins_brute(const Instance& inst) {
    const int n = inst.n();
    const int full = (1 << n) - 1;
    std::vector<char> feasible(full + 1, 0);
    for (int mask = 1; mask <= full; ++mask) {
        std::vector<Item> items;
        for (int j = 0; j < n; ++j)
            if (mask & (1 << j)) items.push_back(inst.items[j]);
        feasible[mask] =
            opp_brute_force(items, inst.W, inst.H).verdict ==
            OppVerdict::Feasible;
    }
    std::vector<int> best(full + 1, n + 1);
    best[0] = 0;
    for (int mask = 1; mask <= full; ++mask) {
        for (int sub = mask; sub; sub = (sub - 1) & mask) {
            if (!feasible[sub]) continue;
            best[mask] = std::min(best[mask], best[mask ^ sub] + 1);
        }
    }
    return best[full];
}

}  // namespace bp2d::testing
