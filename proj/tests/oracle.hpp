#pragma once

#include <cstdint>

#include "bp2d/instance.hpp"

namespace bp2d::testing {

// Deterministic generator for the random corpora (independent of the
// standard library's distributions).
struct TestRng {
    uint64_t s;
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int uniform(int lo, int hi) {
        return lo + static_cast<int>(next() % (uint64_t)(hi - lo + 1));
    }
};

Instance random_instance(uint64_t seed, int n_min, int n_max, int W, int H);

/// Exact minimum bin count: subset DP over single-bin feasibility decided by
/// the exhaustive placement oracle. Intended for n <= 10.
int optimal_bins_brute(const Instance& inst);

}  // namespace bp2d::testing
