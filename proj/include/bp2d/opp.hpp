#pragma once

#include <vector>

#include "bp2d/instance.hpp"

namespace bp2d {

enum class OppVerdict { Feasible, Infeasible, Timeout };

struct OppResult {
    OppVerdict verdict = OppVerdict::Infeasible;
    Placement placement;  // set iff Feasible
    long long nodes = 0;
    double seconds = 0.0;
};

/// Normal patterns: for each item j, the subset sums of the other items'
/// sizes that leave room for j (<= cap - size_j), sorted ascending.
std::vector<std::vector<int>> normal_patterns(const std::vector<int>& sizes,
                                              int cap);

/// Meet-in-the-middle positions for threshold t: left-aligned normal
/// positions below t plus mirrored right-aligned positions at or above t.
/// Feasibility-preserving for any t in [1, cap].
std::vector<std::vector<int>> mim_positions(const std::vector<int>& sizes,
                                            int cap, int t);

/// Threshold minimizing the total candidate-position count (ties toward the
/// smaller t), scanned over the values where the count can change.
int choose_mim_threshold(const std::vector<int>& sizes, int cap);

/// Decides whether the items fit into one W x H bin. The x-coordinates are
/// searched over meet-in-the-middle positions under per-column height
/// capacity; each complete x-assignment is checked for consistent
/// y-coordinates by a dedicated branch-and-bound. Exhaustion proves
/// infeasibility.
OppResult opp_check(const std::vector<Item>& items, int W, int H,
                    double time_limit_sec = 1e18);

/// Exhaustive oracle over normal-pattern coordinate pairs. Exact; intended
/// for small sets.
OppResult opp_brute_force(const std::vector<Item>& items, int W, int H);

}  // namespace bp2d
