#pragma once

#include <utility>
#include <vector>

#include "bp2d/instance.hpp"

namespace bp2d {

/// Largest subset sum of `values` not exceeding `cap` (boolean DP).
int max_reachable(const std::vector<int>& values, int cap);

/// (W*, H*): the largest reachable width/height sums. The caller rewrites
/// the bin dimensions with these.
std::pair<int, int> shrink_bin(const Instance& inst);

/// Lifted sizes (w*_j, h*_j), computed for all items simultaneously against
/// the current sizes: w*_j = W - max_reachable(widths of N\{j}, W - w_j).
std::vector<std::pair<int, int>> enlarge_items(const Instance& inst);

/// Bin-specific reduction: shrink and lift with the sums restricted to the
/// member set. `w_lift`/`h_lift` are parallel to `member_ids`.
struct BinReduction {
    int Wi = 0;
    int Hi = 0;
    std::vector<int> w_lift;
    std::vector<int> h_lift;
};
BinReduction reduce_for_subset(const Instance& inst,
                               const std::vector<int>& member_ids);

/// One removed item: re-inserted at (host.x + dx, host.y + dy) in the bin
/// that ends up hosting `host`.
struct RemovedItem {
    int id = 0;
    int host = 0;
    int dx = 0;
    int dy = 0;
};

struct ReductionRecord {
    std::vector<RemovedItem> removed;
    // id -> final (w, h) for items whose size grew.
    std::vector<std::pair<int, std::pair<int, int>>> enlarged;
    std::pair<int, int> shrunk_bin{0, 0};
    // Items enlarged to the full bin and packed alone, one bin each.
    std::vector<int> fixed_full;
};

/// Output of fix_and_remove: the reduced instance (items reindexed 0..n'-1,
/// `orig_id` maps back) plus the replay record.
struct FixResult {
    Instance reduced;
    std::vector<int> orig_id;
    ReductionRecord record;

    int fixed_bins() const { return static_cast<int>(record.fixed_full.size()); }
};

/// Packs and removes items per the wide / tall / big rules, looping until no
/// improvement, then fixes all full-size items into dedicated bins.
FixResult fix_and_remove(const Instance& inst);

/// Applies shrink_bin + enlarge_items repeatedly until stable (the joint
/// reduction is then idempotent by construction). Feeds the bound modules.
Instance apply_global_reduction(const Instance& inst,
                                ReductionRecord* record = nullptr);

/// Maps a solution of the reduced instance back to the original one: restores
/// original ids, adds one bin per fixed item and re-inserts removed items
/// next to their hosts.
Solution reassemble_solution(const Instance& original, const FixResult& fix,
                             const Solution& reduced_sol);

}  // namespace bp2d
