#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bp2d/cuts.hpp"
#include "bp2d/dff.hpp"
#include "bp2d/instance.hpp"
#include "bp2d/preprocess.hpp"

namespace bp2d {

/// Per-bin state derived from the symmetry and clique-fixing rules: which
/// items may enter, the reduced bin dimensions and the bin-lifted item sizes.
struct BinContext {
    int index = 0;
    std::vector<char> allowed;  // by item id
    int Wi = 0, Hi = 0;
    std::vector<int> w_lift, h_lift;  // by item id, meaningful where allowed
    int forced = -1;                  // item id pinned to this bin, or -1
};

struct ContextSet {
    std::vector<int> order;  // position -> item id: clique first, then by area
    std::vector<int> pos;    // item id -> position
    std::vector<BinContext> bins;
};

struct MasterConfig {
    double time_limit = 3600.0;
    int alpha = 700;
    int beta = 700;
    int gamma = 0;
    int tilde_n = 18;
    int eta = 8;
    double per_check_limit = 2.0;
    uint64_t seed = 1;
    std::optional<int> given_u0;
    std::string log_path;
    bool root_pair_cuts = true;
    double root_cut_budget = 0.10;  // fraction of time_limit spent lifting pairs
};

/// Edges join pairs that can never share a bin (width and height sums both
/// exceed the bin).
std::vector<std::vector<char>> incompatibility_graph(const Instance& inst);

/// Exact maximum clique, branch-and-bound with a greedy coloring bound.
std::vector<int> max_clique(const std::vector<std::vector<char>>& adj);

/// Applies the i <= j triangle rule, pins each clique item to its own bin,
/// drops items incompatible with a pinned item, then runs the per-bin
/// reduction on every allowed set.
ContextSet build_contexts(const Instance& inst, const std::vector<int>& clique,
                          int num_bins);

/// Capacity filters derived from the bound machinery: the alpha best DFF
/// pairs re-instantiated per bin on the reduced dimensions and lifted sizes,
/// and the beta best conservative-scale combinations (instance-global).
struct BinPredicates {
    struct DffPred {
        DffSpec u, v;
        std::vector<long long> cap;          // by bin; <0 = inactive there
        std::vector<std::vector<int>> area;  // [bin][id]
    };
    struct ScalePred {
        int k = 0, l = 0;
        double cap = 0.0;
        std::vector<double> area;  // by id
    };
    std::vector<DffPred> dff;
    std::vector<ScalePred> scale;
};

BinPredicates dff_inequalities(const Instance& search_inst,
                               const ContextSet& ctxs, const BoundReport& rep,
                               const Instance& bounds_inst, int alpha,
                               int beta);

/// Preprocessing + bound summary (the per-instance numbers behind the bench
/// table columns).
struct PreSolveInfo {
    Rational lc{0, 1};          // continuous bound, original instance
    Rational lc_reduced{0, 1};  // after reduction, fixed bins included
    double pct_removed = 0.0;
    int l2ccm = 0;
    int lbkrs = 0;
    int l0 = 0;  // total, fixed bins included
    int u0 = 0;  // heuristic (or given) value, fixed bins included
    double sec0 = 0.0;
    int fixed_bins = 0;
    int reduced_n = 0;
    std::pair<int, int> reduced_dims{0, 0};
};

PreSolveInfo presolve_report(const Instance& inst, int eta);

/// The full decomposition: preprocess, bound, then branch-and-cut with lazy
/// orthogonal-packing separation. `preload` seeds the cut pool; `pool_out`
/// receives the final pool.
Solution solve(const Instance& inst, const MasterConfig& cfg = {},
               const std::vector<Cut>* preload = nullptr,
               std::vector<Cut>* pool_out = nullptr);

}  // namespace bp2d
