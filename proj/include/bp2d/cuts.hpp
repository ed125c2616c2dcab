#pragma once

#include <map>
#include <vector>

#include "bp2d/instance.hpp"
#include "bp2d/opp.hpp"

namespace bp2d {

/// A (lifted) combinatorial cut: sum over the base set plus alpha-weighted
/// outside items must stay below |base|. Valid for every set packable into
/// one bin.
struct Cut {
    std::vector<int> base;                    // item ids, sorted
    std::vector<std::pair<int, int>> alphas;  // (item id, coefficient > 0)
    int rhs = 0;
    // Lifting ran with this item forced into the bin (-1: none); the cut only
    // applies to bins sharing that forced item.
    int scope_forced = -1;
    // Items dropped during the MIS reduction; bins whose forced item is among
    // them must not receive the cut.
    std::vector<int> removed_in_mis;
};

/// Long-term memory of orthogonal-packing verdicts, keyed by the size
/// multiset and the bin dimensions (timeouts are never stored).
class CheckMemo {
public:
    // key: [W, H, w1, h1, w2, h2, ...] with (w,h) pairs sorted.
    using Key = std::vector<int>;
    struct Entry {
        bool feasible = false;
        std::vector<std::pair<int, int>> coords;  // parallel to the key pairs
    };

    static Key make_key(const std::vector<Item>& items, int W, int H);

    const Entry* lookup(const Key& key) const;
    void store(const Key& key, Entry entry);

    long long hits = 0;
    long long size() const { return static_cast<long long>(map_.size()); }

private:
    std::map<Key, Entry> map_;
};

/// Memo-backed feasibility check. The placement (when feasible) is expressed
/// on the given items.
OppVerdict checked_opp(const std::vector<Item>& items, int W, int H,
                       double time_limit, CheckMemo* memo,
                       Placement* placement, long long* opp_calls,
                       double* opp_seconds);

/// Restrictions the enclosing bin imposes on cut generation.
struct CutContext {
    int forced = -1;                            // forced item id, or -1
    const std::vector<char>* allowed = nullptr; // by item id; null = all
};

struct MisSet {
    std::vector<int> items;  // sorted ids, proven infeasible
    bool clean = true;       // no timeout during the reduction pass
};

/// Reduces an infeasible set toward minimality by a deletion filter: each
/// item is tentatively removed (smallest area first) and kept out when the
/// rest stays infeasible. `gamma` extra passes use random removal orders.
/// Forced items are never dropped. Returns at most gamma+1 distinct sets.
std::vector<MisSet> find_mis(const std::vector<int>& set_ids,
                             const Instance& inst, const CutContext& ctx,
                             double per_check_limit, int gamma, uint64_t seed,
                             CheckMemo* memo, long long* opp_calls,
                             double* opp_seconds);

constexpr double kUkpInfeasible = -1e100;

/// Value of the continuous bar relaxation of the single-bin knapsack with
/// `jstar` (profit 0) forced in: selected items must be covered by enough
/// width- and height-feasible patterns. Solved by column generation with
/// knapsack pricing. Returns kUkpInfeasible when forcing is contradictory.
double ukp_value(const std::vector<int>& set_ids,
                 const std::vector<double>& profits, int jstar,
                 const Instance& inst, const std::vector<int>& forced_z);

/// Sequential lifting: walks candidates outside C by non-increasing area and
/// gives each the largest coefficient the relaxation certifies.
Cut lift_cut(const std::vector<int>& C, const Instance& inst,
             const CutContext& ctx);

}  // namespace bp2d
