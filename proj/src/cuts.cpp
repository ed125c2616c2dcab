#include "bp2d/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "bp2d/lp.hpp"

namespace bp2d {

namespace {

// Items ordered by size then id; memo placements are stored against this
// order so they can be replayed onto any id set with the same sizes.
std::vector<const Item*> size_sorted(const std::vector<Item>& items) {
    std::vector<const Item*> sorted;
    sorted.reserve(items.size());
    for (const Item& it : items) sorted.push_back(&it);
    std::sort(sorted.begin(), sorted.end(), [](const Item* a, const Item* b) {
        if (a->w != b->w) return a->w < b->w;
        if (a->h != b->h) return a->h < b->h;
        return a->id < b->id;
    });
    return sorted;
}

}  // namespace

CheckMemo::Key CheckMemo::make_key(const std::vector<Item>& items, int W,
                                   int H) {
    std::vector<std::pair<int, int>> sizes;
    sizes.reserve(items.size());
    for (const Item& it : items) sizes.push_back({it.w, it.h});
    std::sort(sizes.begin(), sizes.end());
    Key key;
    key.reserve(2 * sizes.size() + 2);
    key.push_back(W);
    key.push_back(H);
    for (auto [w, h] : sizes) {
        key.push_back(w);
        key.push_back(h);
    }
    return key;
}

const CheckMemo::Entry* CheckMemo::lookup(const Key& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
}

void CheckMemo::store(const Key& key, Entry entry) {
    map_.emplace(std::move(key), std::move(entry));
}

OppVerdict checked_opp(const std::vector<Item>& items, int W, int H,
                       double time_limit, CheckMemo* memo,
                       Placement* placement, long long* opp_calls,
                       double* opp_seconds) {
    CheckMemo::Key key;
    if (memo) {
        key = CheckMemo::make_key(items, W, H);
        if (const CheckMemo::Entry* e = memo->lookup(key)) {
            ++memo->hits;
            if (e->feasible && placement) {
                std::vector<const Item*> sorted = size_sorted(items);
                placement->clear();
                for (size_t i = 0; i < sorted.size(); ++i)
                    placement->push_back({sorted[i]->id, e->coords[i].first,
                                          e->coords[i].second});
            }
            return e->feasible ? OppVerdict::Feasible : OppVerdict::Infeasible;
        }
    }
    OppResult res = opp_check(items, W, H, time_limit);
    if (opp_calls) ++*opp_calls;
    if (opp_seconds) *opp_seconds += res.seconds;
    if (memo && res.verdict != OppVerdict::Timeout) {
        CheckMemo::Entry e;
        e.feasible = res.verdict == OppVerdict::Feasible;
        if (e.feasible) {
            std::map<int, std::pair<int, int>> by_id;
            for (const PlacedItem& p : res.placement)
                by_id[p.id] = {p.x, p.y};
            for (const Item* it : size_sorted(items))
                e.coords.push_back(by_id[it->id]);
        }
        memo->store(std::move(key), std::move(e));
    }
    if (res.verdict == OppVerdict::Feasible && placement)
        *placement = res.placement;
    return res.verdict;
}

std::vector<MisSet> find_mis(const std::vector<int>& set_ids,
                             const Instance& inst, const CutContext& ctx,
                             double per_check_limit, int gamma, uint64_t seed,
                             CheckMemo* memo, long long* opp_calls,
                             double* opp_seconds) {
    std::vector<MisSet> out;
    std::set<std::vector<int>> seen;
    std::mt19937_64 rng(seed);

    for (int pass = 0; pass <= gamma; ++pass) {
        std::vector<int> order = set_ids;
        if (pass == 0) {
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (inst.items[a].area() != inst.items[b].area())
                    return inst.items[a].area() < inst.items[b].area();
                return a < b;
            });
        } else {
            std::shuffle(order.begin(), order.end(), rng);
        }
        std::vector<int> current = set_ids;
        bool clean = true;
        for (int c : order) {
            if (c == ctx.forced) continue;
            // A surviving pair is minimal outright: single items always fit.
            if (current.size() <= 2) break;
            std::vector<int> tentative;
            std::vector<Item> tentative_items;
            for (int id : current)
                if (id != c) {
                    tentative.push_back(id);
                    tentative_items.push_back(inst.items[id]);
                }
            OppVerdict v =
                checked_opp(tentative_items, inst.W, inst.H, per_check_limit,
                            memo, nullptr, opp_calls, opp_seconds);
            if (v == OppVerdict::Infeasible) {
                current = std::move(tentative);
            } else if (v == OppVerdict::Timeout) {
                clean = false;
            }
        }
        std::sort(current.begin(), current.end());
        if (seen.insert(current).second) out.push_back({current, clean});
    }
    return out;
}

namespace {

// Safe sentinel for "could not certify the relaxation value": lifting then
// assigns coefficient zero.
constexpr double kUkpUncertified = 1e100;

}  // namespace

double ukp_value(const std::vector<int>& set_ids,
                 const std::vector<double>& profits, int jstar,
                 const Instance& inst, const std::vector<int>& forced_z) {
    std::vector<int> ids = set_ids;
    ids.push_back(jstar);
    std::vector<double> p = profits;
    p.push_back(0.0);
    const int np = static_cast<int>(ids.size());
    const int W = inst.W, H = inst.H;

    std::vector<int> w(np), h(np);
    for (int i = 0; i < np; ++i) {
        w[i] = inst.items[ids[i]].w;
        h[i] = inst.items[ids[i]].h;
    }

    std::vector<std::vector<int>> wpat, hpat;  // W-/H-feasible patterns
    for (int i = 0; i < np; ++i) {
        wpat.push_back({i});
        hpat.push_back({i});
    }

    auto build = [&]() {
        LinearProgram lp;
        lp.maximize = true;
        for (int i = 0; i < np; ++i) lp.add_var(p[i]);
        int y0 = lp.num_vars;
        for (size_t k = 0; k < wpat.size(); ++k) lp.add_var(0.0);
        int x0 = lp.num_vars;
        for (size_t k = 0; k < hpat.size(); ++k) lp.add_var(0.0);

        for (int i = 0; i < np; ++i) {
            std::vector<std::pair<int, double>> row{{i, -double(h[i])}};
            for (size_t k = 0; k < wpat.size(); ++k)
                if (std::count(wpat[k].begin(), wpat[k].end(), i))
                    row.push_back({y0 + static_cast<int>(k), 1.0});
            lp.add_row(std::move(row), '>', 0.0);
        }
        for (int i = 0; i < np; ++i) {
            std::vector<std::pair<int, double>> row{{i, -double(w[i])}};
            for (size_t k = 0; k < hpat.size(); ++k)
                if (std::count(hpat[k].begin(), hpat[k].end(), i))
                    row.push_back({x0 + static_cast<int>(k), 1.0});
            lp.add_row(std::move(row), '>', 0.0);
        }
        std::vector<std::pair<int, double>> wb, hb;
        for (size_t k = 0; k < wpat.size(); ++k)
            wb.push_back({y0 + static_cast<int>(k), 1.0});
        lp.add_row(std::move(wb), '<', double(H));
        for (size_t k = 0; k < hpat.size(); ++k)
            hb.push_back({x0 + static_cast<int>(k), 1.0});
        lp.add_row(std::move(hb), '<', double(W));

        for (int i = 0; i < np; ++i) lp.add_row({{i, 1.0}}, '<', 1.0);
        lp.add_row({{np - 1, 1.0}}, '>', 1.0);
        for (int f : forced_z)
            for (int i = 0; i + 1 < np; ++i)
                if (ids[i] == f) lp.add_row({{i, 1.0}}, '>', 1.0);
        return lp;
    };

    for (int round = 0; round < 400; ++round) {
        LinearProgram lp = build();
        LpSolution sol = solve_lp(lp);
        if (sol.status == LpStatus::Infeasible) return kUkpInfeasible;
        if (sol.status != LpStatus::Optimal) return kUkpUncertified;

        bool improved = false;
        {
            std::vector<double> profit(np);
            for (int i = 0; i < np; ++i) profit[i] = std::max(0.0, -sol.duals[i]);
            double sigma = sol.duals[2 * np];
            KnapsackResult kr = knapsack_01(w, W, profit);
            if (kr.value > sigma + 1e-7) {
                std::vector<int> pat = kr.chosen;
                std::sort(pat.begin(), pat.end());
                if (!std::count(wpat.begin(), wpat.end(), pat)) {
                    wpat.push_back(pat);
                    improved = true;
                }
            }
        }
        {
            std::vector<double> profit(np);
            for (int i = 0; i < np; ++i)
                profit[i] = std::max(0.0, -sol.duals[np + i]);
            double tau = sol.duals[2 * np + 1];
            KnapsackResult kr = knapsack_01(h, H, profit);
            if (kr.value > tau + 1e-7) {
                std::vector<int> pat = kr.chosen;
                std::sort(pat.begin(), pat.end());
                if (!std::count(hpat.begin(), hpat.end(), pat)) {
                    hpat.push_back(pat);
                    improved = true;
                }
            }
        }
        if (!improved) return sol.value;  // priced out: certified optimum
    }
    return kUkpUncertified;
}

Cut lift_cut(const std::vector<int>& C, const Instance& inst,
             const CutContext& ctx) {
    Cut cut;
    cut.base = C;
    std::sort(cut.base.begin(), cut.base.end());
    cut.rhs = static_cast<int>(C.size()) - 1;
    cut.scope_forced = ctx.forced;

    std::vector<int> S = cut.base;
    std::vector<double> profits(S.size(), 1.0);

    std::vector<int> forced_z;
    if (ctx.forced >= 0) forced_z.push_back(ctx.forced);

    std::vector<int> candidates;
    for (const Item& it : inst.items)
        if (!std::count(cut.base.begin(), cut.base.end(), it.id))
            candidates.push_back(it.id);
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        if (inst.items[a].area() != inst.items[b].area())
            return inst.items[a].area() > inst.items[b].area();
        return a < b;
    });

    for (int jstar : candidates) {
        if (ctx.allowed && !(*ctx.allowed)[jstar]) continue;
        double c = ukp_value(S, profits, jstar, inst, forced_z);
        long long alpha;
        if (c <= kUkpInfeasible / 2) {
            // Forcing jstar is contradictory: it can never enter this bin
            // family; any coefficient up to the rhs is valid.
            alpha = cut.rhs;
        } else {
            alpha = static_cast<long long>(std::floor(cut.rhs - c + 1e-9));
            alpha = std::max<long long>(0, std::min<long long>(alpha, cut.rhs));
        }
        if (alpha > 0) {
            cut.alphas.push_back({jstar, static_cast<int>(alpha)});
            S.push_back(jstar);
            profits.push_back(static_cast<double>(alpha));
        }
    }
    std::sort(cut.alphas.begin(), cut.alphas.end());
    return cut;
}

}  // namespace bp2d
