#include "bp2d/master.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

#include "bp2d/heuristic.hpp"

namespace bp2d {

using Clock = std::chrono::steady_clock;

std::vector<std::vector<char>> incompatibility_graph(const Instance& inst) {
    const int n = inst.n();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (inst.items[a].w + inst.items[b].w > inst.W &&
                inst.items[a].h + inst.items[b].h > inst.H)
                adj[a][b] = adj[b][a] = 1;
    return adj;
}

namespace {

void clique_expand(const std::vector<std::vector<char>>& adj,
                   std::vector<int>& cand, std::vector<int>& cur,
                   std::vector<int>& best) {
    if (cand.empty()) {
        if (cur.size() > best.size()) best = cur;
        return;
    }
    // Greedy coloring bound: color classes of the candidate set.
    const int k = static_cast<int>(cand.size());
    std::vector<int> color(k, 0);
    int maxcol = 0;
    for (int i = 0; i < k; ++i) {
        std::vector<char> used(maxcol + 2, 0);
        for (int j = 0; j < i; ++j)
            if (adj[cand[i]][cand[j]]) used[color[j]] = 1;
        int c = 1;
        while (used[c]) ++c;
        color[i] = c;
        maxcol = std::max(maxcol, c);
    }
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (color[a] != color[b]) return color[a] < color[b];
        return a < b;
    });
    for (int q = k - 1; q >= 0; --q) {
        int i = idx[q];
        if (cur.size() + color[i] <= best.size()) return;
        int v = cand[i];
        cur.push_back(v);
        std::vector<int> next;
        for (int r = 0; r < q; ++r)
            if (adj[v][cand[idx[r]]]) next.push_back(cand[idx[r]]);
        clique_expand(adj, next, cur, best);
        cur.pop_back();
    }
}

}  // namespace

std::vector<int> max_clique(const std::vector<std::vector<char>>& adj) {
    const int n = static_cast<int>(adj.size());
    if (n == 0) return {};
    std::vector<int> cand(n), cur, best;
    for (int i = 0; i < n; ++i) cand[i] = i;
    // Degree-descending start order helps the coloring bound.
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
        int da = std::count(adj[a].begin(), adj[a].end(), 1);
        int db = std::count(adj[b].begin(), adj[b].end(), 1);
        if (da != db) return da > db;
        return a < b;
    });
    clique_expand(adj, cand, cur, best);
    std::sort(best.begin(), best.end());
    return best;
}

ContextSet build_contexts(const Instance& inst, const std::vector<int>& clique,
                          int num_bins) {
    const int n = inst.n();
    ContextSet cs;
    std::vector<char> in_clique(n, 0);
    for (int id : clique) in_clique[id] = 1;
    std::vector<int> head = clique, tail;
    for (int id = 0; id < n; ++id)
        if (!in_clique[id]) tail.push_back(id);
    auto by_area = [&](int a, int b) {
        if (inst.items[a].area() != inst.items[b].area())
            return inst.items[a].area() > inst.items[b].area();
        return a < b;
    };
    std::sort(head.begin(), head.end(), by_area);
    std::sort(tail.begin(), tail.end(), by_area);
    cs.order = head;
    cs.order.insert(cs.order.end(), tail.begin(), tail.end());
    cs.pos.assign(n, 0);
    for (int p = 0; p < n; ++p) cs.pos[cs.order[p]] = p;

    std::vector<std::vector<char>> adj = incompatibility_graph(inst);
    const int t = static_cast<int>(head.size());
    for (int i = 0; i < num_bins; ++i) {
        BinContext b;
        b.index = i;
        b.forced = i < t ? cs.order[i] : -1;
        b.allowed.assign(n, 0);
        for (int id = 0; id < n; ++id) {
            if (cs.pos[id] < i) continue;  // item j only in bins i <= j
            if (b.forced >= 0 && id != b.forced && adj[b.forced][id]) continue;
            b.allowed[id] = 1;
        }
        std::vector<int> members;
        for (int id = 0; id < n; ++id)
            if (b.allowed[id]) members.push_back(id);
        BinReduction red = reduce_for_subset(inst, members);
        b.Wi = red.Wi;
        b.Hi = red.Hi;
        b.w_lift.assign(n, 0);
        b.h_lift.assign(n, 0);
        for (size_t m = 0; m < members.size(); ++m) {
            b.w_lift[members[m]] = red.w_lift[m];
            b.h_lift[members[m]] = red.h_lift[m];
        }
        cs.bins.push_back(std::move(b));
    }
    return cs;
}

BinPredicates dff_inequalities(const Instance& search_inst,
                               const ContextSet& ctxs, const BoundReport& rep,
                               const Instance& bounds_inst, int alpha,
                               int beta) {
    BinPredicates out;
    const int n = search_inst.n();
    const int nbins = static_cast<int>(ctxs.bins.size());

    // Selected DFF pair specs: the identity pair first (it reproduces the
    // plain area constraint), then the alpha best by transformed-area score.
    std::vector<std::pair<DffSpec, DffSpec>> specs;
    std::set<std::tuple<int, int, int, int>> seen;
    auto add_spec = [&](DffSpec u, DffSpec v) {
        auto key = std::make_tuple(static_cast<int>(u.kind), u.k,
                                   static_cast<int>(v.kind), v.k);
        if (seen.insert(key).second) specs.push_back({u, v});
    };
    add_spec({DffKind::F0, 1}, {DffKind::F0, 1});
    for (const DffPair& p : rep.l2.ranked) {
        if (static_cast<int>(specs.size()) >= alpha + 1) break;
        add_spec(rep.l2.wfuncs[p.wf].spec(), rep.l2.hfuncs[p.hf].spec());
    }

    for (const auto& [su, sv] : specs) {
        BinPredicates::DffPred pred;
        pred.u = su;
        pred.v = sv;
        pred.cap.assign(nbins, -1);
        pred.area.assign(nbins, std::vector<int>(n, 0));
        for (int i = 0; i < nbins; ++i) {
            const BinContext& b = ctxs.bins[i];
            if (b.Wi <= 0 || b.Hi <= 0) continue;
            if (2 * su.k > b.Wi || 2 * sv.k > b.Hi) continue;
            std::vector<int> wsz, hsz, members;
            for (int id = 0; id < n; ++id)
                if (b.allowed[id]) {
                    members.push_back(id);
                    wsz.push_back(b.w_lift[id]);
                    hsz.push_back(b.h_lift[id]);
                }
            DffFunc fu = DffFunc::make(su, b.Wi, wsz);
            DffFunc fv = DffFunc::make(sv, b.Hi, hsz);
            long long cap = fu.image() * fv.image();
            if (cap <= 0) continue;
            pred.cap[i] = cap;
            for (int id : members)
                pred.area[i][id] = static_cast<int>(fu.eval(b.w_lift[id]) *
                                                    fv.eval(b.h_lift[id]));
        }
        out.dff.push_back(std::move(pred));
    }

    // Conservative-scale combinations are instance-global: validity follows
    // from the scales being feasible for the (reduced) sizes they were
    // computed on.
    int count = 0;
    for (const ScaleCombo& c : rep.bkrs.ranked) {
        if (count >= beta) break;
        BinPredicates::ScalePred sp;
        sp.k = c.k;
        sp.l = c.l;
        sp.cap = static_cast<double>(bounds_inst.W) * bounds_inst.H;
        sp.area.resize(n);
        for (int j = 0; j < n; ++j)
            sp.area[j] = rep.scales[c.k].w[j] * rep.scales[c.l].h[j];
        out.scale.push_back(std::move(sp));
        ++count;
    }
    return out;
}

namespace {

class SolveLog {
public:
    explicit SolveLog(const std::string& path) {
        if (!path.empty()) out_.open(path);
    }
    void event(const nlohmann::json& j) {
        if (out_.is_open()) out_ << j.dump() << "\n";
    }
    void flush() {
        if (out_.is_open()) out_.flush();
    }

private:
    std::ofstream out_;
};

enum class SearchEnd { Exhausted, OptimalStop, Timeout };

struct BoundPred {
    std::vector<double> area;  // by id, bounds-instance data
    double cap = 0.0;
    double amin = 0.0;
};

class Search {
public:
    Search(const Instance& inst, const MasterConfig& cfg, const ContextSet& ctx,
           const BinPredicates& preds, std::vector<BoundPred> bound_preds,
           int bins_cap, int l_red, std::optional<int> given_red,
           Clock::time_point deadline, SolveLog& log,
           std::function<std::optional<std::string>(const Solution&)> verify)
        : inst_(inst), cfg_(cfg), ctx_(ctx), preds_(preds),
          bound_preds_(std::move(bound_preds)), nbins_(bins_cap), l_red_(l_red),
          given_red_(given_red), deadline_(deadline), log_(log),
          verify_(std::move(verify)), n_(inst.n()) {
        incompat_ = incompatibility_graph(inst);
        assign_.assign(n_, -1);
        cuts_by_item_.assign(n_, {});
        content_.resize(nbins_);
        area_load_.assign(nbins_, 0);
        dff_load_.assign(preds_.dff.size(), std::vector<long long>(nbins_, 0));
        scale_load_.assign(preds_.scale.size(), std::vector<double>(nbins_, 0.0));
        bload_.assign(bound_preds_.size(), std::vector<double>(nbins_, 0.0));
        bunassigned_.assign(bound_preds_.size(), 0.0);
        for (size_t p = 0; p < bound_preds_.size(); ++p)
            for (int id = 0; id < n_; ++id)
                bunassigned_[p] += bound_preds_[p].area[id];
        // Previous identical (same size) searched item, in position order.
        const int t = clique_size();
        prev_same_.assign(n_, -1);
        for (int p = t; p < n_; ++p)
            for (int q = p - 1; q >= t; --q) {
                const Item& a = inst_.items[ctx_.order[p]];
                const Item& b = inst_.items[ctx_.order[q]];
                if (a.w == b.w && a.h == b.h) {
                    prev_same_[p] = q;
                    break;
                }
            }
    }

    int clique_size() const {
        int t = 0;
        while (t < static_cast<int>(ctx_.bins.size()) &&
               ctx_.bins[t].forced >= 0)
            ++t;
        return t;
    }

    void set_incumbent(const Solution& sol) {
        incumbent_ = sol;
        incumbent_val_ = sol.upper_bound;
        allowed_ = std::min(incumbent_val_ - 1,
                            given_red_ ? *given_red_ : INT_MAX);
    }

    void add_cut(const Cut& cut) {
        std::vector<int> key = cut.base;
        key.push_back(-1);
        for (auto [id, a] : cut.alphas) {
            key.push_back(id);
            key.push_back(a);
        }
        key.push_back(cut.scope_forced);
        if (!cut_keys_.insert(key).second) return;
        pool_.push_back(cut);
        ++stats.cuts_added;
        const int c = static_cast<int>(pool_.size()) - 1;
        coeff_.emplace_back(n_, 0);
        for (int id : cut.base) coeff_[c][id] = 1;
        for (auto [id, a] : cut.alphas) coeff_[c][id] = a;
        for (int id = 0; id < n_; ++id)
            if (coeff_[c][id] > 0) cuts_by_item_[id].push_back(c);
        applicable_.emplace_back(nbins_, 0);
        for (int i = 0; i < nbins_; ++i) {
            const BinContext& b = ctx_.bins[i];
            bool ok = cut.scope_forced < 0 || b.forced == cut.scope_forced;
            if (ok && b.forced >= 0)
                ok = !std::count(cut.removed_in_mis.begin(),
                                 cut.removed_in_mis.end(), b.forced);
            if (ok)
                for (int id : cut.base)
                    if (!b.allowed[id]) {
                        ok = false;
                        break;
                    }
            applicable_[c][i] = ok;
        }
        lhs_.emplace_back(nbins_, 0);
        for (int i = 0; i < nbins_; ++i) {
            if (!applicable_[c][i]) continue;
            int v = 0;
            for (int id : content_[i]) v += coeff_[c][id];
            lhs_[c][i] = v;
            if (v > cut.rhs) ++violated_;
        }
    }

    SearchEnd run() {
        const int t = clique_size();
        for (int i = 0; i < t && i < nbins_; ++i) place(ctx_.order[i], i);
        int r = dfs(t);
        if (r == 2) return SearchEnd::Timeout;
        if (r == 1) return SearchEnd::OptimalStop;
        return SearchEnd::Exhausted;
    }

    SolveStats stats;
    CheckMemo memo;
    Solution incumbent_;
    int incumbent_val_ = INT_MAX;
    int allowed_ = 0;
    std::vector<Cut> pool_;

private:
    // 0 = subtree exhausted, 1 = optimal incumbent found (stop), 2 = timeout.
    int dfs(int p) {
        if ((++stats.nodes & 1023) == 0 && Clock::now() > deadline_) return 2;
        if (violated_ > 0) return 0;
        if (p == n_) return separate();
        if (completion_bound() > allowed_) return 0;

        const int id = ctx_.order[p];
        int lo = 0;
        if (prev_same_[p] >= 0) lo = assign_[ctx_.order[prev_same_[p]]];
        const int hi = std::min({p, open_, nbins_ - 1});
        for (int i = lo; i <= hi; ++i) {
            if (!admissible(id, i)) continue;
            place(id, i);
            int r = dfs(p + 1);
            unplace(id, i);
            if (r != 0) return r;
        }
        return 0;
    }

    bool admissible(int id, int i) const {
        const BinContext& b = ctx_.bins[i];
        if (!b.allowed[id]) return false;
        for (int u : content_[i])
            if (incompat_[id][u]) return false;
        if (area_load_[i] + inst_.items[id].area() >
            static_cast<long long>(b.Wi) * b.Hi)
            return false;
        for (size_t q = 0; q < preds_.dff.size(); ++q) {
            const auto& pr = preds_.dff[q];
            if (pr.cap[i] >= 0 &&
                dff_load_[q][i] + pr.area[i][id] > pr.cap[i])
                return false;
        }
        for (size_t q = 0; q < preds_.scale.size(); ++q) {
            if (scale_load_[q][i] + preds_.scale[q].area[id] >
                preds_.scale[q].cap + 1e-7)
                return false;
        }
        for (size_t q = 0; q < bound_preds_.size(); ++q) {
            if (bload_[q][i] + bound_preds_[q].area[id] >
                bound_preds_[q].cap + 1e-7)
                return false;
        }
        for (int c : cuts_by_item_[id]) {
            if (applicable_[c][i] &&
                lhs_[c][i] + coeff_[c][id] > pool_[c].rhs)
                return false;
        }
        return true;
    }

    void place(int id, int i) {
        if (i == open_) ++open_;
        assign_[id] = i;
        content_[i].push_back(id);
        area_load_[i] += inst_.items[id].area();
        for (size_t q = 0; q < preds_.dff.size(); ++q)
            dff_load_[q][i] += preds_.dff[q].area[i][id];
        for (size_t q = 0; q < preds_.scale.size(); ++q)
            scale_load_[q][i] += preds_.scale[q].area[id];
        for (size_t q = 0; q < bound_preds_.size(); ++q) {
            bload_[q][i] += bound_preds_[q].area[id];
            bunassigned_[q] -= bound_preds_[q].area[id];
        }
        for (int c : cuts_by_item_[id]) {
            if (!applicable_[c][i]) continue;
            lhs_[c][i] += coeff_[c][id];
            if (lhs_[c][i] == pool_[c].rhs + 1) ++violated_;
        }
    }

    void unplace(int id, int i) {
        for (int c : cuts_by_item_[id]) {
            if (!applicable_[c][i]) continue;
            if (lhs_[c][i] == pool_[c].rhs + 1) --violated_;
            lhs_[c][i] -= coeff_[c][id];
        }
        for (size_t q = 0; q < bound_preds_.size(); ++q) {
            bload_[q][i] -= bound_preds_[q].area[id];
            bunassigned_[q] += bound_preds_[q].area[id];
        }
        for (size_t q = 0; q < preds_.scale.size(); ++q)
            scale_load_[q][i] -= preds_.scale[q].area[id];
        for (size_t q = 0; q < preds_.dff.size(); ++q)
            dff_load_[q][i] -= preds_.dff[q].area[i][id];
        area_load_[i] -= inst_.items[id].area();
        content_[i].pop_back();
        assign_[id] = -1;
        if (i == open_ - 1 && content_[i].empty()) --open_;
    }

    // Valid completion bound: open bins plus the transformed area that
    // provably cannot fit into the usable slack of the open bins. Slack of a
    // bin too small for even the smallest transformed item is wasted.
    int completion_bound() const {
        int best = open_;
        for (size_t q = 0; q < bound_preds_.size(); ++q) {
            const BoundPred& bp = bound_preds_[q];
            double slack = 0.0;
            for (int i = 0; i < open_; ++i) {
                double s = bp.cap - bload_[q][i];
                if (s >= bp.amin && s > 0.0) slack += s;
            }
            double overflow = bunassigned_[q] - slack;
            if (overflow > 1e-7) {
                int lb = open_ + static_cast<int>(
                                     ceil_guard(overflow / bp.cap));
                best = std::max(best, lb);
            }
        }
        return best;
    }

    int separate() {
        const double now_left =
            std::chrono::duration<double>(deadline_ - Clock::now()).count();
        if (now_left <= 0) return 2;

        std::vector<Placement> placements(open_);
        std::vector<int> infeasible_bins;
        bool suppressed = false;
        for (int i = 0; i < open_; ++i) {
            const std::vector<int>& ids = content_[i];
            if (ids.size() == 1) {
                placements[i] = {{ids[0], 0, 0}};
                continue;
            }
            if (ids.size() == 2) {
                placements[i] = place_pair(ids[0], ids[1]);
                continue;
            }
            if (!infeasible_bins.empty() &&
                static_cast<int>(ids.size()) >= cfg_.tilde_n) {
                suppressed = true;
                continue;
            }
            double remaining =
                std::chrono::duration<double>(deadline_ - Clock::now()).count();
            if (remaining <= 0) return 2;
            std::vector<Item> items;
            for (int id : ids) items.push_back(inst_.items[id]);
            OppVerdict v =
                checked_opp(items, inst_.W, inst_.H, remaining, &memo,
                            &placements[i], &stats.opp_calls, &stats.sec_opp);
            if (v == OppVerdict::Timeout) return 2;
            if (v == OppVerdict::Infeasible) infeasible_bins.push_back(i);
        }

        if (infeasible_bins.empty() && !suppressed) {
            Solution sol;
            sol.status = SolveStatus::Feasible;
            for (int i = 0; i < open_; ++i) {
                BinPacking bin;
                bin.items = content_[i];
                bin.coords = placements[i];
                sol.bins.push_back(std::move(bin));
            }
            sol.upper_bound = open_;
            if (auto violation = verify_(sol))
                throw std::logic_error("incumbent failed verification: " +
                                       *violation);
            set_incumbent(sol);
            ++stats.incumbent_updates;
            log_.event({{"event", "incumbent"},
                        {"value", open_},
                        {"nodes", stats.nodes}});
            if (incumbent_val_ <= l_red_) return 1;
            return 0;
        }

        for (int i : infeasible_bins) {
            if (Clock::now() > deadline_) return 2;
            const BinContext& b = ctx_.bins[i];
            CutContext cc{b.forced, &b.allowed};
            std::vector<MisSet> sets =
                find_mis(content_[i], inst_, cc, cfg_.per_check_limit,
                         cfg_.gamma, cfg_.seed * 1000003 + mis_counter_++,
                         &memo, &stats.opp_calls, &stats.sec_opp);
            for (const MisSet& ms : sets) {
                Cut cut = lift_cut(ms.items, inst_, cc);
                for (int id : content_[i])
                    if (!std::count(ms.items.begin(), ms.items.end(), id))
                        cut.removed_in_mis.push_back(id);
                add_cut(cut);
            }
            log_.event({{"event", "cuts"},
                        {"bin", i},
                        {"sets", sets.size()},
                        {"pool", pool_.size()}});
        }
        return 0;
    }

    Placement place_pair(int a, int b) const {
        const Item& ia = inst_.items[a];
        const Item& ib = inst_.items[b];
        if (ia.w + ib.w <= inst_.W) return {{a, 0, 0}, {b, ia.w, 0}};
        return {{a, 0, 0}, {b, 0, ia.h}};
    }

    const Instance& inst_;
    const MasterConfig& cfg_;
    const ContextSet& ctx_;
    const BinPredicates& preds_;
    std::vector<BoundPred> bound_preds_;
    int nbins_;
    int l_red_;
    std::optional<int> given_red_;
    Clock::time_point deadline_;
    SolveLog& log_;
    std::function<std::optional<std::string>(const Solution&)> verify_;
    int n_;

    std::vector<std::vector<char>> incompat_;
    std::vector<int> assign_;
    std::vector<std::vector<int>> content_;
    std::vector<long long> area_load_;
    std::vector<std::vector<long long>> dff_load_;
    std::vector<std::vector<double>> scale_load_;
    std::vector<std::vector<double>> bload_;
    std::vector<double> bunassigned_;
    std::vector<int> prev_same_;
    int open_ = 0;

    std::vector<std::vector<int>> coeff_;
    std::vector<std::vector<int>> lhs_;
    std::vector<std::vector<char>> applicable_;
    std::set<std::vector<int>> cut_keys_;
    std::vector<std::vector<int>> cuts_by_item_ =
        std::vector<std::vector<int>>(1024);
    int violated_ = 0;
    uint64_t mis_counter_ = 0;
};

std::vector<BoundPred> make_bound_preds(const Instance& bounds_inst,
                                        const BoundReport& rep) {
    std::vector<BoundPred> out;
    const int n = bounds_inst.n();
    std::vector<int> ws, hs;
    for (const Item& it : bounds_inst.items) {
        ws.push_back(it.w);
        hs.push_back(it.h);
    }
    auto add_dff = [&](DffSpec u, DffSpec v) {
        DffFunc fu = DffFunc::make(u, bounds_inst.W, ws);
        DffFunc fv = DffFunc::make(v, bounds_inst.H, hs);
        double cap = static_cast<double>(fu.image()) * fv.image();
        if (cap <= 0) return;
        BoundPred bp;
        bp.cap = cap;
        bp.area.resize(n);
        for (int j = 0; j < n; ++j)
            bp.area[j] = static_cast<double>(fu.eval(ws[j])) * fv.eval(hs[j]);
        bp.amin = *std::min_element(bp.area.begin(), bp.area.end());
        out.push_back(std::move(bp));
    };
    add_dff({DffKind::F0, 1}, {DffKind::F0, 1});
    int added = 0;
    for (const DffPair& p : rep.l2.ranked) {
        if (added >= 8) break;
        add_dff(rep.l2.wfuncs[p.wf].spec(), rep.l2.hfuncs[p.hf].spec());
        ++added;
    }
    int sadded = 0;
    for (const ScaleCombo& c : rep.bkrs.ranked) {
        if (sadded >= 2) break;
        BoundPred bp;
        bp.cap = static_cast<double>(bounds_inst.W) * bounds_inst.H;
        bp.area.resize(n);
        for (int j = 0; j < n; ++j)
            bp.area[j] = rep.scales[c.k].w[j] * rep.scales[c.l].h[j];
        bp.amin = *std::min_element(bp.area.begin(), bp.area.end());
        out.push_back(std::move(bp));
        ++sadded;
    }
    return out;
}

}  // namespace

PreSolveInfo presolve_report(const Instance& inst, int eta) {
    auto t0 = Clock::now();
    PreSolveInfo info;
    info.lc = continuous_bound(inst);
    FixResult fix = fix_and_remove(inst);
    info.fixed_bins = fix.fixed_bins();
    info.reduced_n = fix.reduced.n();
    info.pct_removed =
        100.0 * (inst.n() - fix.reduced.n()) / std::max(1, inst.n());
    Instance bounds_inst = apply_global_reduction(fix.reduced);
    info.reduced_dims = {bounds_inst.W, bounds_inst.H};
    if (bounds_inst.n() > 0) {
        info.lc_reduced = continuous_bound(bounds_inst) + info.fixed_bins;
        BoundReport rep = compute_bounds(bounds_inst, eta);
        info.l2ccm = rep.l2ccm + info.fixed_bins;
        info.lbkrs = rep.lbkrs + info.fixed_bins;
        info.l0 = rep.l0 + info.fixed_bins;
    } else {
        info.lc_reduced = Rational(info.fixed_bins, 1);
        info.l2ccm = info.lbkrs = info.l0 = info.fixed_bins;
    }
    Instance search_inst = fix.reduced;
    if (search_inst.n() > 0) {
        auto [Ws, Hs] = shrink_bin(search_inst);
        search_inst.W = Ws;
        search_inst.H = Hs;
        Solution heur = initial_solution(search_inst);
        info.u0 = heur.upper_bound + info.fixed_bins;
    } else {
        info.u0 = info.fixed_bins;
    }
    info.sec0 = std::chrono::duration<double>(Clock::now() - t0).count();
    return info;
}

Solution solve(const Instance& inst, const MasterConfig& cfg,
               const std::vector<Cut>* preload, std::vector<Cut>* pool_out) {
    auto t0 = Clock::now();
    auto deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(cfg.time_limit));
    SolveLog log(cfg.log_path);

    FixResult fix = fix_and_remove(inst);
    const int F = fix.fixed_bins();
    Instance red = fix.reduced;

    auto finish = [&](Solution sol) {
        sol.stats.sec_total =
            std::chrono::duration<double>(Clock::now() - t0).count();
        log.event({{"event", "done"},
                   {"status", to_string(sol.status)},
                   {"L", sol.lower_bound},
                   {"U", sol.upper_bound},
                   {"nodes", sol.stats.nodes},
                   {"opp_calls", sol.stats.opp_calls},
                   {"memo_hits", sol.stats.memo_hits},
                   {"cuts", sol.stats.cuts_added},
                   {"sec_opp", sol.stats.sec_opp}});
        log.flush();
        return sol;
    };

    if (red.n() == 0) {
        Solution empty;
        empty.status = SolveStatus::Optimal;
        Solution sol = reassemble_solution(inst, fix, empty);
        sol.status = SolveStatus::Optimal;
        sol.lower_bound = sol.upper_bound = F;
        if (auto violation = verify_solution(inst, sol))
            throw std::logic_error("invalid reassembly: " + *violation);
        return finish(sol);
    }

    Instance search_inst = red;
    {
        auto [Ws, Hs] = shrink_bin(search_inst);
        search_inst.W = Ws;
        search_inst.H = Hs;
    }
    Instance bounds_inst = apply_global_reduction(red);
    BoundReport rep = compute_bounds(bounds_inst, cfg.eta);

    Solution heur = initial_solution(search_inst);
    std::vector<std::vector<char>> adj = incompatibility_graph(search_inst);
    std::vector<int> clique = max_clique(adj);

    const int L_red =
        std::max(rep.l0, static_cast<int>(clique.size()));
    std::optional<int> given_red;
    if (cfg.given_u0) given_red = std::max(0, *cfg.given_u0 - F);

    log.event({{"event", "bounds"},
               {"l2ccm", rep.l2ccm},
               {"lbkrs", rep.lbkrs},
               {"l0", rep.l0},
               {"clique", clique.size()},
               {"u0_heur", heur.upper_bound},
               {"fixed_bins", F}});

    auto verify_red = [&](const Solution& red_sol)
        -> std::optional<std::string> {
        Solution full = reassemble_solution(inst, fix, red_sol);
        return verify_solution(inst, full);
    };
    if (auto violation = verify_red(heur))
        throw std::logic_error("invalid heuristic solution: " + *violation);

    double sec_bounds = std::chrono::duration<double>(Clock::now() - t0).count();

    // Closed at the root: the certified start already matches the bound.
    if (heur.upper_bound <= L_red &&
        (!given_red || heur.upper_bound <= *given_red)) {
        Solution sol = reassemble_solution(inst, fix, heur);
        sol.status = SolveStatus::Optimal;
        sol.lower_bound = sol.upper_bound = heur.upper_bound + F;
        sol.stats.sec_bounds = sec_bounds;
        return finish(sol);
    }

    const int bins_cap =
        std::min(heur.upper_bound - 1, given_red ? *given_red : INT_MAX);

    SearchEnd end = SearchEnd::Exhausted;
    Solution best_red = heur;
    SolveStats stats;
    std::vector<Cut> final_pool;
    int final_allowed = bins_cap;

    if (bins_cap >= static_cast<int>(clique.size()) && bins_cap >= 1) {
        ContextSet ctxs = build_contexts(search_inst, clique, bins_cap);
        BinPredicates preds = dff_inequalities(search_inst, ctxs, rep,
                                               bounds_inst, cfg.alpha, cfg.beta);
        Search search(search_inst, cfg, ctxs, preds,
                      make_bound_preds(bounds_inst, rep), bins_cap, L_red,
                      given_red, deadline, log, verify_red);
        search.set_incumbent(heur);

        if (preload)
            for (const Cut& c : *preload) search.add_cut(c);

        if (cfg.root_pair_cuts) {
            auto budget_end =
                t0 + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(cfg.root_cut_budget *
                                                       cfg.time_limit));
            std::vector<char> in_clique(search_inst.n(), 0);
            for (int id : clique) in_clique[id] = 1;
            std::vector<std::pair<long long, std::pair<int, int>>> pairs;
            for (int a = 0; a < search_inst.n(); ++a)
                for (int b = a + 1; b < search_inst.n(); ++b)
                    if (adj[a][b] && !(in_clique[a] && in_clique[b]))
                        pairs.push_back(
                            {search_inst.items[a].area() +
                                 search_inst.items[b].area(),
                             {a, b}});
            std::sort(pairs.rbegin(), pairs.rend());
            CutContext generic;
            for (const auto& pr : pairs) {
                if (Clock::now() > budget_end) break;
                Cut cut =
                    lift_cut({pr.second.first, pr.second.second}, search_inst,
                             generic);
                search.add_cut(cut);
            }
        }

        end = search.run();
        best_red = search.incumbent_;
        stats = search.stats;
        stats.memo_hits = search.memo.hits;
        final_pool = search.pool_;
        final_allowed = search.allowed_;
    }

    Solution sol = reassemble_solution(inst, fix, best_red);
    sol.stats = stats;
    sol.stats.sec_bounds = sec_bounds;
    const int U_total = best_red.upper_bound + F;
    sol.upper_bound = U_total;

    // Lower bound: the root bound, the clique size, and (when the search
    // space below `final_allowed` was exhausted) the closure proof.
    int l_proof = L_red;
    if (end != SearchEnd::Timeout) l_proof = std::max(l_proof, final_allowed + 1);
    sol.lower_bound = std::min(U_total, l_proof + F);
    if (sol.lower_bound == U_total)
        sol.status = SolveStatus::Optimal;
    else
        sol.status = end == SearchEnd::Timeout ? SolveStatus::TimedOut
                                               : SolveStatus::Feasible;
    if (cfg.given_u0 && sol.upper_bound > *cfg.given_u0)
        sol.external_bound = true;

    if (auto violation = verify_solution(inst, sol))
        throw std::logic_error("invalid final solution: " + *violation);
    if (pool_out) *pool_out = final_pool;
    return finish(sol);
}

}  // namespace bp2d
