#include "bp2d/preprocess.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "bp2d/heuristic.hpp"

namespace bp2d {

namespace {

// Reachable subset sums as a bitset over [0, cap].
std::vector<uint64_t> reach_bits(const std::vector<int>& values, int cap,
                                 int skip = -1) {
    int words = cap / 64 + 1;
    std::vector<uint64_t> bits(words, 0);
    bits[0] = 1;
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        if (i == skip) continue;
        int v = values[i];
        if (v > cap) continue;
        int word_shift = v / 64, bit_shift = v % 64;
        for (int w = words - 1; w >= word_shift; --w) {
            uint64_t lo = bits[w - word_shift] << bit_shift;
            uint64_t hi = bit_shift && w - word_shift - 1 >= 0
                              ? bits[w - word_shift - 1] >> (64 - bit_shift)
                              : 0;
            bits[w] |= lo | hi;
        }
    }
    // Mask out anything beyond cap.
    int top = cap % 64;
    if (top != 63) bits[words - 1] &= (uint64_t(2) << top) - 1;
    return bits;
}

int highest_bit(const std::vector<uint64_t>& bits) {
    for (int w = static_cast<int>(bits.size()) - 1; w >= 0; --w)
        if (bits[w]) return w * 64 + 63 - std::countl_zero(bits[w]);
    return 0;
}

}  // namespace

int max_reachable(const std::vector<int>& values, int cap) {
    if (cap <= 0) return 0;
    return highest_bit(reach_bits(values, cap));
}

std::pair<int, int> shrink_bin(const Instance& inst) {
    std::vector<int> ws, hs;
    ws.reserve(inst.n());
    hs.reserve(inst.n());
    for (const Item& it : inst.items) {
        ws.push_back(it.w);
        hs.push_back(it.h);
    }
    return {max_reachable(ws, inst.W), max_reachable(hs, inst.H)};
}

std::vector<std::pair<int, int>> enlarge_items(const Instance& inst) {
    std::vector<int> ws, hs;
    for (const Item& it : inst.items) {
        ws.push_back(it.w);
        hs.push_back(it.h);
    }
    std::vector<std::pair<int, int>> out(inst.n());
    for (int j = 0; j < inst.n(); ++j) {
        int w_cap = inst.W - ws[j];
        int h_cap = inst.H - hs[j];
        int w_best = highest_bit(reach_bits(ws, std::max(0, w_cap), j));
        int h_best = highest_bit(reach_bits(hs, std::max(0, h_cap), j));
        out[j] = {inst.W - w_best, inst.H - h_best};
    }
    return out;
}

BinReduction reduce_for_subset(const Instance& inst,
                               const std::vector<int>& member_ids) {
    std::vector<int> ws, hs;
    for (int id : member_ids) {
        ws.push_back(inst.items[id].w);
        hs.push_back(inst.items[id].h);
    }
    BinReduction red;
    red.Wi = max_reachable(ws, inst.W);
    red.Hi = max_reachable(hs, inst.H);
    int k = static_cast<int>(member_ids.size());
    red.w_lift.resize(k);
    red.h_lift.resize(k);
    for (int j = 0; j < k; ++j) {
        int w_cap = red.Wi - ws[j];
        int h_cap = red.Hi - hs[j];
        red.w_lift[j] = red.Wi - highest_bit(reach_bits(ws, std::max(0, w_cap), j));
        red.h_lift[j] = red.Hi - highest_bit(reach_bits(hs, std::max(0, h_cap), j));
    }
    return red;
}

Instance apply_global_reduction(const Instance& inst, ReductionRecord* record) {
    Instance cur = inst;
    for (int round = 0; round < 64; ++round) {
        auto [Ws, Hs] = shrink_bin(cur);
        bool changed = Ws != cur.W || Hs != cur.H;
        cur.W = Ws;
        cur.H = Hs;
        auto lifted = enlarge_items(cur);
        for (int j = 0; j < cur.n(); ++j) {
            if (lifted[j].first != cur.items[j].w ||
                lifted[j].second != cur.items[j].h)
                changed = true;
            cur.items[j].w = lifted[j].first;
            cur.items[j].h = lifted[j].second;
        }
        if (!changed) break;
    }
    if (record) {
        record->shrunk_bin = {cur.W, cur.H};
        for (int j = 0; j < cur.n(); ++j)
            if (cur.items[j].w != inst.items[j].w ||
                cur.items[j].h != inst.items[j].h)
                record->enlarged.push_back(
                    {cur.items[j].id, {cur.items[j].w, cur.items[j].h}});
    }
    return cur;
}

namespace {

// Working state of fix_and_remove: sizes mutate, removals accumulate.
struct FixState {
    const Instance* orig;
    std::vector<int> w, h;       // current sizes by original id
    std::vector<char> removed;   // by original id
    ReductionRecord record;

    int W() const { return orig->W; }
    int H() const { return orig->H; }

    std::vector<int> alive() const {
        std::vector<int> out;
        for (int j = 0; j < orig->n(); ++j)
            if (!removed[j]) out.push_back(j);
        return out;
    }
};

// Packs `pool` into residual bins (one per host), smallest width first.
// On success, records removals with offsets relative to the host rectangle.
// `mode`: 0 = beside (wide), 1 = above (tall), 2 = full bin with the host
// pre-placed at (0,0) (big).
bool try_pack_companions(FixState& st, const std::vector<int>& hosts,
                         std::vector<int> pool, int mode) {
    struct ResidualBin {
        int host;
        int bw, bh;
        int off_x, off_y;
    };
    std::vector<ResidualBin> bins;
    for (int c : hosts) {
        if (mode == 0)
            bins.push_back({c, st.W() - st.w[c], st.h[c], st.w[c], 0});
        else if (mode == 1)
            bins.push_back({c, st.w[c], st.H() - st.h[c], 0, st.h[c]});
        else
            bins.push_back({c, st.W(), st.H(), 0, 0});
    }
    std::sort(bins.begin(), bins.end(), [](const ResidualBin& a, const ResidualBin& b) {
        if (a.bw != b.bw) return a.bw < b.bw;
        return a.host < b.host;
    });
    // Offer larger companions first inside each bin.
    std::sort(pool.begin(), pool.end(), [&](int a, int b) {
        long long aa = static_cast<long long>(st.w[a]) * st.h[a];
        long long ab = static_cast<long long>(st.w[b]) * st.h[b];
        if (aa != ab) return aa > ab;
        return a < b;
    });

    std::vector<RemovedItem> placed;
    std::vector<int> remaining = pool;
    for (const ResidualBin& rb : bins) {
        if (remaining.empty()) break;
        std::vector<Item> cand;
        for (int id : remaining)
            cand.push_back({id, st.w[id], st.h[id]});
        Item pre{rb.host, st.w[rb.host], st.h[rb.host]};
        FillResult fill =
            mode == 2 ? bin_fill(cand, rb.bw, rb.bh, &pre)
                      : bin_fill(cand, rb.bw, rb.bh);
        std::vector<char> taken(remaining.size(), 0);
        for (int idx : fill.packed) taken[idx] = 1;
        for (const PlacedItem& p : fill.coords) {
            if (p.id == rb.host && mode == 2) continue;
            placed.push_back({p.id, rb.host, rb.off_x + p.x, rb.off_y + p.y});
        }
        std::vector<int> rest;
        for (size_t i = 0; i < remaining.size(); ++i)
            if (!taken[i]) rest.push_back(remaining[i]);
        remaining = std::move(rest);
    }
    if (!remaining.empty()) return false;
    for (const RemovedItem& r : placed) {
        st.removed[r.id] = 1;
        st.record.removed.push_back(r);
    }
    return true;
}

// One wide-case attempt for a candidate host set C. Returns true when the
// companions all fit (they are removed and the hosts enlarged).
bool attempt(FixState& st, const std::vector<int>& C, int mode) {
    std::vector<int> pool;
    if (mode == 0) {
        int min_w = st.W();
        for (int c : C) min_w = std::min(min_w, st.w[c]);
        int w_star = st.W() - min_w;
        for (int j : st.alive())
            if (!std::count(C.begin(), C.end(), j) && st.w[j] <= w_star)
                pool.push_back(j);
    } else if (mode == 1) {
        int min_h = st.H();
        for (int c : C) min_h = std::min(min_h, st.h[c]);
        int h_star = st.H() - min_h;
        for (int j : st.alive())
            if (!std::count(C.begin(), C.end(), j) && st.h[j] <= h_star)
                pool.push_back(j);
    } else {
        for (int j : st.alive()) {
            if (std::count(C.begin(), C.end(), j)) continue;
            for (int c : C)
                if (st.w[j] + st.w[c] <= st.W() || st.h[j] + st.h[c] <= st.H()) {
                    pool.push_back(j);
                    break;
                }
        }
    }
    bool grows = false;
    for (int c : C) {
        if (mode != 1 && st.w[c] < st.W()) grows = true;
        if (mode != 0 && st.h[c] < st.H()) grows = true;
    }
    if (!grows && pool.empty()) return false;  // nothing to gain
    if (!try_pack_companions(st, C, pool, mode)) return false;
    for (int c : C) {
        if (mode != 1) st.w[c] = st.W();
        if (mode != 0) st.h[c] = st.H();
    }
    return true;
}

// Candidates for one case, sorted per the scan order of that case.
std::vector<int> case_candidates(const FixState& st, int mode) {
    std::vector<int> out;
    for (int j : st.alive()) {
        bool wide = 2 * st.w[j] > st.W();
        bool tall = 2 * st.h[j] > st.H();
        if (mode == 0 ? wide : mode == 1 ? tall : (wide && tall))
            out.push_back(j);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        if (mode == 0) {
            if (st.w[a] != st.w[b]) return st.w[a] > st.w[b];
            if (st.h[a] != st.h[b]) return st.h[a] > st.h[b];
        } else if (mode == 1) {
            if (st.h[a] != st.h[b]) return st.h[a] > st.h[b];
            if (st.w[a] != st.w[b]) return st.w[a] > st.w[b];
        } else {
            long long aa = static_cast<long long>(st.w[a]) * st.h[a];
            long long ab = static_cast<long long>(st.w[b]) * st.h[b];
            if (aa != ab) return aa > ab;
        }
        return a < b;
    });
    return out;
}

bool run_case(FixState& st, int mode) {
    bool improved = false;
    // Loop 1: singleton host sets.
    for (int c : case_candidates(st, mode)) {
        if (st.removed[c]) continue;
        if (attempt(st, {c}, mode)) improved = true;
    }
    // Loop 2: host sets grown from the two largest, restarting after each
    // success; processed hosts are set aside.
    std::vector<char> done(st.orig->n(), 0);
    for (;;) {
        std::vector<int> cands;
        for (int c : case_candidates(st, mode))
            if (!done[c]) cands.push_back(c);
        if (cands.size() < 2) break;
        size_t take = 2;
        bool success = false;
        while (take <= cands.size()) {
            std::vector<int> C(cands.begin(), cands.begin() + take);
            if (attempt(st, C, mode)) {
                for (int c : C) done[c] = 1;
                improved = true;
                success = true;
                break;
            }
            ++take;
        }
        if (!success) break;
    }
    return improved;
}

}  // namespace

FixResult fix_and_remove(const Instance& inst) {
    FixState st;
    st.orig = &inst;
    st.removed.assign(inst.n(), 0);
    for (const Item& it : inst.items) {
        st.w.push_back(it.w);
        st.h.push_back(it.h);
    }

    for (bool improved = true; improved;) {
        improved = false;
        if (run_case(st, 0)) improved = true;
        if (run_case(st, 1)) improved = true;
        if (run_case(st, 2)) improved = true;
    }

    FixResult out;
    for (int j = 0; j < inst.n(); ++j) {
        if (st.removed[j]) continue;
        if (st.w[j] == inst.W && st.h[j] == inst.H) {
            st.record.fixed_full.push_back(j);
            continue;
        }
        int new_id = out.reduced.n();
        out.reduced.items.push_back({new_id, st.w[j], st.h[j]});
        out.orig_id.push_back(j);
    }
    out.reduced.W = inst.W;
    out.reduced.H = inst.H;
    out.reduced.m = std::max(1, out.reduced.n());
    for (int j = 0; j < inst.n(); ++j)
        if (!st.removed[j] &&
            (st.w[j] != inst.items[j].w || st.h[j] != inst.items[j].h))
            st.record.enlarged.push_back({j, {st.w[j], st.h[j]}});
    out.record = std::move(st.record);
    return out;
}

Solution reassemble_solution(const Instance& original, const FixResult& fix,
                             const Solution& reduced_sol) {
    Solution out;
    out.status = reduced_sol.status;
    out.stats = reduced_sol.stats;
    for (const BinPacking& bin : reduced_sol.bins) {
        BinPacking mapped;
        for (int id : bin.items) mapped.items.push_back(fix.orig_id[id]);
        for (const PlacedItem& p : bin.coords)
            mapped.coords.push_back({fix.orig_id[p.id], p.x, p.y});
        out.bins.push_back(std::move(mapped));
    }
    for (int id : fix.record.fixed_full) {
        BinPacking bin;
        bin.items.push_back(id);
        bin.coords.push_back({id, 0, 0});
        out.bins.push_back(std::move(bin));
    }
    // Hosts never get removed themselves, so a single pass suffices.
    std::map<int, std::pair<size_t, PlacedItem>> host_pos;
    for (size_t b = 0; b < out.bins.size(); ++b)
        for (const PlacedItem& p : out.bins[b].coords)
            host_pos[p.id] = {b, p};
    for (const RemovedItem& r : fix.record.removed) {
        auto it = host_pos.find(r.host);
        if (it == host_pos.end()) continue;  // cannot happen for valid records
        size_t b = it->second.first;
        const PlacedItem& hp = it->second.second;
        PlacedItem placed{r.id, hp.x + r.dx, hp.y + r.dy};
        out.bins[b].items.push_back(r.id);
        out.bins[b].coords.push_back(placed);
        host_pos[r.id] = {b, placed};
    }
    out.upper_bound = static_cast<int>(out.bins.size());
    out.lower_bound = reduced_sol.lower_bound + fix.fixed_bins();
    (void)original;
    return out;
}

}  // namespace bp2d
