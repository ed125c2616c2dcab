#include "bp2d/dff.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "bp2d/lp.hpp"

namespace bp2d {

long long ceil_guard(double q) {
    return static_cast<long long>(std::ceil(q - 1e-9));
}

std::string to_string(const DffSpec& s) {
    switch (s.kind) {
        case DffKind::F0: return "f0(k=" + std::to_string(s.k) + ")";
        case DffKind::F1: return "f1(k=" + std::to_string(s.k) + ")";
        case DffKind::F2: return "f2(k=" + std::to_string(s.k) + ")";
    }
    return "?";
}

long long dff_f0(int k, int C, int x) {
    if (x > C - k) return C;
    if (x >= k) return x;
    return 0;
}

long long dff_f1(int k, int C, const std::vector<int>& sizes, int x) {
    return DffFunc::make({DffKind::F1, k}, C, sizes).eval(x);
}

long long dff_f2(int k, int C, int x) {
    if (2 * x > C) return 2 * (C / k - (C - x) / k);
    if (2 * x == C) return C / k;
    return 2 * (x / k);
}

DffFunc DffFunc::make(DffSpec spec, int C, const std::vector<int>& sizes) {
    DffFunc f;
    f.spec_ = spec;
    f.C_ = C;
    if (spec.kind == DffKind::F1) {
        for (int s : sizes)
            if (s >= spec.k && 2 * s <= C) f.ckp_sorted_.push_back(s);
        std::sort(f.ckp_sorted_.begin(), f.ckp_sorted_.end());
    }
    return f;
}

long long DffFunc::ckp(int cap) const {
    // Cardinality knapsack: smallest-first prefix is exact.
    long long cnt = 0, sum = 0;
    for (int s : ckp_sorted_) {
        if (sum + s > cap) break;
        sum += s;
        ++cnt;
    }
    return cnt;
}

long long DffFunc::eval(int x) const {
    const int k = spec_.k, C = C_;
    switch (spec_.kind) {
        case DffKind::F0:
            return dff_f0(k, C, x);
        case DffKind::F1:
            if (2 * x > C) return ckp(C) - ckp(C - x);
            if (x >= k) return 1;
            return 0;
        case DffKind::F2:
            return dff_f2(k, C, x);
    }
    return 0;
}

namespace {

// Distinct materialized functions for one axis, deduplicated on their value
// vector over the item sizes plus the capacity image.
std::vector<DffFunc> axis_functions(const std::vector<int>& sizes, int C) {
    std::set<int> k_small;  // parameter values that matter for f0/f1
    k_small.insert(1);
    for (int s : sizes) {
        if (s >= 1 && 2 * s <= C) k_small.insert(s);
        int t = C - s + 1;
        if (t >= 1 && 2 * t <= C) k_small.insert(t);
    }
    std::vector<DffFunc> out;
    std::set<std::vector<long long>> seen;
    auto push = [&](DffSpec spec) {
        DffFunc f = DffFunc::make(spec, C, sizes);
        std::vector<long long> key;
        key.reserve(sizes.size() + 1);
        for (int s : sizes) key.push_back(f.eval(s));
        key.push_back(f.image());
        if (f.image() <= 0) return;
        if (seen.insert(std::move(key)).second) out.push_back(std::move(f));
    };
    for (int k : k_small) {
        push({DffKind::F0, k});
        push({DffKind::F1, k});
    }
    for (int k = 1; 2 * k <= C; ++k) push({DffKind::F2, k});
    if (out.empty()) push({DffKind::F0, 1});
    return out;
}

}  // namespace

L2Result l2_ccm(const Instance& inst) {
    std::vector<int> ws, hs;
    for (const Item& it : inst.items) {
        ws.push_back(it.w);
        hs.push_back(it.h);
    }
    L2Result res;
    res.wfuncs = axis_functions(ws, inst.W);
    res.hfuncs = axis_functions(hs, inst.H);

    const int n = inst.n();
    std::vector<std::vector<long long>> wv(res.wfuncs.size()),
        hv(res.hfuncs.size());
    for (size_t f = 0; f < res.wfuncs.size(); ++f) {
        wv[f].resize(n);
        for (int j = 0; j < n; ++j) wv[f][j] = res.wfuncs[f].eval(ws[j]);
    }
    for (size_t f = 0; f < res.hfuncs.size(); ++f) {
        hv[f].resize(n);
        for (int j = 0; j < n; ++j) hv[f][j] = res.hfuncs[f].eval(hs[j]);
    }

    res.bound = 0;
    for (size_t a = 0; a < res.wfuncs.size(); ++a) {
        long long wcap = res.wfuncs[a].image();
        for (size_t b = 0; b < res.hfuncs.size(); ++b) {
            long long hcap = res.hfuncs[b].image();
            long long num = 0;
            for (int j = 0; j < n; ++j) num += wv[a][j] * hv[b][j];
            double score =
                static_cast<double>(num) / (static_cast<double>(wcap) * hcap);
            res.ranked.push_back({static_cast<int>(a), static_cast<int>(b), score});
            res.bound = std::max(res.bound, static_cast<int>(ceil_guard(score)));
        }
    }
    std::sort(res.ranked.begin(), res.ranked.end(),
              [](const DffPair& x, const DffPair& y) {
                  if (x.score != y.score) return x.score > y.score;
                  if (x.wf != y.wf) return x.wf < y.wf;
                  return x.hf < y.hf;
              });
    return res;
}

namespace {

// One conservative-scale LP: maximize obj . s  subject to every size-feasible
// subset keeping its scaled sum within the capacity. Rows are generated by a
// knapsack separation oracle. Returns the previous iterate on LP failure.
std::vector<double> scale_iterate(const std::vector<int>& sizes, int cap,
                                  const std::vector<double>& obj,
                                  const std::vector<double>& previous) {
    const int n = static_cast<int>(sizes.size());
    LinearProgram lp;
    lp.maximize = true;
    for (int j = 0; j < n; ++j) lp.add_var(obj[j]);
    for (int j = 0; j < n; ++j) lp.add_row({{j, 1.0}}, '<', cap);

    LpSolution sol;
    std::vector<int> basis;
    for (int round = 0; round < 400; ++round) {
        sol = solve_lp(lp, basis.empty() ? nullptr : &basis);
        if (sol.status != LpStatus::Optimal) return previous;
        basis = sol.basis;
        KnapsackResult sep = knapsack_01(sizes, cap, sol.x);
        if (sep.value <= cap + 1e-7) break;
        std::vector<std::pair<int, double>> row;
        for (int j : sep.chosen) row.push_back({j, 1.0});
        lp.add_row(std::move(row), '<', cap);
    }
    if (sol.status != LpStatus::Optimal) return previous;

    bool stalled = true;
    for (int j = 0; j < n && stalled; ++j)
        if (std::fabs(sol.x[j] - previous[j]) > 1e-9) stalled = false;
    if (!stalled) return sol.x;

    // Anti-stalling: hold the primary objective and re-maximize the plain
    // sum of scaled sizes, still subject to separation.
    double primary = sol.value;
    std::vector<std::pair<int, double>> keep;
    for (int j = 0; j < n; ++j)
        if (obj[j] != 0.0) keep.push_back({j, obj[j]});
    lp.add_row(std::move(keep), '>', primary - 1e-7);
    for (int j = 0; j < n; ++j) lp.objective[j] = 1.0;
    for (int round = 0; round < 400; ++round) {
        LpSolution s2 = solve_lp(lp);
        if (s2.status != LpStatus::Optimal) return sol.x;
        KnapsackResult sep = knapsack_01(sizes, cap, s2.x);
        if (sep.value <= cap + 1e-7) return s2.x;
        std::vector<std::pair<int, double>> row;
        for (int j : sep.chosen) row.push_back({j, 1.0});
        lp.add_row(std::move(row), '<', cap);
    }
    return sol.x;
}

}  // namespace

std::vector<ScalePair> conservative_scales(const Instance& inst, int eta) {
    const int n = inst.n();
    std::vector<int> ws, hs;
    std::vector<double> w0, h0;
    for (const Item& it : inst.items) {
        ws.push_back(it.w);
        hs.push_back(it.h);
        w0.push_back(it.w);
        h0.push_back(it.h);
    }
    std::vector<ScalePair> out;
    out.push_back({w0, h0, 0});
    for (int k = 1; k <= eta; ++k) {
        const ScalePair& prev = out.back();
        ScalePair cur;
        cur.k = k;
        cur.w = scale_iterate(ws, inst.W, prev.h, prev.w);
        cur.h = scale_iterate(hs, inst.H, prev.w, prev.h);
        out.push_back(std::move(cur));
    }
    return out;
}

BkrsResult l_bkrs(const Instance& inst, const std::vector<ScalePair>& scales) {
    BkrsResult res;
    const double cap =
        static_cast<double>(inst.W) * static_cast<double>(inst.H);
    for (size_t k = 0; k < scales.size(); ++k) {
        for (size_t l = 0; l < scales.size(); ++l) {
            double num = 0.0;
            for (int j = 0; j < inst.n(); ++j)
                num += scales[k].w[j] * scales[l].h[j];
            double score = num / cap;
            res.ranked.push_back(
                {static_cast<int>(k), static_cast<int>(l), score});
            res.bound = std::max(res.bound, static_cast<int>(ceil_guard(score)));
        }
    }
    std::sort(res.ranked.begin(), res.ranked.end(),
              [](const ScaleCombo& a, const ScaleCombo& b) {
                  if (a.score != b.score) return a.score > b.score;
                  if (a.k != b.k) return a.k < b.k;
                  return a.l < b.l;
              });
    return res;
}

BoundReport compute_bounds(const Instance& inst, int eta) {
    auto start = std::chrono::steady_clock::now();
    BoundReport rep;
    if (inst.n() == 0) return rep;
    rep.lc = continuous_bound(inst);
    rep.l2 = l2_ccm(inst);
    rep.l2ccm = rep.l2.bound;
    rep.scales = conservative_scales(inst, eta);
    rep.bkrs = l_bkrs(inst, rep.scales);
    rep.lbkrs = rep.bkrs.bound;
    rep.l0 = std::max(rep.l2ccm, rep.lbkrs);
    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return rep;
}

}  // namespace bp2d
