#include "bp2d/opp.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>

namespace bp2d {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<int> subset_sums(const std::vector<int>& sizes, int cap, int skip) {
    std::vector<char> reach(cap + 1, 0);
    reach[0] = 1;
    for (int i = 0; i < static_cast<int>(sizes.size()); ++i) {
        if (i == skip) continue;
        int v = sizes[i];
        if (v > cap) continue;
        for (int c = cap; c >= v; --c)
            if (reach[c - v]) reach[c] = 1;
    }
    std::vector<int> out;
    for (int c = 0; c <= cap; ++c)
        if (reach[c]) out.push_back(c);
    return out;
}

}  // namespace

std::vector<std::vector<int>> normal_patterns(const std::vector<int>& sizes,
                                              int cap) {
    const int n = static_cast<int>(sizes.size());
    std::vector<std::vector<int>> out(n);
    for (int j = 0; j < n; ++j)
        out[j] = subset_sums(sizes, std::max(0, cap - sizes[j]), j);
    return out;
}

std::vector<std::vector<int>> mim_positions(const std::vector<int>& sizes,
                                            int cap, int t) {
    std::vector<std::vector<int>> np = normal_patterns(sizes, cap);
    const int n = static_cast<int>(sizes.size());
    std::vector<std::vector<int>> out(n);
    for (int j = 0; j < n; ++j) {
        std::vector<int> pos;
        for (int p : np[j]) {
            if (p < t) pos.push_back(p);
            int mirrored = cap - sizes[j] - p;
            if (mirrored >= t) pos.push_back(mirrored);
        }
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        out[j] = std::move(pos);
    }
    return out;
}

int choose_mim_threshold(const std::vector<int>& sizes, int cap) {
    std::vector<std::vector<int>> np = normal_patterns(sizes, cap);
    const int n = static_cast<int>(sizes.size());
    // The per-item count  #{p < t} + #{p <= cap - w_j - t}  changes only when
    // t crosses p+1 or cap - w_j - p, so scanning those values suffices.
    std::vector<int> cands{1, cap};
    for (int j = 0; j < n; ++j)
        for (int p : np[j]) {
            if (p + 1 >= 1 && p + 1 <= cap) cands.push_back(p + 1);
            int q = cap - sizes[j] - p;
            if (q >= 1 && q <= cap) cands.push_back(q);
        }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    long long best_count = -1;
    int best_t = 1;
    for (int t : cands) {
        long long total = 0;
        for (int j = 0; j < n; ++j) {
            const std::vector<int>& p = np[j];
            long long left =
                std::lower_bound(p.begin(), p.end(), t) - p.begin();
            // mirrored >= t  <=>  p <= cap - sizes[j] - t
            long long right = std::upper_bound(p.begin(), p.end(),
                                               cap - sizes[j] - t) -
                              p.begin();
            total += left + right;  // upper bound; duplicates only shrink it
        }
        if (best_count < 0 || total < best_count) {
            best_count = total;
            best_t = t;
        }
    }
    return best_t;
}

namespace {

struct XItem {
    int orig;  // index into the caller's vector
    int w, h;
    long long area;
    int prev_same = -1;  // previous identical item in search order
};

// Branch-and-bound for the y-coordinates given fixed x-intervals. Items are
// placed in gravity order: each step commits one item to its lowest feasible
// y, branching over which item comes next.
class YSearch {
public:
    YSearch(const std::vector<XItem>& items, const std::vector<int>& x, int H,
            Clock::time_point deadline)
        : items_(items), x_(x), H_(H), deadline_(deadline),
          n_(static_cast<int>(items.size())), placed_(n_, 0), y_(n_, 0) {
        overlap_.assign(n_, std::vector<char>(n_, 0));
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                overlap_[a][b] = a != b && x_[a] < x_[b] + items_[b].w &&
                                 x_[b] < x_[a] + items_[a].w;
    }

    // 1 = feasible (y() valid), 0 = infeasible, -1 = timeout.
    int run() { return dfs(0); }

    const std::vector<int>& y() const { return y_; }
    long long nodes = 0;

private:
    int lowest_feasible(int j) const {
        // Candidate levels: 0 and the tops of placed x-overlapping items.
        std::vector<int> levels{0};
        for (int k = 0; k < n_; ++k)
            if (placed_[k] && overlap_[j][k]) levels.push_back(y_[k] + items_[k].h);
        std::sort(levels.begin(), levels.end());
        for (int lv : levels) {
            if (lv + items_[j].h > H_) return -1;
            bool free = true;
            for (int k = 0; k < n_ && free; ++k)
                if (placed_[k] && overlap_[j][k] && lv < y_[k] + items_[k].h &&
                    y_[k] < lv + items_[j].h)
                    free = false;
            if (free) return lv;
        }
        return -1;
    }

    int dfs(int depth) {
        if (depth == n_) return 1;
        if ((++nodes & 255) == 0 && Clock::now() > deadline_) return -1;

        std::vector<std::pair<int, int>> cand;  // (lowest y, item)
        for (int j = 0; j < n_; ++j) {
            if (placed_[j]) continue;
            int lv = lowest_feasible(j);
            if (lv < 0) return 0;  // j can only get more blocked
            // An item with no unplaced x-overlap can be committed outright.
            bool interacts = false;
            for (int k = 0; k < n_ && !interacts; ++k)
                if (!placed_[k] && k != j && overlap_[j][k]) interacts = true;
            if (!interacts) {
                placed_[j] = 1;
                y_[j] = lv;
                int r = dfs(depth + 1);
                placed_[j] = 0;
                return r;
            }
            cand.push_back({lv, j});
        }
        std::sort(cand.begin(), cand.end());
        for (size_t c = 0; c < cand.size(); ++c) {
            auto [lv, j] = cand[c];
            // Identical twins at the same level lead to the same subtree.
            bool dup = false;
            for (size_t d = 0; d < c && !dup; ++d) {
                auto [lv2, k] = cand[d];
                dup = lv2 == lv && items_[k].w == items_[j].w &&
                      items_[k].h == items_[j].h && x_[k] == x_[j];
            }
            if (dup) continue;
            placed_[j] = 1;
            y_[j] = lv;
            int r = dfs(depth + 1);
            placed_[j] = 0;
            if (r != 0) return r;
        }
        return 0;
    }

    const std::vector<XItem>& items_;
    const std::vector<int>& x_;
    int H_;
    Clock::time_point deadline_;
    int n_;
    std::vector<char> placed_;
    std::vector<int> y_;
    std::vector<std::vector<char>> overlap_;
};

class XSearch {
public:
    XSearch(std::vector<XItem> items, std::vector<std::vector<int>> pos, int W,
            int H, Clock::time_point deadline)
        : items_(std::move(items)), pos_(std::move(pos)), W_(W), H_(H),
          deadline_(deadline), n_(static_cast<int>(items_.size())),
          col_(W, 0), x_(n_, 0) {}

    int run() { return dfs(0); }

    long long nodes = 0;
    std::vector<int> sol_x, sol_y;

private:
    int dfs(int k) {
        if ((++nodes & 511) == 0 && Clock::now() > deadline_) return -1;
        if (k == n_) {
            YSearch ys(items_, x_, H_, deadline_);
            int r = ys.run();
            nodes += ys.nodes;
            if (r == 1) {
                sol_x = x_;
                sol_y = ys.y();
            }
            return r;
        }
        const XItem& it = items_[k];
        int min_x = it.prev_same >= 0 ? x_[it.prev_same] : 0;
        for (int x : pos_[k]) {
            if (x < min_x) continue;
            bool fits = true;
            for (int c = x; c < x + it.w && fits; ++c)
                if (col_[c] + it.h > H_) fits = false;
            if (!fits) continue;
            for (int c = x; c < x + it.w; ++c) col_[c] += it.h;
            x_[k] = x;
            int r = dfs(k + 1);
            for (int c = x; c < x + it.w; ++c) col_[c] -= it.h;
            if (r != 0) return r;
        }
        return 0;
    }

    std::vector<XItem> items_;
    std::vector<std::vector<int>> pos_;
    int W_, H_;
    Clock::time_point deadline_;
    int n_;
    std::vector<int> col_;
    std::vector<int> x_;
};

std::vector<XItem> make_xitems(const std::vector<Item>& items) {
    std::vector<XItem> xs;
    xs.reserve(items.size());
    for (size_t i = 0; i < items.size(); ++i)
        xs.push_back({static_cast<int>(i), items[i].w, items[i].h,
                      items[i].area(), -1});
    std::sort(xs.begin(), xs.end(), [](const XItem& a, const XItem& b) {
        if (a.area != b.area) return a.area > b.area;
        if (a.w != b.w) return a.w > b.w;
        return a.orig < b.orig;
    });
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t p = i; p-- > 0;)
            if (xs[p].w == xs[i].w && xs[p].h == xs[i].h) {
                xs[i].prev_same = static_cast<int>(p);
                break;
            }
    return xs;
}

bool trivially_infeasible(const std::vector<Item>& items, int W, int H) {
    long long area = 0;
    for (const Item& it : items) area += it.area();
    if (area > static_cast<long long>(W) * H) return true;
    for (size_t a = 0; a < items.size(); ++a)
        for (size_t b = a + 1; b < items.size(); ++b)
            if (items[a].w + items[b].w > W && items[a].h + items[b].h > H)
                return true;
    return false;
}

}  // namespace

OppResult opp_check(const std::vector<Item>& items, int W, int H,
                    double time_limit_sec) {
    auto start = Clock::now();
    OppResult res;
    if (items.empty()) {
        res.verdict = OppVerdict::Feasible;
        return res;
    }
    if (trivially_infeasible(items, W, H)) {
        res.verdict = OppVerdict::Infeasible;
        return res;
    }
    auto deadline =
        start + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(time_limit_sec));

    std::vector<XItem> xs = make_xitems(items);
    std::vector<int> widths;
    for (const XItem& it : xs) widths.push_back(it.w);
    int t = choose_mim_threshold(widths, W);
    std::vector<std::vector<int>> pos = mim_positions(widths, W, t);

    XSearch search(xs, std::move(pos), W, H, deadline);
    int r = search.run();
    res.nodes = search.nodes;
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r == -1) {
        res.verdict = OppVerdict::Timeout;
    } else if (r == 1) {
        res.verdict = OppVerdict::Feasible;
        for (size_t i = 0; i < xs.size(); ++i)
            res.placement.push_back(
                {items[xs[i].orig].id, search.sol_x[i], search.sol_y[i]});
        std::sort(res.placement.begin(), res.placement.end(),
                  [](const PlacedItem& a, const PlacedItem& b) {
                      return a.id < b.id;
                  });
    } else {
        res.verdict = OppVerdict::Infeasible;
    }
    return res;
}

namespace {

class BruteSearch {
public:
    BruteSearch(const std::vector<XItem>& items,
                const std::vector<std::vector<int>>& px,
                const std::vector<std::vector<int>>& py, int W, int H)
        : items_(items), px_(px), py_(py), W_(W), H_(H),
          n_(static_cast<int>(items.size())), x_(n_), y_(n_) {}

    bool run() { return dfs(0); }

    long long nodes = 0;
    std::vector<int> x_, y_;

private:
    bool dfs(int k) {
        if (k == n_) return true;
        ++nodes;
        const XItem& it = items_[k];
        for (int x : px_[k]) {
            for (int y : py_[k]) {
                if (it.prev_same >= 0) {
                    // Identical items in lexicographic (x, y) order.
                    int p = it.prev_same;
                    if (x < x_[p] || (x == x_[p] && y < y_[p])) continue;
                }
                bool ok = true;
                for (int p = 0; p < k && ok; ++p)
                    ok = !(x < x_[p] + items_[p].w && x_[p] < x + it.w &&
                           y < y_[p] + items_[p].h && y_[p] < y + it.h);
                if (!ok) continue;
                x_[k] = x;
                y_[k] = y;
                if (dfs(k + 1)) return true;
            }
        }
        return false;
    }

    const std::vector<XItem>& items_;
    const std::vector<std::vector<int>>& px_;
    const std::vector<std::vector<int>>& py_;
    int W_, H_;
    int n_;
};

}  // namespace

OppResult opp_brute_force(const std::vector<Item>& items, int W, int H) {
    auto start = Clock::now();
    OppResult res;
    if (items.empty()) {
        res.verdict = OppVerdict::Feasible;
        return res;
    }
    long long area = 0;
    for (const Item& it : items) area += it.area();
    if (area > static_cast<long long>(W) * H) {
        res.verdict = OppVerdict::Infeasible;
        return res;
    }
    std::vector<XItem> xs = make_xitems(items);
    std::vector<int> ws, hs;
    for (const XItem& it : xs) {
        ws.push_back(it.w);
        hs.push_back(it.h);
    }
    BruteSearch search(xs, normal_patterns(ws, W), normal_patterns(hs, H), W, H);
    bool ok = search.run();
    res.nodes = search.nodes;
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (ok) {
        res.verdict = OppVerdict::Feasible;
        for (size_t i = 0; i < xs.size(); ++i)
            res.placement.push_back(
                {items[xs[i].orig].id, search.x_[i], search.y_[i]});
        std::sort(res.placement.begin(), res.placement.end(),
                  [](const PlacedItem& a, const PlacedItem& b) {
                      return a.id < b.id;
                  });
    } else {
        res.verdict = OppVerdict::Infeasible;
    }
    return res;
}

}  // namespace bp2d
