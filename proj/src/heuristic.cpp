#include "bp2d/heuristic.hpp"

#include <algorithm>
#include <limits>

namespace bp2d {

Skyline::Skyline(int W, int H) : W_(W), H_(H) {
    segments_.push_back({0, W, 0});
}

void Skyline::preplace(int w, int h) {
    segments_.clear();
    segments_.push_back({0, w, h});
    if (w < W_) segments_.push_back({w, W_ - w, 0});
    used_ = static_cast<long long>(w) * h;
}

std::optional<std::pair<int, int>> Skyline::find_position(int w, int h) const {
    int best_x = -1, best_y = std::numeric_limits<int>::max();
    for (size_t s = 0; s < segments_.size(); ++s) {
        int x = segments_[s].x;
        if (x + w > W_) break;
        int support = 0;
        int covered = 0;
        for (size_t r = s; r < segments_.size() && covered < w; ++r) {
            support = std::max(support, segments_[r].height);
            covered += segments_[r].width;
        }
        if (covered < w) break;
        if (support + h > H_) continue;
        if (support < best_y) {
            best_y = support;
            best_x = x;
        }
    }
    if (best_x < 0) return std::nullopt;
    return std::make_pair(best_x, best_y);
}

void Skyline::place(int x, int w, int h) {
    int support = 0;
    for (const Segment& s : segments_)
        if (s.x < x + w && x < s.x + s.width)
            support = std::max(support, s.height);
    int top = support + h;
    std::vector<Segment> next;
    next.reserve(segments_.size() + 2);
    for (const Segment& s : segments_) {
        int sx0 = s.x, sx1 = s.x + s.width;
        if (sx1 <= x || sx0 >= x + w) {
            next.push_back(s);
            continue;
        }
        if (sx0 < x) next.push_back({sx0, x - sx0, s.height});
        if (sx1 > x + w) next.push_back({x + w, sx1 - (x + w), s.height});
    }
    next.push_back({x, w, top});
    std::sort(next.begin(), next.end(),
              [](const Segment& a, const Segment& b) { return a.x < b.x; });
    segments_.clear();
    for (const Segment& s : next) {
        if (!segments_.empty() && segments_.back().height == s.height)
            segments_.back().width += s.width;
        else
            segments_.push_back(s);
    }
    used_ += static_cast<long long>(w) * h;
}

FillResult bin_fill(const std::vector<Item>& items, int W, int H,
                    const Item* preplaced) {
    Skyline sky(W, H);
    FillResult res;
    if (preplaced) {
        sky.preplace(preplaced->w, preplaced->h);
        res.coords.push_back({preplaced->id, 0, 0});
    }
    for (size_t i = 0; i < items.size(); ++i) {
        const Item& it = items[i];
        auto pos = sky.find_position(it.w, it.h);
        if (!pos) continue;
        sky.place(pos->first, it.w, it.h);
        res.packed.push_back(static_cast<int>(i));
        res.coords.push_back({it.id, pos->first, pos->second});
    }
    return res;
}

namespace {

struct HeurBin {
    Skyline sky;
    BinPacking content;
};

bool try_place(HeurBin& bin, const Item& it) {
    auto pos = bin.sky.find_position(it.w, it.h);
    if (!pos) return false;
    bin.sky.place(pos->first, it.w, it.h);
    bin.content.items.push_back(it.id);
    bin.content.coords.push_back({it.id, pos->first, pos->second});
    return true;
}

}  // namespace

Solution initial_solution(const Instance& inst, std::optional<int> given_u0) {
    Solution sol;
    if (given_u0) {
        sol.status = SolveStatus::Feasible;
        sol.upper_bound = *given_u0;
        sol.external_bound = true;
        return sol;
    }
    std::vector<Item> order = inst.items;
    std::sort(order.begin(), order.end(), [](const Item& a, const Item& b) {
        if (a.area() != b.area()) return a.area() > b.area();
        return a.id < b.id;
    });

    std::vector<HeurBin> bins;
    for (const Item& it : order) {
        bool placed = false;
        for (HeurBin& bin : bins)
            if (try_place(bin, it)) {
                placed = true;
                break;
            }
        if (!placed) {
            bins.push_back({Skyline(inst.W, inst.H), {}});
            try_place(bins.back(), it);
        }
    }

    // One redistribution pass: empty the least-filled bin if its items all
    // fit elsewhere.
    if (bins.size() > 1) {
        size_t victim = 0;
        for (size_t b = 1; b < bins.size(); ++b)
            if (bins[b].sky.used_area() < bins[victim].sky.used_area()) victim = b;
        std::vector<HeurBin> trial;
        for (size_t b = 0; b < bins.size(); ++b)
            if (b != victim) trial.push_back(bins[b]);
        std::vector<int> moved = bins[victim].content.items;
        std::sort(moved.begin(), moved.end(), [&](int a, int b) {
            return inst.items[a].area() > inst.items[b].area();
        });
        bool ok = true;
        for (int id : moved) {
            bool placed = false;
            for (HeurBin& bin : trial)
                if (try_place(bin, inst.items[id])) {
                    placed = true;
                    break;
                }
            if (!placed) {
                ok = false;
                break;
            }
        }
        if (ok) bins = std::move(trial);
    }

    for (HeurBin& bin : bins) sol.bins.push_back(std::move(bin.content));
    sol.upper_bound = static_cast<int>(sol.bins.size());
    sol.status = SolveStatus::Feasible;
    return sol;
}

}  // namespace bp2d
