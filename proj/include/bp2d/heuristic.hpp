#pragma once

#include <optional>
#include <vector>

#include "bp2d/instance.hpp"

namespace bp2d {

/// Height profile of a partially filled bin: contiguous segments spanning
/// [0, W), each with the height packed so far below it.
class Skyline {
public:
    Skyline(int W, int H);

    /// Seeds the profile with an item already placed at (0, 0).
    void preplace(int w, int h);

    /// Lowest-then-leftmost position where a w x h item fits, if any.
    std::optional<std::pair<int, int>> find_position(int w, int h) const;

    /// Places the item (the position must come from find_position).
    void place(int x, int w, int h);

    long long used_area() const { return used_; }

private:
    struct Segment {
        int x;
        int width;
        int height;
    };
    std::vector<Segment> segments_;
    int W_;
    int H_;
    long long used_ = 0;
};

struct FillResult {
    std::vector<int> packed;  // indices into the input list
    Placement coords;
};

/// Skyline bottom-left fill: walks the items in the given order and places
/// each at the lowest-then-leftmost feasible position, skipping items that no
/// longer fit. Never claims an item it did not place.
FillResult bin_fill(const std::vector<Item>& items, int W, int H,
                    const Item* preplaced = nullptr);

/// First-fit-decreasing by area over skyline bins, followed by one pass that
/// tries to empty the least-filled bin by redistributing its items. When
/// `given_u0` is set, no packing is built: the value is recorded as an
/// external bound and the caller must certify it.
Solution initial_solution(const Instance& inst,
                          std::optional<int> given_u0 = std::nullopt);

}  // namespace bp2d
