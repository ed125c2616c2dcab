#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace bp2d {

using Rational = boost::rational<long long>;

/// A rectangular item. Dimensions are positive integers not exceeding the
/// bin dimensions; the id is the 0-based position in the input file.
struct Item {
    int id = 0;
    int w = 0;
    int h = 0;

    long long area() const { return static_cast<long long>(w) * h; }
};

/// A problem instance: n items to be packed into identical W x H bins.
/// m is the current upper bound on the number of bins (initialized to n,
/// tightened to the incumbent value while solving).
struct Instance {
    int W = 0;
    int H = 0;
    std::vector<Item> items;
    int m = 0;

    int n() const { return static_cast<int>(items.size()); }
    long long bin_area() const { return static_cast<long long>(W) * H; }
    long long total_item_area() const {
        long long a = 0;
        for (const Item& it : items) a += it.area();
        return a;
    }
};

struct PlacedItem {
    int id = 0;
    int x = 0;
    int y = 0;
};

/// Coordinates of the items inside one bin, lower-left corner convention.
using Placement = std::vector<PlacedItem>;

struct BinPacking {
    std::vector<int> items;   // item ids
    Placement coords;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, TimedOut };

std::string to_string(SolveStatus s);

struct SolveStats {
    long long nodes = 0;
    long long opp_calls = 0;
    long long memo_hits = 0;
    long long cuts_added = 0;
    int incumbent_updates = 0;
    double sec_total = 0.0;
    double sec_opp = 0.0;
    double sec_bounds = 0.0;
};

struct Solution {
    SolveStatus status = SolveStatus::Feasible;
    int lower_bound = 0;
    int upper_bound = 0;
    std::vector<BinPacking> bins;
    SolveStats stats;
    // True when the upper bound was supplied externally and no packing
    // certificate of that value is attached.
    bool external_bound = false;
};

enum class FileFormat { Native, TwoBP };
enum class DimsOrder { WH, HW };

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Parses an instance from text. Native format:
///   n
///   W H
///   w_0 h_0
///   ...
/// The TwoBP import accepts the classical benchmark layout, where an
/// optional numeric class/id pair may precede the bin line; `order`
/// selects whether dimension pairs are read as `w h` or `h w`.
/// Throws ParseError naming the offending line.
Instance parse_instance(const std::string& text, FileFormat format,
                        DimsOrder order = DimsOrder::WH);

Instance load_instance(const std::string& path, FileFormat format,
                       DimsOrder order = DimsOrder::WH);

std::string serialize_instance(const Instance& inst, FileFormat format,
                               DimsOrder order = DimsOrder::WH);

/// Sum of item areas divided by the bin area, exactly.
Rational continuous_bound(const Instance& inst);

/// Checks that `sol.bins` is a partition of the items into bins with
/// in-bounds, pairwise non-overlapping placements. Returns std::nullopt when
/// the solution is feasible, otherwise a report naming the first violation.
std::optional<std::string> verify_solution(const Instance& inst,
                                           const Solution& sol);

/// JSON export: {status, L, U, bins:[{items, coords}], stats}.
std::string solution_to_json(const Solution& sol);

}  // namespace bp2d
