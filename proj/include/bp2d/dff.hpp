#pragma once

#include <string>
#include <vector>

#include "bp2d/instance.hpp"

namespace bp2d {

enum class DffKind { F0, F1, F2 };

struct DffSpec {
    DffKind kind = DffKind::F0;
    int k = 1;
};

/// One discrete dual feasible function materialized against a capacity (and,
/// for the data-dependent F1, the instance sizes along its axis).
class DffFunc {
public:
    static DffFunc make(DffSpec spec, int C, const std::vector<int>& sizes);

    long long eval(int x) const;
    long long image() const { return eval(C_); }

    const DffSpec& spec() const { return spec_; }
    int capacity() const { return C_; }

private:
    DffSpec spec_;
    int C_ = 0;
    std::vector<int> ckp_sorted_;  // F1 only: J sizes, ascending

    long long ckp(int cap) const;  // max #items from J fitting cap (greedy)
};

/// Piecewise DFF evaluations (exposed for the unit tests).
long long dff_f0(int k, int C, int x);
long long dff_f1(int k, int C, const std::vector<int>& sizes, int x);
long long dff_f2(int k, int C, int x);

struct DffPair {
    int wf = 0;  // index into L2Result::wfuncs
    int hf = 0;  // index into L2Result::hfuncs
    double score = 0.0;  // transformed area over transformed capacity
};

struct L2Result {
    int bound = 0;
    std::vector<DffFunc> wfuncs;
    std::vector<DffFunc> hfuncs;
    std::vector<DffPair> ranked;  // best score first
};

/// L2 lower bound: max over function pairs of the rounded-up transformed
/// area ratio. Functions are enumerated over all parameters that can change
/// the transformed vectors and deduplicated.
L2Result l2_ccm(const Instance& inst);

/// One conservative scale iterate: modified sizes feasible for every
/// width-feasible (resp. height-feasible) subset.
struct ScalePair {
    std::vector<double> w;
    std::vector<double> h;
    int k = 0;  // iteration index; 0 = original sizes
};

/// Iterated LPs with knapsack row generation; index 0 of the result holds the
/// original sizes. A stalled iterate is re-solved under a secondary
/// objective maximizing the plain size sum.
std::vector<ScalePair> conservative_scales(const Instance& inst, int eta);

struct ScaleCombo {
    int k = 0, l = 0;
    double score = 0.0;
};

struct BkrsResult {
    int bound = 0;
    std::vector<ScaleCombo> ranked;
};

/// max over k, l of ceil(sum_j w^k_j h^l_j / (W H)).
BkrsResult l_bkrs(const Instance& inst, const std::vector<ScalePair>& scales);

struct BoundReport {
    Rational lc{0, 1};
    int l2ccm = 0;
    int lbkrs = 0;
    int l0 = 0;
    L2Result l2;
    std::vector<ScalePair> scales;
    BkrsResult bkrs;
    double seconds = 0.0;
};

/// Full lower-bound pipeline on an already globally reduced instance;
/// l0 = max(l2ccm, lbkrs).
BoundReport compute_bounds(const Instance& inst, int eta);

/// ceil with a 1e-9 guard so values representable as integers do not round up.
long long ceil_guard(double q);

std::string to_string(const DffSpec& s);

}  // namespace bp2d
