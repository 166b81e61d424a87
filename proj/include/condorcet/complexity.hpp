#pragma once
#include <vector>

#include "condorcet/matrix.hpp"

namespace condorcet {

// Row i of the matrix without its diagonal, sorted ascending (stable in the
// original column index), with the count and squared norm of its strictly
// negative part.
struct RowStats {
    int arm = 0;
    std::vector<double> ordered_gaps;
    int k_neg = 0;
    double neg_norm_sq = 0.0;
};

RowStats row_stats(const GapMatrix& m, int arm);

// log(1/delta) * sum over rivals of 1/gap(cw, i)^2. All logs here and below
// are natural. Throws NoCondorcetWinnerError without a strict winner.
double h_cw(const GapMatrix& m, double delta);

struct HardnessParts {
    double h_certify = 0.0;
    double h_explore0 = 0.0;  // delta-free sum term
    double h_explore1 = 0.0;  // max term, scaled by log(1/delta) in h_explore
    double h_explore = 0.0;   // log(1/delta) * h_explore1 + h_explore0
    double total() const { return h_certify + h_explore; }
};

// s is indexed by arm; s[winner] is ignored. Requires 1 <= s[i] <= k_neg(i)
// for every suboptimal arm.
HardnessParts hardness(const GapMatrix& m, const std::vector<int>& s, double delta);

struct SparsityResult {
    std::vector<int> s_star;  // s_star[winner] == 0
    double rhs_min = 0.0;     // hardness value at s_star
};

// Exact minimizer of h_certify + h_explore over the box
// 1 <= s_i <= min(k_neg(i), max(1, floor(cap_fraction * K))). The max term
// takes at most (K-1)*cap distinct values; scanning them as thresholds makes
// the remaining per-row choice separable. Ties resolve to the
// lexicographically smallest s.
SparsityResult optimal_sparsity(const GapMatrix& m, double delta,
                                double cap_fraction = 0.125);

// (1/4) * sum_i log(1/(4 delta)) / gap_{i,(1)}^2, requires delta < 1/4.
double lb_certify(const GapMatrix& m, double delta);
// companion display: (1/3) * sum_i log(1/(6 delta)) / gap_{i,(1)}^2, delta < 1/6
double lb_certify_quantile(const GapMatrix& m, double delta);

// max of (1/3) max_i (k_neg_i / neg_norm_i) log(1/(6 delta)) and
// (1/(37 log 2K)) sum_i k_neg_i / neg_norm_i, requires delta <= 1/12.
double lb_explore(const GapMatrix& m, double delta);

struct HardnessProfile {
    double h_cw = 0.0;
    std::vector<int> s_star;
    double h_certify = 0.0;
    double h_explore0 = 0.0;
    double h_explore1 = 0.0;
    double h_explore = 0.0;
    double rhs_min = 0.0;
    double lb_certify = 0.0;
    double lb_explore = 0.0;  // NaN when delta is outside (0, 1/12]
    double delta = 0.0;
};

HardnessProfile hardness_profile(const GapMatrix& m, double delta,
                                 double cap_fraction = 0.125);

} // namespace condorcet
