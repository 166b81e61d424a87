#pragma once
#include <cstdint>
#include <vector>

#include "condorcet/oracle.hpp"
#include "condorcet/rng.hpp"
#include "condorcet/sampler.hpp"

namespace condorcet {

struct ShResult {
    int arm = 0;
    std::int64_t spent = 0;
    bool degenerate = false;          // budget < n_arms: uniform random pick
    std::vector<int> phase_sizes;     // survivor count entering each phase
};

// Fixed-budget search for the arm with the smallest mean. ceil(log2 n)
// phases; each spends floor(budget / phases), split as evenly as possible
// over survivors with the remainder on the lowest-indexed ones; the
// ceil(half) arms with smallest empirical means survive (ties by index).
// Never draws more than `budget`.
ShResult sequential_halving_min(ArmSampler& sampler, std::int64_t budget, Rng& rng);

struct QuantileEstimate {
    double value = 0.0;
    int level_selected = -1;  // -1 on the uniform-allocation branch
    int levels_run = 0;
    std::int64_t budget_spent = 0;
};

// Fixed-budget estimate of a point between the d-th and u-th smallest arm
// means (1-based, inclusive). Below the budget threshold
// (128 n/(u-d)) log2(128 n/(u-d)), or when u == d, the budget is spread
// uniformly and the average of the empirical means ranked d..u is returned.
// Otherwise runs the leveled scheme with the stability rule that picks the
// coarsest level consistent with all finer ones. Total spend <= budget.
QuantileEstimate range_quantile(ArmSampler& sampler, int d, int u,
                                std::int64_t budget, Rng& rng);

// the (ceil(n/8), ceil(n/4)) instantiation used by the elimination loop
QuantileEstimate range_quantile_18(ArmSampler& sampler, std::int64_t budget, Rng& rng);
std::pair<int, int> range_quantile_18_ranks(int n_arms);

// (wins of i over j) / n_samples - 1/2; charges exactly n_samples queries.
double empirical_gap(DuelOracle& oracle, int i, int j, std::int64_t n_samples, Rng& rng);

} // namespace condorcet
