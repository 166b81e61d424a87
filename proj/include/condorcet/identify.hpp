#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "condorcet/oracle.hpp"
#include "condorcet/rng.hpp"

namespace condorcet {

struct FbConfig {
    std::int64_t t_budget = 0;
    double delta = 0.1;
    double c_stop = 4.0;            // constant in the negative-frontier stopping rule
    std::int64_t testcw_cap = -1;   // extra queries allowed for test_cw; -1 means ceil(T/2)

    bool valid() const {
        return t_budget >= 1 && delta > 0.0 && delta < 1.0 && c_stop > 0.0;
    }
};

struct ArmScore {
    double z_strong = 0.0;  // empirical gap against the selected strong opponent
    double z_weak = 0.0;    // lower-tail quantile estimate over active rivals
    double score = 0.0;     // min(z_strong, 0) + z_weak
};

struct RoundTrace {
    int round = 0;
    std::vector<int> active;
    std::int64_t per_arm_budget = 0;          // B_k
    std::map<int, ArmScore> scores;
    std::vector<int> eliminated;
    bool phi1_term = false;
    double threshold = 0.0;                   // frontier must sit below -threshold
    std::int64_t spent = 0;
};

struct IdentificationResult {
    int recommended = -1;
    bool certified = false;
    bool phi1 = false;
    bool phi2 = false;
    std::int64_t budget_used = 0;
    std::vector<RoundTrace> rounds;
};

// Fixed-budget identification: elimination loop dropping the bottom
// ceil(|A|/8) of the active set by score each round, followed by a
// sign-certification pass on the survivor. Spends at most
// t_budget + testcw_cap queries. Throws UnderbudgetError when the
// first-round per-arm budget floor(T / (K log_{8/7} K)) is below 4.
IdentificationResult fb_cwi(DuelOracle& oracle, const FbConfig& cfg, Rng& rng);

struct TestCwResult {
    bool certified = false;
    std::int64_t spent = 0;
};

// Round-robin sampling of the least-sampled pair (candidate, j). Pair j is
// cleared when its empirical gap crosses +sqrt(log(K N^2 n(n+1)/delta)/N);
// aborts (false) on crossing the negative mirror; false on budget
// exhaustion. n = log2(t_cap / (4 K log_{8/7} K)), floored at 1 so the
// clearing bound stays summable for small caps.
TestCwResult test_cw(DuelOracle& oracle, int candidate, double delta,
                     std::int64_t t_cap, Rng& rng);

struct FcStage {
    std::int64_t t_budget = 0;
    bool phi1 = false;
    bool phi2 = false;
    std::int64_t budget = 0;
};

struct FcResult {
    IdentificationResult final;   // budget_used is cumulative over stages
    std::vector<FcStage> stages;
};

// Doubling schedule over fb_cwi; stops at the first certified stage.
// Initial budget max(16, ceil(8K ln K), ceil(8K log_{8/7} K)) so the first
// stage is always runnable. Requires 0 < delta < 1/6. Throws
// NonterminationError after max_stages doublings.
FcResult fc_cwi(DuelOracle& oracle, double delta, double c_stop, Rng& rng,
                int max_stages = 40);

// Comparison baseline: test_cw on every arm in round-robin under doubling
// caps until one certifies; each call runs at confidence delta/K, which keeps
// the union bound over candidates at delta.
IdentificationResult baseline_row_certify(DuelOracle& oracle, double delta, Rng& rng,
                                          int max_stages = 40);

} // namespace condorcet
