#include "condorcet/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "condorcet/errors.hpp"
#include "condorcet/sampler.hpp"
#include "condorcet/subroutines.hpp"

namespace condorcet {

namespace {

double log_87(double x) { return std::log(x) / std::log(8.0 / 7.0); }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

} // namespace

IdentificationResult fb_cwi(DuelOracle& oracle, const FbConfig& cfg, Rng& rng) {
    const int k = oracle.k();
    if (k < 2) throw InvalidParameterError("fb_cwi: need at least 2 arms");
    if (!cfg.valid()) throw InvalidParameterError("fb_cwi: invalid config");

    const double log87k = log_87(static_cast<double>(k));
    const std::int64_t t_budget = cfg.t_budget;
    // the budget split below stays within t_budget iff the first round can
    // give every arm at least 4 queries
    if (static_cast<double>(t_budget) < 4.0 * k * log87k)
        throw UnderbudgetError("fb_cwi: budget below 4 K log_{8/7} K = " +
                               std::to_string(4.0 * k * log87k));

    const std::int64_t testcw_cap =
        cfg.testcw_cap > 0 ? cfg.testcw_cap : ceil_div(t_budget, 2);
    const double log_t = std::log(static_cast<double>(t_budget));
    const double n_stage = std::log2(static_cast<double>(t_budget) / (2.0 * k * log87k));

    const std::uint64_t start_total = oracle.total();
    IdentificationResult res;
    res.phi1 = true;

    std::vector<int> active(k);
    std::iota(active.begin(), active.end(), 0);

    int round = 1;
    while (active.size() > 1) {
        const int m = static_cast<int>(active.size());
        const auto b_k = static_cast<std::int64_t>(
            std::floor(static_cast<double>(t_budget) / (m * log87k)));
        const std::int64_t bs = ceil_div(b_k, 4);
        const std::int64_t bw = ceil_div(b_k, 2);

        RoundTrace trace;
        trace.round = round;
        trace.active = active;
        trace.per_arm_budget = b_k;
        const std::uint64_t round_start = oracle.total();

        std::vector<double> score(k, 0.0);
        for (const int alpha : active) {
            // strong opponent: search all rivals for the most negative gap
            std::vector<int> everyone;
            everyone.reserve(k - 1);
            for (int b = 0; b < k; ++b)
                if (b != alpha) everyone.push_back(b);
            DuelRowSampler strong(oracle, alpha, everyone);
            const auto sh = sequential_halving_min(strong, bs, rng);
            const int opponent = everyone[sh.arm];
            const double z_strong = empirical_gap(oracle, alpha, opponent, bs, rng);

            // weak score: a lower-tail quantile of the active-row gaps
            std::vector<int> rivals;
            rivals.reserve(m - 1);
            for (const int b : active)
                if (b != alpha) rivals.push_back(b);
            DuelRowSampler weak(oracle, alpha, rivals);
            const auto q = range_quantile_18(weak, bw, rng);

            ArmScore as;
            as.z_strong = z_strong;
            as.z_weak = q.value;
            as.score = std::min(z_strong, 0.0) + q.value;
            score[alpha] = as.score;
            trace.scores[alpha] = as;
        }

        // rank by score, higher is safer; lower index wins ties
        std::vector<int> ranked = active;
        std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
            if (score[a] != score[b]) return score[a] > score[b];
            return a < b;
        });
        const int eliminate = static_cast<int>(ceil_div(m, 8));
        const int keep = m - eliminate;
        const int frontier = ranked[keep];  // best-ranked arm that gets cut

        if (n_stage > 1.0) {
            const double log_arg = 8.0 * k * k * log87k * log_t *
                                   n_stage * (n_stage + 1.0) / cfg.delta;
            trace.threshold = std::sqrt(2.0 * cfg.c_stop * log_t / static_cast<double>(bs) *
                                        std::log(log_arg));
            trace.phi1_term = score[frontier] < -trace.threshold;
        } else {
            trace.threshold = std::numeric_limits<double>::infinity();
            trace.phi1_term = false;
        }
        res.phi1 = res.phi1 && trace.phi1_term;

        trace.eliminated.assign(ranked.begin() + keep, ranked.end());
        std::sort(trace.eliminated.begin(), trace.eliminated.end());
        active.assign(ranked.begin(), ranked.begin() + keep);
        std::sort(active.begin(), active.end());
        trace.spent = static_cast<std::int64_t>(oracle.total() - round_start);
        res.rounds.push_back(std::move(trace));
        ++round;
    }

    res.recommended = active.front();
    const auto tc = test_cw(oracle, res.recommended, cfg.delta, testcw_cap, rng);
    res.phi2 = tc.certified;
    res.certified = res.phi1 || res.phi2;
    res.budget_used = static_cast<std::int64_t>(oracle.total() - start_total);
    return res;
}

TestCwResult test_cw(DuelOracle& oracle, int candidate, double delta,
                     std::int64_t t_cap, Rng& rng) {
    const int k = oracle.k();
    if (candidate < 0 || candidate >= k)
        throw InvalidParameterError("test_cw: candidate out of range");
    if (t_cap < 1) throw InvalidParameterError("test_cw: t_cap must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidParameterError("test_cw: delta must lie in (0, 1)");

    const double log87k = log_87(static_cast<double>(k));
    // the stage number is >= 1 wherever the doubling schedule calls this; the
    // floor keeps the union bound summable for standalone calls with small caps
    const double n_stage = std::max(
        1.0, std::log2(static_cast<double>(t_cap) / (4.0 * k * log87k)));
    const auto threshold = [&](std::int64_t n_pair) {
        const double arg = k * static_cast<double>(n_pair) * static_cast<double>(n_pair) *
                           n_stage * (n_stage + 1.0) / delta;
        return std::sqrt(std::log(arg) / static_cast<double>(n_pair));
    };

    std::vector<int> remaining;
    remaining.reserve(k - 1);
    for (int j = 0; j < k; ++j)
        if (j != candidate) remaining.push_back(j);
    std::vector<std::int64_t> wins(k, 0), pulls(k, 0);

    TestCwResult res;
    while (!remaining.empty() && res.spent < t_cap) {
        int target = remaining.front();
        for (const int j : remaining)
            if (pulls[j] < pulls[target]) target = j;
        wins[target] += oracle.sample_duel(candidate, target, rng);
        ++pulls[target];
        ++res.spent;

        std::vector<int> still;
        still.reserve(remaining.size());
        for (const int j : remaining) {
            if (pulls[j] == 0) {
                still.push_back(j);
                continue;
            }
            const double gap = static_cast<double>(wins[j]) / pulls[j] - 0.5;
            const double thr = threshold(pulls[j]);
            if (gap >= thr) continue;       // sign certified positive, drop the pair
            if (gap <= -thr) return res;    // negative evidence, abort
            still.push_back(j);
        }
        remaining.swap(still);
    }
    res.certified = remaining.empty();
    return res;
}

FcResult fc_cwi(DuelOracle& oracle, double delta, double c_stop, Rng& rng, int max_stages) {
    const int k = oracle.k();
    if (k < 2) throw InvalidParameterError("fc_cwi: need at least 2 arms");
    if (!(delta > 0.0 && delta < 1.0 / 6.0))
        throw InvalidParameterError("fc_cwi: delta must lie in (0, 1/6)");
    if (!(c_stop > 0.0)) throw InvalidParameterError("fc_cwi: c_stop must be positive");

    const double log87k = log_87(static_cast<double>(k));
    std::int64_t t = std::max<std::int64_t>(
        16, std::max(static_cast<std::int64_t>(std::ceil(8.0 * k * std::log(k))),
                     static_cast<std::int64_t>(std::ceil(8.0 * k * log87k))));

    const std::uint64_t start_total = oracle.total();
    FcResult out;
    for (int stage = 0; stage < max_stages; ++stage) {
        FbConfig cfg;
        cfg.t_budget = t;
        cfg.delta = delta;
        cfg.c_stop = c_stop;
        auto res = fb_cwi(oracle, cfg, rng);
        out.stages.push_back(FcStage{t, res.phi1, res.phi2, res.budget_used});
        if (res.certified) {
            out.final = std::move(res);
            out.final.budget_used = static_cast<std::int64_t>(oracle.total() - start_total);
            return out;
        }
        t *= 2;
    }
    std::string trace = "fc_cwi: no certified stage within " +
                        std::to_string(max_stages) + " doublings;";
    for (const auto& st : out.stages)
        trace += " (T=" + std::to_string(st.t_budget) + " phi1=" + (st.phi1 ? "1" : "0") +
                 " phi2=" + (st.phi2 ? "1" : "0") + " budget=" + std::to_string(st.budget) + ")";
    throw NonterminationError(trace);
}

IdentificationResult baseline_row_certify(DuelOracle& oracle, double delta, Rng& rng,
                                          int max_stages) {
    const int k = oracle.k();
    if (k < 2) throw InvalidParameterError("baseline_row_certify: need at least 2 arms");
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidParameterError("baseline_row_certify: delta must lie in (0, 1)");

    const double log87k = log_87(static_cast<double>(k));
    std::int64_t cap = std::max<std::int64_t>(
        16, static_cast<std::int64_t>(std::ceil(4.0 * k * log87k)));
    const double per_arm_delta = delta / k;

    const std::uint64_t start_total = oracle.total();
    for (int stage = 0; stage < max_stages; ++stage) {
        for (int candidate = 0; candidate < k; ++candidate) {
            const auto tc = test_cw(oracle, candidate, per_arm_delta, cap, rng);
            if (tc.certified) {
                IdentificationResult res;
                res.recommended = candidate;
                res.certified = true;
                res.phi2 = true;
                res.budget_used = static_cast<std::int64_t>(oracle.total() - start_total);
                return res;
            }
        }
        cap *= 2;
    }
    throw NonterminationError("baseline_row_certify: nothing certified within " +
                              std::to_string(max_stages) + " doublings");
}

} // namespace condorcet
