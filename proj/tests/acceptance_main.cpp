// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fails.
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "condorcet/complexity.hpp"
#include "condorcet/generators.hpp"
#include "condorcet/harness.hpp"
#include "condorcet/identify.hpp"
#include "condorcet/matrix.hpp"
#include "condorcet/oracle.hpp"
#include "condorcet/rng.hpp"
#include "condorcet/sampler.hpp"
#include "condorcet/subroutines.hpp"

using namespace condorcet;

namespace {

// The stopping-rule constant is configurable; the suite runs every
// fixed-confidence experiment at this value, so the correctness criterion
// certifies exactly the configuration the trade-off criterion uses. The
// default 4.0 keeps the negative-frontier rule silent at desk scale, which
// would hide the certification/exploration trade-off entirely.
constexpr double kAcceptanceCStop = 0.25;
constexpr double kDelta = 0.1;

struct CriterionOutcome {
    int id;
    bool pass;
    std::string detail;
};

std::vector<CriterionOutcome> outcomes;
std::atomic<long> budget_violations{0};
std::atomic<long> accounting_checks{0};

void report(int id, bool pass, const std::string& detail) {
    outcomes.push_back({id, pass, detail});
}

GapMatrix uniform_total_order(int k, double gap) {
    std::vector<double> deltas(k, gap);
    deltas[0] = 0.0;
    return gen_total_order(deltas);
}

GapMatrix uniform_block(int k, double gap, int sparsity, double eps) {
    std::vector<double> deltas(k, gap);
    deltas[0] = 0.0;
    std::vector<int> sparsities(k, sparsity);
    sparsities[0] = 0;
    return gen_block_minimax(deltas, sparsities, eps);
}

struct FcAggregate {
    int failures = 0;
    std::vector<std::int64_t> budgets;
};

FcAggregate run_fc_batch(const GapMatrix& matrix, int replicates, std::uint64_t seed_tag) {
    std::vector<int> wrong(replicates, 0);
    std::vector<std::int64_t> budgets(replicates, 0);
    parallel_for(replicates, [&](int r) {
        DuelOracle oracle(matrix);
        Rng rng(derive_seed(seed_tag, 0, r));
        const auto res = fc_cwi(oracle, kDelta, kAcceptanceCStop, rng);
        wrong[r] = res.final.recommended == 0 ? 0 : 1;
        budgets[r] = res.final.budget_used;
        ++accounting_checks;
        if (res.final.budget_used != static_cast<std::int64_t>(oracle.total()))
            ++budget_violations;
    });
    FcAggregate agg;
    for (int r = 0; r < replicates; ++r) agg.failures += wrong[r];
    agg.budgets = std::move(budgets);
    return agg;
}

std::vector<std::int64_t> run_baseline_batch(const GapMatrix& matrix, int replicates,
                                             std::uint64_t seed_tag) {
    std::vector<std::int64_t> budgets(replicates, 0);
    parallel_for(replicates, [&](int r) {
        DuelOracle oracle(matrix);
        Rng rng(derive_seed(seed_tag, 1, r));
        const auto res = baseline_row_certify(oracle, kDelta, rng);
        budgets[r] = res.budget_used;
        ++accounting_checks;
        if (res.budget_used != static_cast<std::int64_t>(oracle.total()))
            ++budget_violations;
    });
    return budgets;
}

std::int64_t median_of(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    return nearest_rank(v, 0.5);
}

void criterion1_delta_correctness() {
    struct Case {
        std::string name;
        GapMatrix matrix;
    };
    Rng seed_rng(20240);
    std::vector<Case> cases;
    cases.push_back({"total_order_k4", uniform_total_order(4, 0.25)});
    cases.push_back({"total_order_k8", uniform_total_order(8, 0.25)});
    cases.push_back({"block_k8", uniform_block(8, 0.2, 2, 0.05)});
    cases.push_back({"random_k8", gen_random_cw(8, 0.05, 0.25, seed_rng)});

    const int reps = 500;
    bool pass = true;
    std::ostringstream detail;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto agg = run_fc_batch(cases[c].matrix, reps, 1000 + c);
        const double upper = clopper_pearson_upper(agg.failures, reps);
        const bool ok = upper <= kDelta;
        pass = pass && ok;
        detail << cases[c].name << " err=" << agg.failures << "/" << reps
               << " cp95=" << upper << (ok ? " ok" : " FAIL") << "; ";
    }
    report(1, pass, detail.str());
}

void criterion2_fb_error_decay() {
    const auto matrix = uniform_total_order(8, 0.25);
    const std::vector<std::int64_t> grid{512, 1024, 2048, 4096, 8192};
    const int reps = 1000;
    std::vector<double> error_rates;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<int> wrong(reps, 0);
        parallel_for(reps, [&](int r) {
            DuelOracle oracle(matrix);
            Rng rng(derive_seed(2000, static_cast<int>(g), r));
            FbConfig cfg;
            cfg.t_budget = grid[g];
            cfg.delta = kDelta;
            cfg.c_stop = kAcceptanceCStop;
            const auto res = fb_cwi(oracle, cfg, rng);
            wrong[r] = res.recommended == 0 ? 0 : 1;
            ++accounting_checks;
            if (res.budget_used != static_cast<std::int64_t>(oracle.total()))
                ++budget_violations;
            if (res.budget_used > grid[g] + (grid[g] + 1) / 2) ++budget_violations;
        });
        int failures = 0;
        for (int r = 0; r < reps; ++r) failures += wrong[r];
        error_rates.push_back(static_cast<double>(failures) / reps);
    }
    bool monotone = true;
    for (std::size_t g = 1; g < error_rates.size(); ++g)
        monotone = monotone && error_rates[g] <= error_rates[g - 1];
    const bool tail_ok = error_rates.back() <= 0.05;
    std::ostringstream detail;
    detail << "errors=";
    for (const double e : error_rates) detail << e << " ";
    detail << (monotone ? "(nonincreasing)" : "(NOT monotone)");
    report(2, monotone && tail_ok, detail.str());
}

void criterion3_range_quantile_bracketing() {
    std::vector<double> means;
    for (int i = 0; i < 16; ++i) means.push_back(-0.3 + 0.6 * i / 15.0);
    std::vector<double> sorted = means;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted[1] - 0.1;   // d = 2
    const double hi = sorted[3] + 0.1;   // u = 4
    const std::vector<std::int64_t> budgets{1 << 12, 1 << 13, 1 << 14, 1 << 15};
    const int reps = 500;
    std::vector<double> failure_rates;
    for (std::size_t g = 0; g < budgets.size(); ++g) {
        std::vector<int> fail(reps, 0);
        parallel_for(reps, [&](int r) {
            BernoulliMeanSampler sampler(means);
            Rng rng(derive_seed(3000, static_cast<int>(g), r));
            const auto est = range_quantile(sampler, 2, 4, budgets[g], rng);
            fail[r] = (est.value < lo || est.value > hi) ? 1 : 0;
            if (est.budget_spent > budgets[g]) ++budget_violations;
        });
        int failures = 0;
        for (int r = 0; r < reps; ++r) failures += fail[r];
        failure_rates.push_back(static_cast<double>(failures) / reps);
    }
    bool monotone = true;
    for (std::size_t g = 1; g < failure_rates.size(); ++g)
        monotone = monotone && failure_rates[g] <= failure_rates[g - 1];
    const bool tail_ok = failure_rates.back() <= 0.05;
    std::ostringstream detail;
    detail << "failure rates=";
    for (const double e : failure_rates) detail << e << " ";
    report(3, monotone && tail_ok, detail.str());
}

// full product-grid enumeration, independent of the threshold-scan route
SparsityResult brute_force_sparsity(const GapMatrix& m, double delta) {
    const int k = m.k();
    const int cw = *validate(m).cw;
    std::vector<int> arms, caps;
    for (int i = 0; i < k; ++i) {
        if (i == cw) continue;
        arms.push_back(i);
        caps.push_back(row_stats(m, i).k_neg);
    }
    std::vector<int> s(k, 0);
    for (const int a : arms) s[a] = 1;
    SparsityResult best;
    best.rhs_min = std::numeric_limits<double>::infinity();
    while (true) {
        const double value = hardness(m, s, delta).total();
        if (value < best.rhs_min) {
            best.rhs_min = value;
            best.s_star = s;
        }
        std::size_t pos = 0;
        while (pos < arms.size()) {
            if (s[arms[pos]] < caps[pos]) {
                ++s[arms[pos]];
                break;
            }
            s[arms[pos]] = 1;
            ++pos;
        }
        if (pos == arms.size()) break;
    }
    return best;
}

void criterion4_sparsity_oracle() {
    Rng rng(4000);
    int mismatches = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 3 + static_cast<int>(rng.uniform_below(4));  // K in 3..6
        const auto m = gen_random_cw(k, 0.02, 0.25, rng);
        const auto fast = optimal_sparsity(m, kDelta, 1.0);  // uncapped box
        const auto slow = brute_force_sparsity(m, kDelta);
        if (fast.rhs_min != slow.rhs_min) ++mismatches;
    }
    std::ostringstream detail;
    detail << "value mismatches=" << mismatches << "/50 (exact comparison)";
    report(4, mismatches == 0, detail.str());
}

void criterion5_hardness_identities() {
    bool pass = true;
    std::ostringstream detail;

    const auto m = gen_total_order({0.0, 0.05, 0.1, 0.1, 0.15, 0.2, 0.25, 0.25});
    const int cw = *validate(m).cw;
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < m.k(); ++i) {
        if (i == cw) continue;
        const double g1 = row_stats(m, i).ordered_gaps.front();
        lhs += 1.0 / (g1 * g1);
        rhs += 1.0 / (m.at(cw, i) * m.at(cw, i));
    }
    const double rel = std::abs(lhs - rhs) / rhs;
    pass = pass && rel <= 1e-12;
    detail << "strongest-opponent identity rel err=" << rel << "; ";

    // hand-computed reference values
    GapMatrix flat(3);
    flat.set_pair(0, 1, 0.25);
    flat.set_pair(0, 2, 0.25);
    flat.set_pair(1, 2, 0.1);
    const double cert = lb_certify(flat, 0.025);
    const double cert_ref = 18.420680743952367;  // 8 ln 10
    pass = pass && std::abs(cert - cert_ref) <= 1e-9;
    detail << "lb_certify err=" << std::abs(cert - cert_ref) << "; ";

    GapMatrix two(2);
    two.set_pair(0, 1, 0.25);
    const double expl = lb_explore(two, 1.0 / 12.0);
    const double expl_ref = 3.6967849629863750;  // (16/3) ln 2
    const double second_term = 16.0 / (37.0 * std::log(4.0));
    pass = pass && std::abs(expl - expl_ref) <= 1e-9 && second_term < expl_ref;
    detail << "lb_explore err=" << std::abs(expl - expl_ref);

    report(5, pass, detail.str());
}

void criterion6_budget_accounting() {
    std::ostringstream detail;
    detail << "checks=" << accounting_checks.load()
           << " violations=" << budget_violations.load();
    report(6, budget_violations.load() == 0 && accounting_checks.load() > 0, detail.str());
}

void criterion7_structure_preservation() {
    Rng rng(7000);
    int permute_bad = 0, lift_bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 4 + static_cast<int>(rng.uniform_below(5));
        GapMatrix m(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                double v = rng.uniform(-0.25, 0.25);
                if (rng.bernoulli(0.1)) v = 0.0;  // sprinkle ties
                m.set_pair(i, j, v);
            }

        const auto perms = random_perms(m, rng);
        const auto permuted = permute_negatives(m, perms);
        for (int i = 0; i < k; ++i) {
            std::vector<double> before, after;
            for (int j = 0; j < k; ++j) {
                if (j == i) continue;
                if (m.at(i, j) <= 0.0) before.push_back(m.at(i, j));
                if (permuted.at(i, j) <= 0.0) after.push_back(permuted.at(i, j));
            }
            std::sort(before.begin(), before.end());
            std::sort(after.begin(), after.end());
            if (before != after) ++permute_bad;
        }
        if (!validate(permuted).skew_symmetric) ++permute_bad;

        const int target = static_cast<int>(rng.uniform_below(k));
        const double eps = rng.uniform(1e-6, 0.25);
        const auto lifted = lift_row(m, target, eps);
        const auto rep = validate(lifted);
        if (!rep.cw || *rep.cw != target) ++lift_bad;
    }
    std::ostringstream detail;
    detail << "permute violations=" << permute_bad << " lift violations=" << lift_bad
           << " over 1000 trials each";
    report(7, permute_bad == 0 && lift_bad == 0, detail.str());
}

void criterion8_budget_tradeoff() {
    const int reps = 200;
    bool pass = true;
    std::ostringstream detail;

    // near-tied winner row with large planted gaps among the rivals
    const auto block = uniform_block(8, 0.2, 2, 0.02);
    const auto fc_block = run_fc_batch(block, reps, 8000);
    const auto base_block = run_baseline_batch(block, reps, 8000);
    const std::int64_t fc_med = median_of(fc_block.budgets);
    const std::int64_t base_med = median_of(base_block);
    const bool block_ok = fc_med < base_med;
    pass = pass && block_ok;
    detail << "block: fc median=" << fc_med << " baseline median=" << base_med
           << (block_ok ? " ok" : " FAIL") << "; ";

    // strongest-opponent regime: the two approaches should be comparable
    const auto order = uniform_total_order(8, 0.25);
    const auto fc_order = run_fc_batch(order, reps, 8100);
    const auto base_order = run_baseline_batch(order, reps, 8100);
    const std::int64_t fc_med2 = median_of(fc_order.budgets);
    const std::int64_t base_med2 = median_of(base_order);
    const double ratio = static_cast<double>(std::max(fc_med2, base_med2)) /
                         static_cast<double>(std::min(fc_med2, base_med2));
    const bool order_ok = ratio <= 5.0;
    pass = pass && order_ok;
    detail << "total_order: fc median=" << fc_med2 << " baseline median=" << base_med2
           << " ratio=" << ratio << (order_ok ? " ok" : " FAIL");

    report(8, pass, detail.str());
}

} // namespace

int main() {
    criterion1_delta_correctness();
    criterion2_fb_error_decay();
    criterion3_range_quantile_bracketing();
    criterion4_sparsity_oracle();
    criterion5_hardness_identities();
    criterion7_structure_preservation();
    criterion8_budget_tradeoff();
    criterion6_budget_accounting();  // aggregates checks from the runs above

    std::sort(outcomes.begin(), outcomes.end(),
              [](const CriterionOutcome& a, const CriterionOutcome& b) { return a.id < b.id; });
    bool all_pass = true;
    for (const auto& o : outcomes) {
        std::cout << "criterion " << o.id << " [" << (o.pass ? "PASS" : "FAIL")
                  << "] " << o.detail << "\n";
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
