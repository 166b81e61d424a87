#include "condorcet/subroutines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "condorcet/errors.hpp"

namespace condorcet {

namespace {

// sort indices ascending by (value, index); index order breaks ties everywhere
std::vector<int> rank_ascending(const std::vector<int>& ids, const std::vector<double>& value) {
    std::vector<int> order = ids;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (value[a] != value[b]) return value[a] < value[b];
        return a < b;
    });
    return order;
}

} // namespace

ShResult sequential_halving_min(ArmSampler& sampler, std::int64_t budget, Rng& rng) {
    const int n = sampler.n_arms();
    if (n < 1) throw InvalidParameterError("sequential_halving_min: no arms");
    ShResult res;
    if (n == 1) {
        res.arm = 0;
        return res;
    }
    if (budget < n) {
        res.arm = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        res.degenerate = true;
        return res;
    }

    const int phases = static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
    const std::int64_t per_phase = budget / phases;

    std::vector<int> survivors(n);
    std::iota(survivors.begin(), survivors.end(), 0);
    std::vector<double> mean(n, 0.0);

    for (int phase = 0; phase < phases && survivors.size() > 1; ++phase) {
        const int m = static_cast<int>(survivors.size());
        res.phase_sizes.push_back(m);
        const std::int64_t base = per_phase / m;
        const std::int64_t extra = per_phase % m;
        for (int pos = 0; pos < m; ++pos) {
            const int arm = survivors[pos];
            const std::int64_t draws = base + (pos < extra ? 1 : 0);
            double sum = 0.0;
            for (std::int64_t t = 0; t < draws; ++t) sum += sampler.draw(arm, rng);
            res.spent += draws;
            mean[arm] = draws > 0 ? sum / static_cast<double>(draws) : 0.0;
        }
        const auto ranked = rank_ascending(survivors, mean);
        const int keep = (m + 1) / 2;
        survivors.assign(ranked.begin(), ranked.begin() + keep);
        std::sort(survivors.begin(), survivors.end());
    }
    res.arm = survivors.front();
    return res;
}

namespace {

struct Level {
    int level = 0;
    double eps = 0.0;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
};

// ceil(a * N / b) in exact integer arithmetic, clamped to [1, N]
int quantile_rank(std::int64_t a, std::int64_t b, std::int64_t n_samples) {
    std::int64_t r = (a * n_samples + b - 1) / b;
    r = std::max<std::int64_t>(1, std::min(r, n_samples));
    return static_cast<int>(r);
}

QuantileEstimate uniform_branch(ArmSampler& sampler, int d, int u,
                                std::int64_t budget, Rng& rng) {
    const int n = sampler.n_arms();
    const std::int64_t base = budget / n;
    const std::int64_t extra = budget % n;
    std::vector<double> mean(n, 0.0);
    QuantileEstimate out;
    for (int arm = 0; arm < n; ++arm) {
        const std::int64_t draws = base + (arm < extra ? 1 : 0);
        double sum = 0.0;
        for (std::int64_t t = 0; t < draws; ++t) sum += sampler.draw(arm, rng);
        out.budget_spent += draws;
        mean[arm] = draws > 0 ? sum / static_cast<double>(draws) : 0.0;
    }
    std::sort(mean.begin(), mean.end());
    double acc = 0.0;
    for (int r = d; r <= u; ++r) acc += mean[r - 1];
    out.value = acc / (u - d + 1);
    return out;
}

} // namespace

QuantileEstimate range_quantile(ArmSampler& sampler, int d, int u,
                                std::int64_t budget, Rng& rng) {
    const int n = sampler.n_arms();
    if (n < 1) throw InvalidParameterError("range_quantile: no arms");
    if (d < 1 || d > u || u > n)
        throw InvalidParameterError("range_quantile: need 1 <= d <= u <= n_arms");
    if (budget < 1) throw InvalidParameterError("range_quantile: budget must be >= 1");

    if (u == d)
        return uniform_branch(sampler, d, u, budget, rng);
    const double ratio = 128.0 * n / (u - d);
    if (static_cast<double>(budget) <= ratio * std::log2(ratio))
        return uniform_branch(sampler, d, u, budget, rng);

    const double log2_budget = std::log2(static_cast<double>(budget));
    const int big_l = static_cast<int>(std::floor(std::log2(budget / log2_budget)));
    const int l_min =
        static_cast<int>(std::ceil(std::log2(16.0 * n / (u - d))));
    const double log_gap = std::log(16.0 * n / (u - d));

    QuantileEstimate out;
    std::vector<Level> levels;
    for (int level = l_min; level <= big_l - 1; ++level) {
        const double eps_sq = std::exp2(2.0 - (big_l - level));  // eps = 2 * 2^{-(L-l)/2}
        const auto n_sel = static_cast<std::int64_t>(
            std::floor(eps_sq * static_cast<double>(budget) / (log_gap * log2_budget)));
        if (n_sel < 1) continue;
        const auto per_arm = static_cast<std::int64_t>(std::ceil(log_gap / (2.0 * eps_sq)));
        if (out.budget_spent + n_sel * per_arm > budget) break;  // never exceed the budget

        std::vector<double> mean(n_sel);
        for (std::int64_t a = 0; a < n_sel; ++a) {
            const int arm = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
            double sum = 0.0;
            for (std::int64_t t = 0; t < per_arm; ++t) sum += sampler.draw(arm, rng);
            mean[a] = sum / static_cast<double>(per_arm);
        }
        out.budget_spent += n_sel * per_arm;
        std::sort(mean.begin(), mean.end());

        Level lv;
        lv.level = level;
        lv.eps = std::sqrt(eps_sq);
        lv.t1 = mean[quantile_rank(3LL * d + u, 4LL * n, n_sel) - 1];
        lv.t2 = mean[quantile_rank(static_cast<std::int64_t>(d) + u, 2LL * n, n_sel) - 1];
        lv.t3 = mean[quantile_rank(d + 3LL * u, 4LL * n, n_sel) - 1];
        levels.push_back(lv);
    }

    if (levels.empty())
        return uniform_branch(sampler, d, u, budget - out.budget_spent, rng);

    out.levels_run = static_cast<int>(levels.size());
    // smallest level whose middle estimate stays inside every later bracket;
    // the last level always qualifies
    std::size_t chosen = levels.size() - 1;
    for (std::size_t a = 0; a < levels.size(); ++a) {
        bool ok = true;
        for (std::size_t b = a; b < levels.size(); ++b) {
            if (levels[a].t2 < levels[b].t1 - 2.0 * levels[b].eps ||
                levels[a].t2 > levels[b].t3 + 2.0 * levels[b].eps) {
                ok = false;
                break;
            }
        }
        if (ok) {
            chosen = a;
            break;
        }
    }
    out.level_selected = levels[chosen].level;
    out.value = levels[chosen].t2;
    return out;
}

std::pair<int, int> range_quantile_18_ranks(int n_arms) {
    return {(n_arms + 7) / 8, (n_arms + 3) / 4};
}

QuantileEstimate range_quantile_18(ArmSampler& sampler, std::int64_t budget, Rng& rng) {
    const auto [d, u] = range_quantile_18_ranks(sampler.n_arms());
    return range_quantile(sampler, d, u, budget, rng);
}

double empirical_gap(DuelOracle& oracle, int i, int j, std::int64_t n_samples, Rng& rng) {
    if (n_samples < 1) throw InvalidParameterError("empirical_gap: need n_samples >= 1");
    std::int64_t wins = 0;
    for (std::int64_t t = 0; t < n_samples; ++t) wins += oracle.sample_duel(i, j, rng);
    return static_cast<double>(wins) / static_cast<double>(n_samples) - 0.5;
}

} // namespace condorcet
