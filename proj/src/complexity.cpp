#include "condorcet/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "condorcet/errors.hpp"

namespace condorcet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int winner_or_throw(const GapMatrix& m) {
    const auto report = validate(m);
    if (!report.cw) throw NoCondorcetWinnerError("instance has no strict Condorcet winner");
    return *report.cw;
}

double inv_sq(double g) { return g == 0.0 ? kInf : 1.0 / (g * g); }

} // namespace

RowStats row_stats(const GapMatrix& m, int arm) {
    const int k = m.k();
    if (arm < 0 || arm >= k) throw InvalidParameterError("row_stats: arm out of range");
    RowStats st;
    st.arm = arm;
    std::vector<std::pair<double, int>> entries;
    entries.reserve(k - 1);
    for (int j = 0; j < k; ++j)
        if (j != arm) entries.emplace_back(m.at(arm, j), j);
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    st.ordered_gaps.reserve(entries.size());
    for (const auto& [v, j] : entries) {
        st.ordered_gaps.push_back(v);
        if (v < 0.0) {
            ++st.k_neg;
            st.neg_norm_sq += v * v;
        }
    }
    return st;
}

double h_cw(const GapMatrix& m, double delta) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidParameterError("h_cw: delta must lie in (0, 1]");
    const int cw = winner_or_throw(m);
    double sum = 0.0;
    for (int j = 0; j < m.k(); ++j)
        if (j != cw) sum += inv_sq(m.at(cw, j));
    return std::log(1.0 / delta) * sum;
}

HardnessParts hardness(const GapMatrix& m, const std::vector<int>& s, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidParameterError("hardness: delta must lie in (0, 1)");
    const int k = m.k();
    if (static_cast<int>(s.size()) != k)
        throw InvalidParameterError("hardness: s size mismatch");
    const int cw = winner_or_throw(m);
    const double log_term = std::log(1.0 / delta);

    HardnessParts parts;
    for (int i = 0; i < k; ++i) {
        if (i == cw) continue;
        const RowStats st = row_stats(m, i);
        if (s[i] < 1 || s[i] > st.k_neg)
            throw InvalidParameterError("hardness: invalid sparsity for arm " +
                                        std::to_string(i + 1));
        const double g = st.ordered_gaps[s[i] - 1];
        const double inv = inv_sq(g);
        parts.h_certify += log_term * inv;
        const double explore = static_cast<double>(k) * inv / s[i];
        parts.h_explore0 += explore;
        parts.h_explore1 = std::max(parts.h_explore1, explore);
    }
    parts.h_explore = log_term * parts.h_explore1 + parts.h_explore0;
    return parts;
}

SparsityResult optimal_sparsity(const GapMatrix& m, double delta, double cap_fraction) {
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidParameterError("optimal_sparsity: delta must lie in (0, 1)");
    if (!(cap_fraction > 0.0))
        throw InvalidParameterError("optimal_sparsity: cap_fraction must be positive");
    const int k = m.k();
    const int cw = winner_or_throw(m);
    const int cap = std::max(1, static_cast<int>(std::floor(cap_fraction * k)));
    const double log_term = std::log(1.0 / delta);

    struct Row {
        int arm;
        int cap;
        std::vector<double> inv;      // 1/gap^2 at order statistic s (1-based)
        std::vector<double> explore;  // K * inv / s
    };
    std::vector<Row> rows;
    for (int i = 0; i < k; ++i) {
        if (i == cw) continue;
        const RowStats st = row_stats(m, i);
        if (st.k_neg == 0)
            throw InstanceDegenerateError("optimal_sparsity: row " + std::to_string(i + 1) +
                                          " has no negative entry");
        Row row;
        row.arm = i;
        row.cap = std::min(st.k_neg, cap);
        for (int s = 1; s <= row.cap; ++s) {
            const double inv = inv_sq(st.ordered_gaps[s - 1]);
            row.inv.push_back(inv);
            row.explore.push_back(static_cast<double>(k) * inv / s);
        }
        rows.push_back(std::move(row));
    }

    // Candidate ceilings for the max term; the optimum's own max is always
    // among them, so scanning them and re-minimizing each row separably is
    // exact.
    std::vector<double> thresholds;
    for (const auto& row : rows)
        thresholds.insert(thresholds.end(), row.explore.begin(), row.explore.end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::vector<int> best_s;
    double best_value = kInf;
    std::vector<int> s_vec(k, 0);
    for (const double t : thresholds) {
        bool feasible = true;
        for (const auto& row : rows) {
            int pick = -1;
            double pick_g = kInf;
            for (int s = 1; s <= row.cap; ++s) {
                if (row.explore[s - 1] > t) continue;
                const double g = log_term * row.inv[s - 1] + row.explore[s - 1];
                if (g < pick_g) {
                    pick_g = g;
                    pick = s;
                }
            }
            if (pick < 0) {
                feasible = false;
                break;
            }
            s_vec[row.arm] = pick;
        }
        if (!feasible) continue;
        const double value = hardness(m, s_vec, delta).total();
        if (value < best_value ||
            (value == best_value && std::lexicographical_compare(
                                        s_vec.begin(), s_vec.end(),
                                        best_s.begin(), best_s.end()))) {
            best_value = value;
            best_s = s_vec;
        }
    }
    return SparsityResult{best_s, best_value};
}

double lb_certify(const GapMatrix& m, double delta) {
    if (!(delta > 0.0 && delta < 0.25))
        throw InvalidParameterError("lb_certify: requires 0 < delta < 1/4");
    const int cw = winner_or_throw(m);
    double sum = 0.0;
    for (int i = 0; i < m.k(); ++i) {
        if (i == cw) continue;
        sum += inv_sq(row_stats(m, i).ordered_gaps.front());
    }
    return 0.25 * std::log(1.0 / (4.0 * delta)) * sum;
}

double lb_certify_quantile(const GapMatrix& m, double delta) {
    if (!(delta > 0.0 && delta < 1.0 / 6.0))
        throw InvalidParameterError("lb_certify_quantile: requires 0 < delta < 1/6");
    const int cw = winner_or_throw(m);
    double sum = 0.0;
    for (int i = 0; i < m.k(); ++i) {
        if (i == cw) continue;
        sum += inv_sq(row_stats(m, i).ordered_gaps.front());
    }
    return std::log(1.0 / (6.0 * delta)) * sum / 3.0;
}

double lb_explore(const GapMatrix& m, double delta) {
    if (!(delta > 0.0 && delta <= 1.0 / 12.0))
        throw InvalidParameterError("lb_explore: requires 0 < delta <= 1/12");
    const int cw = winner_or_throw(m);
    const int k = m.k();
    double max_ratio = 0.0;
    double sum_ratio = 0.0;
    for (int i = 0; i < k; ++i) {
        if (i == cw) continue;
        const RowStats st = row_stats(m, i);
        const double ratio = st.k_neg == 0 ? kInf : st.k_neg / st.neg_norm_sq;
        max_ratio = std::max(max_ratio, ratio);
        sum_ratio += ratio;
    }
    const double term1 = max_ratio * std::log(1.0 / (6.0 * delta)) / 3.0;
    const double term2 = sum_ratio / (37.0 * std::log(2.0 * k));
    return std::max(term1, term2);
}

HardnessProfile hardness_profile(const GapMatrix& m, double delta, double cap_fraction) {
    HardnessProfile p;
    p.delta = delta;
    p.h_cw = h_cw(m, delta);
    const auto opt = optimal_sparsity(m, delta, cap_fraction);
    p.s_star = opt.s_star;
    p.rhs_min = opt.rhs_min;
    const auto parts = hardness(m, opt.s_star, delta);
    p.h_certify = parts.h_certify;
    p.h_explore0 = parts.h_explore0;
    p.h_explore1 = parts.h_explore1;
    p.h_explore = parts.h_explore;
    p.lb_certify = delta < 0.25 ? lb_certify(m, delta)
                                : std::numeric_limits<double>::quiet_NaN();
    p.lb_explore = delta <= 1.0 / 12.0 ? lb_explore(m, delta)
                                       : std::numeric_limits<double>::quiet_NaN();
    return p;
}

} // namespace condorcet
