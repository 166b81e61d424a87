#include "condorcet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "condorcet/errors.hpp"

namespace condorcet {

namespace {

void check_delta_vector(const std::vector<double>& deltas, bool require_sorted,
                        double max_delta) {
    const int k = static_cast<int>(deltas.size());
    if (k < 2) throw InvalidParameterError("deltas: need at least 2 arms");
    if (deltas[0] != 0.0) throw InvalidParameterError("deltas[1] must be 0");
    for (int i = 1; i < k; ++i) {
        if (!(deltas[i] > 0.0 && deltas[i] <= max_delta))
            throw InvalidParameterError("deltas out of range for i >= 2");
        if (require_sorted && i >= 2 && deltas[i] < deltas[i - 1])
            throw InvalidParameterError("deltas must be nondecreasing for i >= 2");
    }
}

} // namespace

GapMatrix gen_total_order(const std::vector<double>& deltas) {
    check_delta_vector(deltas, /*require_sorted=*/true, /*max_delta=*/0.5);
    const int k = static_cast<int>(deltas.size());
    GapMatrix m(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            m.set_pair(i, j, deltas[j]);
    return m;
}

GapMatrix gen_block_minimax(const std::vector<double>& deltas,
                            const std::vector<int>& sparsities, double epsilon) {
    const int k = static_cast<int>(deltas.size());
    if (k < 8 || k % 8 != 0)
        throw InvalidParameterError("gen_block_minimax: K must be a positive multiple of 8");
    check_delta_vector(deltas, /*require_sorted=*/false, /*max_delta=*/0.25);
    if (static_cast<int>(sparsities.size()) != k)
        throw InvalidParameterError("gen_block_minimax: sparsities size mismatch");
    if (sparsities[0] != 0)
        throw InvalidParameterError("gen_block_minimax: sparsities[1] must be 0");
    for (int i = 1; i < k; ++i)
        if (sparsities[i] < 1 || sparsities[i] > k / 4)
            throw InvalidParameterError("gen_block_minimax: sparsity out of range [1, K/4]");
    double min_delta = 1.0;
    for (int i = 1; i < k; ++i) min_delta = std::min(min_delta, deltas[i]);
    if (!(epsilon > 0.0 && epsilon < min_delta))
        throw InvalidParameterError("gen_block_minimax: need 0 < epsilon < min delta");

    const int d = k / 2;
    GapMatrix m(k);
    // -1 free, 0 assigned epsilon-scale, 1 assigned planted
    std::vector<int> assigned(static_cast<std::size_t>(k) * k, -1);
    auto plant = [&](int i, int j, double v) {
        // one value per unordered pair; collisions would corrupt a row multiset
        if (assigned[static_cast<std::size_t>(i) * k + j] != -1)
            throw InvalidParameterError("gen_block_minimax: internal pair collision");
        assigned[static_cast<std::size_t>(i) * k + j] = 1;
        assigned[static_cast<std::size_t>(j) * k + i] = 1;
        m.set_pair(i, j, v);
    };

    // row 1: winner beats everyone at the epsilon scale
    for (int j = 1; j < k; ++j) {
        m.set_pair(0, j, epsilon);
        assigned[j] = 0;
        assigned[static_cast<std::size_t>(j) * k] = 0;
    }

    // first-half rows plant against the leading second-half arms
    for (int i = 1; i < d; ++i)
        for (int t = 0; t < sparsities[i]; ++t) plant(i, d + t, -deltas[i]);

    // second-half rows plant cyclically ahead within their half; the
    // antipodal slot (distance d/2) belongs to the lower position, and the
    // upper one redirects that single entry against first-half arm 2, whose
    // pair is free because first-half plantings stop before column d + d/2
    for (int p = 0; p < d; ++p) {
        const int arm = d + p;
        for (int t = 1; t <= sparsities[arm]; ++t) {
            if (2 * t == d && p >= d / 2) {
                plant(arm, 1, -deltas[arm]);
            } else {
                plant(arm, d + (p + t) % d, -deltas[arm]);
            }
        }
    }

    // epsilon fill on untouched pairs: within each half the lower index wins;
    // across halves the first half loses
    for (int i = 1; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (assigned[static_cast<std::size_t>(i) * k + j] != -1) continue;
            double v;
            if (j < d) {
                v = epsilon;                        // first-half internal order
            } else if (i < d) {
                v = -epsilon;                       // first half loses across halves
            } else {
                const int t = j - i;                // cyclic distance within second half
                v = (t <= d / 2) ? -epsilon : epsilon;
            }
            m.set_pair(i, j, v);
        }
    }
    return m;
}

GapMatrix lift_row(const GapMatrix& m, int k, double epsilon) {
    const int n = m.k();
    if (k < 0 || k >= n) throw InvalidParameterError("lift_row: arm index out of range");
    if (epsilon < 0.0) throw InvalidParameterError("lift_row: epsilon must be >= 0");
    GapMatrix out = m;
    for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        if (out.at(k, j) <= 0.0) out.set_pair(k, j, epsilon);
    }
    return out;
}

namespace {

int sign_of(const GapMatrix& m, int i, int j, const TieRule& tie_rule) {
    const double v = m.at(i, j);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    if (!tie_rule) return 0;
    const int s = tie_rule(i, j);
    if (s < -1 || s > 1 || s != -tie_rule(j, i))
        throw InvalidParameterError("permute_negatives: tie rule is not antisymmetric");
    return s;
}

std::vector<std::vector<int>> negative_sets(const GapMatrix& m, const TieRule& tie_rule) {
    const int k = m.k();
    std::vector<std::vector<int>> neg(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (j != i && sign_of(m, i, j, tie_rule) == -1) neg[i].push_back(j);
    return neg;
}

} // namespace

GapMatrix permute_negatives(const GapMatrix& m,
                            const std::vector<std::vector<int>>& perms,
                            const TieRule& tie_rule) {
    const int k = m.k();
    if (static_cast<int>(perms.size()) != k)
        throw InvalidParameterError("permute_negatives: perms size mismatch");
    const auto neg = negative_sets(m, tie_rule);

    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(perms[i].size()) != k)
            throw InvalidParameterError("permute_negatives: perms[i] must have size K");
        std::vector<int> image;
        image.reserve(neg[i].size());
        for (int j : neg[i]) image.push_back(perms[i][j]);
        std::vector<int> sorted_image = image;
        std::sort(sorted_image.begin(), sorted_image.end());
        if (sorted_image != neg[i])  // neg[i] is built in ascending order
            throw InvalidParameterError(
                "permute_negatives: perms[" + std::to_string(i + 1) +
                "] is not a bijection on the negative set");
    }

    GapMatrix out(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const int s = sign_of(m, i, j, tie_rule);
            if (s == -1)
                out.at(i, j) = m.at(i, perms[i][j]);
            else if (s == 1)
                out.at(i, j) = -m.at(j, perms[j][i]);
            else
                out.at(i, j) = m.at(i, j);
        }
    }
    return out;
}

std::vector<std::vector<int>> identity_perms(int k) {
    std::vector<std::vector<int>> perms(k, std::vector<int>(k));
    for (auto& p : perms)
        for (int j = 0; j < k; ++j) p[j] = j;
    return perms;
}

std::vector<std::vector<int>> random_perms(const GapMatrix& m, Rng& rng,
                                           const TieRule& tie_rule) {
    const int k = m.k();
    auto perms = identity_perms(k);
    const auto neg = negative_sets(m, tie_rule);
    for (int i = 0; i < k; ++i) {
        std::vector<int> shuffled = neg[i];
        for (int a = static_cast<int>(shuffled.size()) - 1; a > 0; --a)
            std::swap(shuffled[a], shuffled[rng.uniform_below(a + 1)]);
        for (std::size_t a = 0; a < shuffled.size(); ++a) perms[i][neg[i][a]] = shuffled[a];
    }
    return perms;
}

GapMatrix gen_random_cw(int k, double lo, double hi, Rng& rng) {
    if (k < 2) throw InvalidParameterError("gen_random_cw: need k >= 2");
    if (!(lo > 0.0 && lo <= hi && hi <= 0.25))
        throw InvalidParameterError("gen_random_cw: need 0 < lo <= hi <= 1/4");
    GapMatrix m(k);
    for (int j = 1; j < k; ++j) m.set_pair(0, j, rng.uniform(lo, hi));
    for (int i = 1; i < k; ++i)
        for (int j = i + 1; j < k; ++j) m.set_pair(i, j, rng.uniform(-hi, hi));
    const auto report = validate(m);
    if (!report.cw || *report.cw != 0)
        throw InvalidParameterError("gen_random_cw: construction failed to produce a winner");
    return m;
}

} // namespace condorcet
