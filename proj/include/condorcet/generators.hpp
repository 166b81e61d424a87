#pragma once
#include <functional>
#include <vector>

#include "condorcet/matrix.hpp"
#include "condorcet/rng.hpp"

namespace condorcet {

// Total-order instance: row 1 equals `deltas`, and below the diagonal row i
// repeats -deltas[i]. Arm 1 attains every row's most negative entry, i.e. the
// winner is the strongest opponent of every suboptimal arm.
// Requires deltas[0] == 0 and deltas[i] in (0, 1/2], nondecreasing for i >= 1.
GapMatrix gen_total_order(const std::vector<double>& deltas);

// Two-half block instance with planted per-row sparsity. Row 1 is
// (0, eps, ..., eps); every other row i carries exactly sparsities[i] entries
// equal to -deltas[i] and all its remaining negative entries equal -eps.
// First-half rows plant into the second half; second-half rows plant
// cyclically within their half. Requires K a multiple of 8, deltas[0] == 0,
// deltas[i] in (0, 1/4), sparsities[0] == 0, 1 <= s_i <= K/4, and
// 0 < eps < min_i deltas[i] so the planted sparsity is the effective one.
GapMatrix gen_block_minimax(const std::vector<double>& deltas,
                            const std::vector<int>& sparsities, double epsilon);

// Replaces every entry <= 0 in row k by epsilon (column mirrored). For
// epsilon > 0 the result's winner is k; for epsilon == 0 row k becomes
// nonnegative (weak winner).
GapMatrix lift_row(const GapMatrix& m, int k, double epsilon);

// Antisymmetric tie-break convention for zero entries; must satisfy
// f(i, j) == -f(j, i). The default (no function) assigns 0 to ties, so ties
// are never permuted.
using TieRule = std::function<int(int, int)>;

// Per-row permutation of the negative-entry positions, mirrored on columns to
// keep skew-symmetry. perms[i] must restrict to a bijection on the set
// {j : sign(i, j) == -1}; entries outside that set are ignored. Preserves,
// for every row, the multiset of nonpositive entries.
GapMatrix permute_negatives(const GapMatrix& m,
                            const std::vector<std::vector<int>>& perms,
                            const TieRule& tie_rule = nullptr);

std::vector<std::vector<int>> identity_perms(int k);
// uniformly random bijections on each row's negative set (identity on ties)
std::vector<std::vector<int>> random_perms(const GapMatrix& m, Rng& rng,
                                           const TieRule& tie_rule = nullptr);

// Random instance with a guaranteed winner at arm 1: row 1 drawn from
// [lo, hi], remaining upper triangle from [-hi, hi]. Requires
// 0 < lo <= hi <= 1/4.
GapMatrix gen_random_cw(int k, double lo, double hi, Rng& rng);

} // namespace condorcet
