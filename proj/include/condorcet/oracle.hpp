#pragma once
#include <cstdint>
#include <numeric>
#include <vector>

#include "condorcet/errors.hpp"
#include "condorcet/matrix.hpp"
#include "condorcet/rng.hpp"

namespace condorcet {

// Stateful duel sampler around a GapMatrix. Counts every query per ordered
// pair; counts only ever increase and total == sum of counts. Single-owner
// mutable state: one oracle per replicate.
class DuelOracle {
public:
    explicit DuelOracle(GapMatrix m) : matrix_(std::move(m)),
        counts_(static_cast<std::size_t>(matrix_.k()) * matrix_.k(), 0), total_(0) {}

    int k() const { return matrix_.k(); }
    const GapMatrix& matrix() const { return matrix_; }

    // returns 1 with probability 1/2 + gap(i, j); charges exactly one query
    int sample_duel(int i, int j, Rng& rng) {
        const int n = matrix_.k();
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw InvalidQueryError("sample_duel: invalid pair (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
        ++counts_[static_cast<std::size_t>(i) * n + j];
        ++total_;
        return rng.bernoulli(0.5 + matrix_.at(i, j)) ? 1 : 0;
    }

    std::uint64_t count(int i, int j) const {
        return counts_[static_cast<std::size_t>(i) * matrix_.k() + j];
    }
    std::uint64_t pair_count(int i, int j) const { return count(i, j) + count(j, i); }
    std::uint64_t total() const { return total_; }

private:
    GapMatrix matrix_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_;
};

} // namespace condorcet
