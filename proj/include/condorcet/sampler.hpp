#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "condorcet/oracle.hpp"
#include "condorcet/rng.hpp"

namespace condorcet {

// Bandit view used by the search subroutines: n_arms() abstract arms whose
// draw() returns a value in [-1/2, 1/2] with a stationary per-arm mean.
class ArmSampler {
public:
    virtual ~ArmSampler() = default;
    virtual int n_arms() const = 0;
    virtual double draw(int arm, Rng& rng) = 0;
};

// Each abstract arm is the duel (base, opponents[a]); draw returns
// (outcome - 1/2) so the arm mean is gap(base, opponents[a]). Every draw
// charges the backing oracle exactly one query.
class DuelRowSampler final : public ArmSampler {
public:
    DuelRowSampler(DuelOracle& oracle, int base, std::vector<int> opponents)
        : oracle_(oracle), base_(base), opponents_(std::move(opponents)) {}

    int n_arms() const override { return static_cast<int>(opponents_.size()); }

    double draw(int arm, Rng& rng) override {
        return oracle_.sample_duel(base_, opponents_[arm], rng) - 0.5;
    }

    int opponent(int arm) const { return opponents_[arm]; }

private:
    DuelOracle& oracle_;
    int base_;
    std::vector<int> opponents_;
};

// Plain Bernoulli arms with prescribed means in [-1/2, 1/2]; used by tests
// and the quantile-routine experiments. Tracks its own draw count.
class BernoulliMeanSampler final : public ArmSampler {
public:
    explicit BernoulliMeanSampler(std::vector<double> means)
        : means_(std::move(means)) {}

    int n_arms() const override { return static_cast<int>(means_.size()); }

    double draw(int arm, Rng& rng) override {
        ++total_;
        return (rng.bernoulli(0.5 + means_[arm]) ? 1.0 : 0.0) - 0.5;
    }

    std::uint64_t total() const { return total_; }

private:
    std::vector<double> means_;
    std::uint64_t total_ = 0;
};

} // namespace condorcet
