#pragma once
#include <optional>
#include <string>
#include <vector>

namespace condorcet {

// Skew-symmetric matrix of pairwise winning-probability offsets. Entry (i, j)
// is the probability that i beats j, minus 1/2. Arms are 0-based internally;
// all file and report output is 1-based.
class GapMatrix {
public:
    GapMatrix() = default;
    explicit GapMatrix(int k) : k_(k), gaps_(static_cast<std::size_t>(k) * k, 0.0) {}

    int k() const { return k_; }

    double at(int i, int j) const { return gaps_[idx(i, j)]; }
    double& at(int i, int j) { return gaps_[idx(i, j)]; }

    // sets (i, j) and mirrors (j, i) = -v
    void set_pair(int i, int j, double v) {
        gaps_[idx(i, j)] = v;
        gaps_[idx(j, i)] = -v;
    }

    const std::vector<double>& raw() const { return gaps_; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * k_ + j;
    }

    int k_ = 0;
    std::vector<double> gaps_;
};

struct ValidationReport {
    bool skew_symmetric = false;
    bool in_range = false;
    std::optional<int> cw;       // present iff exactly one strictly positive row
    bool cw_unique = false;
    std::vector<int> weak_cws;   // rows with all off-diagonal entries >= 0
};

// Never throws; malformed matrices yield failing flags.
ValidationReport validate(const GapMatrix& m);

// File format: {"k": int, "gaps": [[...], ...]}. The loader checks
// skew-symmetry to absolute tolerance 1e-12, then antisymmetrizes exactly
// via gaps <- (gaps - transpose)/2.
GapMatrix load_matrix_json(const std::string& path);
GapMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const GapMatrix& m);
void save_matrix_json(const GapMatrix& m, const std::string& path);

} // namespace condorcet
