#include "condorcet/matrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet {

ValidationReport validate(const GapMatrix& m) {
    ValidationReport r;
    const int k = m.k();
    if (k < 2) return r;

    r.skew_symmetric = true;
    r.in_range = true;
    for (int i = 0; i < k; ++i) {
        if (m.at(i, i) != 0.0) r.skew_symmetric = false;
        for (int j = 0; j < k; ++j) {
            if (m.at(i, j) + m.at(j, i) != 0.0) r.skew_symmetric = false;
            if (std::abs(m.at(i, j)) > 0.5) r.in_range = false;
        }
    }

    std::vector<int> strict_rows;
    for (int i = 0; i < k; ++i) {
        bool strict = true;
        bool weak = true;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            if (m.at(i, j) <= 0.0) strict = false;
            if (m.at(i, j) < 0.0) weak = false;
        }
        if (strict) strict_rows.push_back(i);
        if (weak) r.weak_cws.push_back(i);
    }
    r.cw_unique = strict_rows.size() == 1;
    if (r.cw_unique) r.cw = strict_rows.front();
    return r;
}

GapMatrix parse_matrix_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("matrix JSON parse error: ") + e.what());
    }
    if (!j.contains("k") || !j.contains("gaps"))
        throw ConfigError("matrix JSON must contain \"k\" and \"gaps\"");
    const int k = j.at("k").get<int>();
    if (k < 2) throw ConfigError("matrix JSON: k must be >= 2");
    const auto& rows = j.at("gaps");
    if (!rows.is_array() || static_cast<int>(rows.size()) != k)
        throw ConfigError("matrix JSON: gaps must be a k x k array");

    GapMatrix m(k);
    for (int i = 0; i < k; ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != k)
            throw ConfigError("matrix JSON: gaps must be a k x k array");
        for (int c = 0; c < k; ++c) m.at(i, c) = row.at(c).get<double>();
    }

    for (int i = 0; i < k; ++i)
        for (int c = 0; c < k; ++c)
            if (std::abs(m.at(i, c) + m.at(c, i)) > 1e-12)
                throw ConfigError("matrix JSON: skew-symmetry violated beyond 1e-12 at (" +
                                  std::to_string(i + 1) + ", " + std::to_string(c + 1) + ")");

    // exact antisymmetrization: gaps <- (gaps - transpose)/2
    for (int i = 0; i < k; ++i) {
        m.at(i, i) = 0.0;
        for (int c = i + 1; c < k; ++c) {
            const double v = (m.at(i, c) - m.at(c, i)) / 2.0;
            m.set_pair(i, c, v);
        }
    }
    return m;
}

GapMatrix load_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix_json(ss.str());
}

std::string matrix_to_json(const GapMatrix& m) {
    nlohmann::ordered_json j;
    j["k"] = m.k();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.k(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int c = 0; c < m.k(); ++c) row.push_back(m.at(i, c));
        rows.push_back(row);
    }
    j["gaps"] = rows;
    return j.dump(2) + "\n";
}

void save_matrix_json(const GapMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write matrix file: " + path);
    out << matrix_to_json(m);
    if (!out) throw IoError("write failed: " + path);
}

} // namespace condorcet
