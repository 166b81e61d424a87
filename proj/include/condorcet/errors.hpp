#pragma once
#include <stdexcept>
#include <string>

namespace condorcet {

struct InvalidQueryError : std::runtime_error {
    explicit InvalidQueryError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParameterError : std::runtime_error {
    explicit InvalidParameterError(const std::string& what) : std::runtime_error(what) {}
};

struct NoCondorcetWinnerError : std::runtime_error {
    explicit NoCondorcetWinnerError(const std::string& what) : std::runtime_error(what) {}
};

struct InstanceDegenerateError : std::runtime_error {
    explicit InstanceDegenerateError(const std::string& what) : std::runtime_error(what) {}
};

struct UnderbudgetError : std::runtime_error {
    explicit UnderbudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct NonterminationError : std::runtime_error {
    explicit NonterminationError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace condorcet
