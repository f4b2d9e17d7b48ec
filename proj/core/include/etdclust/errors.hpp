#pragma once

#include <stdexcept>
#include <string>

namespace etdclust {

/// Malformed or inconsistent input data (CSV parse failures, id mismatches, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration file contents (unknown keys, out-of-range values, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (factorization breakdown, non-convergent special function, ...).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace etdclust
