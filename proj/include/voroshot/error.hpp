#pragma once

#include <stdexcept>
#include <string>

namespace voroshot {

// Error categories map 1:1 onto CLI exit codes and C API status codes:
// ConfigError -> 1, DataError -> 2, DomainError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad run configuration: missing keys, invalid grids, nonexistent files
// referenced by a config.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Bad input data: parse failures, invariant violations in a feature bank,
// episode spec incompatible with a bank.
class DataError : public Error {
public:
    using Error::Error;
};

// Numeric or mathematical domain violations: singular influence evaluation,
// zero-vector normalization, transform on nonpositive entries, degenerate
// episodes, training divergence.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace voroshot
