#pragma once

#include <stdexcept>
#include <string>

namespace agboost {

/// A computed quantity left its mathematically guaranteed range.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed or unusable input data (CSV, MDP files, datasets).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite example source ran out of draws.
class SourceExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace agboost
