#pragma once

#include <stdexcept>
#include <string>

namespace gausscrit {

/// Raised when an input lies outside the domain of an operation
/// (exponent ranges, non-admissible pairs, malformed parameters).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a numerical procedure fails to reach its requested tolerance
/// and the caller asked for a hard failure instead of a flagged result.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when two independent evaluation routes of the same quantity disagree.
/// This always indicates a bug, never bad input.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gausscrit
