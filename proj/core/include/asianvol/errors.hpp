#pragma once

#include <stdexcept>
#include <string>

namespace asianvol {

/// Input outside the domain of a formula (nonpositive strike, k < 1 for the
/// sinh branch, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Strike for which no formula is available (NLO away from the forward).
class UnsupportedStrike : public DomainError {
public:
    explicit UnsupportedStrike(const std::string& what) : DomainError(what) {}
};

/// Iterative solver failed to meet its tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested work exceeds a configured resource budget.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace asianvol
