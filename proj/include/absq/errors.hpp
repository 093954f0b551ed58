#pragma once

#include <stdexcept>
#include <string>

namespace absq {

/// Refusal to run an exhaustive operation whose state space exceeds the
/// guard limit. Distinct from invalid arguments so callers can offer
/// a force override.
class SizeGuardError : public std::runtime_error {
public:
    explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature failed to converge within its evaluation budget.
class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Two supposedly-equal evaluation routes disagreed.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace absq
