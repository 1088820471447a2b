#pragma once

#include <stdexcept>
#include <string>

namespace qubitswap {

/// Non-finite, non-positive, or otherwise out-of-domain input.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A reserve would cross the solvency boundary. `limit()` is the open upper
/// bound that was violated: an X reserve for curve evaluation, or the largest
/// feasible trade amount for swaps.
class InsolvencyError : public std::runtime_error {
public:
    InsolvencyError(const std::string& what, double limit)
        : std::runtime_error(what), limit_(limit) {}

    double limit() const noexcept { return limit_; }

private:
    double limit_;
};

/// Operation has no meaning for this pool configuration (e.g. rebalancing at z = 1).
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The root finder failed to converge. Never expected on valid inputs.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qubitswap
