#pragma once

// Reserve curve of the oracle-blended AMM.
//
// The pool prices X in Y as a blend of its reserve ratio and an oracle price:
//
//     -dy/dx = (1 - z) y / x + z p
//
// whose solution through a given anchor point is
//
//     y(x) = k x^(z-1) - z p x / (2 - z).
//
// z = 0 recovers the constant-product hyperbola y = k / x; z = 1 the line
// y = k - p x. For z > 0 the curve reaches y = 0 at a finite x, the solvency
// bound, and every evaluation below rejects x at or beyond it.

#include "qubitswap/types.hpp"

namespace qubitswap::curve {

/// x^(z-1), exact at the two limits z = 0 and z = 1.
double pow_z_minus_one(double x, MixParameter z);

/// Curve constant through (x, y): k = (y + z p x / (2 - z)) x^(1-z).
double anchor_k(double x, double y, OraclePrice p, MixParameter z);

/// Largest admissible X reserve (exclusive). +infinity when z = 0.
double max_x_bound(double k, OraclePrice p, MixParameter z);

/// y(x) on the curve (k, p, z). Throws InsolvencyError (limit = bound) when
/// x >= max_x_bound, DomainError for non-positive x or k.
double reserve_y(double k, double x, OraclePrice p, MixParameter z);

/// dy/dx = k (z-1) x^(z-2) - z p / (2 - z). Negative; exactly -p at z = 1.
/// The derivatives are defined for every x > 0; callers that need solvency
/// check it through reserve_y.
double dy_dx(double k, double x, OraclePrice p, MixParameter z);

/// d2y/dx2 = k (z-1)(z-2) x^(z-3). Non-negative; exactly 0 at z = 1.
double d2y_dx2(double k, double x, OraclePrice p, MixParameter z);

/// The linear coefficient z p / (2 - z) shared by the reserve function and
/// its derivative.
inline double oracle_slope(OraclePrice p, MixParameter z) {
    return z.value() * p.value() / (2.0 - z.value());
}

} // namespace qubitswap::curve
