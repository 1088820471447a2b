#pragma once

#include "qubitswap/types.hpp"

namespace qubitswap {

/// Immutable snapshot of a pool: reserves, oracle price, mix parameter and
/// the cached curve constant. A valid PoolState always lies on its curve.
class PoolState {
public:
    /// Relative tolerance of the on-curve check, measured against k x^(z-1).
    static constexpr double kCurveTolerance = 1e-12;

    /// Anchors a fresh curve through (x, y).
    static PoolState anchored(double x, double y, OraclePrice p, MixParameter z);

    /// A point on an existing curve. Throws DomainError if (x, y) is not on
    /// the curve (k, p, z) within kCurveTolerance.
    static PoolState on_curve(double x, double y, OraclePrice p, MixParameter z, double k);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    OraclePrice p() const noexcept { return p_; }
    MixParameter z() const noexcept { return z_; }
    double k() const noexcept { return k_; }

    /// |y - y(x)| / (k x^(z-1)).
    double curve_residual() const;

    friend bool operator==(const PoolState&, const PoolState&) = default;

private:
    PoolState(double x, double y, OraclePrice p, MixParameter z, double k)
        : x_(x), y_(y), p_(p), z_(z), k_(k) {}

    double x_;
    double y_;
    OraclePrice p_;
    MixParameter z_;
    double k_;
};

/// (1 - z) y / x + z p, in Y per X.
double spot_price(const PoolState& state);

} // namespace qubitswap
