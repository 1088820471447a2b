#include "qubitswap/pool.hpp"

#include "qubitswap/curve.hpp"

#include <string>

namespace qubitswap {
namespace {

double residual(double x, double y, OraclePrice p, MixParameter z, double k) {
    const double scale = k * curve::pow_z_minus_one(x, z);
    return std::abs(y - (scale - curve::oracle_slope(p, z) * x)) / scale;
}

} // namespace

PoolState PoolState::anchored(double x, double y, OraclePrice p, MixParameter z) {
    return PoolState(x, y, p, z, curve::anchor_k(x, y, p, z));
}

PoolState PoolState::on_curve(double x, double y, OraclePrice p, MixParameter z, double k) {
    if (!std::isfinite(x) || x <= 0.0 || !std::isfinite(y) || y <= 0.0) {
        throw DomainError("pool reserves must be positive and finite");
    }
    if (!std::isfinite(k) || k <= 0.0) {
        throw DomainError("curve constant must be positive and finite");
    }
    const double r = residual(x, y, p, z, k);
    if (!(r <= kCurveTolerance)) {
        throw DomainError("reserves (" + std::to_string(x) + ", " + std::to_string(y) +
                          ") are off the anchored curve, relative residual " + std::to_string(r));
    }
    return PoolState(x, y, p, z, k);
}

double PoolState::curve_residual() const {
    return residual(x_, y_, p_, z_, k_);
}

double spot_price(const PoolState& state) {
    const double z = state.z().value();
    return (1.0 - z) * state.y() / state.x() + z * state.p().value();
}

} // namespace qubitswap
