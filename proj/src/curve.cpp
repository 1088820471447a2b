#include "qubitswap/curve.hpp"

#include <limits>
#include <string>

namespace qubitswap::curve {
namespace {

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
    }
}

void require_solvent(double k, double x, OraclePrice p, MixParameter z) {
    require_positive(k, "curve constant k");
    require_positive(x, "x reserve");
    const double bound = max_x_bound(k, p, z);
    if (x >= bound) {
        throw InsolvencyError("x reserve " + std::to_string(x) + " is at or beyond the solvency bound " +
                                  std::to_string(bound),
                              bound);
    }
}

} // namespace

double pow_z_minus_one(double x, MixParameter z) {
    if (z.is_constant_product()) {
        return 1.0 / x;
    }
    if (z.is_pure_oracle()) {
        return 1.0;
    }
    return std::exp((z.value() - 1.0) * std::log(x));
}

double anchor_k(double x, double y, OraclePrice p, MixParameter z) {
    require_positive(x, "x reserve");
    require_positive(y, "y reserve");
    if (z.is_constant_product()) {
        return x * y;
    }
    // x^(1-z) = 1 / x^(z-1)
    return (y + oracle_slope(p, z) * x) / pow_z_minus_one(x, z);
}

double max_x_bound(double k, OraclePrice p, MixParameter z) {
    require_positive(k, "curve constant k");
    if (z.is_constant_product()) {
        return std::numeric_limits<double>::infinity();
    }
    if (z.is_pure_oracle()) {
        return k / p.value();
    }
    const double zv = z.value();
    return std::pow(k * (2.0 - zv) / (zv * p.value()), 1.0 / (2.0 - zv));
}

double reserve_y(double k, double x, OraclePrice p, MixParameter z) {
    require_solvent(k, x, p, z);
    return k * pow_z_minus_one(x, z) - oracle_slope(p, z) * x;
}

double dy_dx(double k, double x, OraclePrice p, MixParameter z) {
    require_positive(k, "curve constant k");
    require_positive(x, "x reserve");
    if (z.is_pure_oracle()) {
        return -p.value();
    }
    const double zv = z.value();
    return k * (zv - 1.0) * pow_z_minus_one(x, z) / x - oracle_slope(p, z);
}

double d2y_dx2(double k, double x, OraclePrice /*p*/, MixParameter z) {
    require_positive(k, "curve constant k");
    require_positive(x, "x reserve");
    if (z.is_pure_oracle()) {
        return 0.0;
    }
    const double zv = z.value();
    return k * (zv - 1.0) * (zv - 2.0) * pow_z_minus_one(x, z) / (x * x);
}

} // namespace qubitswap::curve
