#pragma once

#include "qubitswap/errors.hpp"

#include <cmath>
#include <string>

namespace qubitswap {

/// Blend weight between the reserve-ratio price (z = 0) and the oracle (z = 1).
class MixParameter {
public:
    explicit MixParameter(double z) : z_(z) {
        if (!std::isfinite(z) || z < 0.0 || z > 1.0) {
            throw DomainError("mix parameter z must lie in [0, 1], got " + std::to_string(z));
        }
    }

    double value() const noexcept { return z_; }
    bool is_constant_product() const noexcept { return z_ == 0.0; }
    bool is_pure_oracle() const noexcept { return z_ == 1.0; }

    friend bool operator==(MixParameter, MixParameter) = default;

private:
    double z_;
};

/// Oracle price of X in units of Y (Y per X).
class OraclePrice {
public:
    explicit OraclePrice(double p) : p_(p) {
        if (!std::isfinite(p) || p <= 0.0) {
            throw DomainError("oracle price must be positive and finite, got " + std::to_string(p));
        }
    }

    double value() const noexcept { return p_; }

    friend bool operator==(OraclePrice, OraclePrice) = default;

private:
    double p_;
};

} // namespace qubitswap
