#pragma once

#include "qubitswap/pool.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qubitswap::test {

inline double rel_err(double actual, double expected) {
    const double scale = std::max(std::abs(expected), std::numeric_limits<double>::min());
    return std::abs(actual - expected) / scale;
}

/// Seeded generator of valid pools and trades for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    /// z in [0, 1], with the two limits drawn explicitly now and then.
    double z() {
        const double u = uniform(0.0, 1.0);
        if (u < 0.05) {
            return 0.0;
        }
        if (u < 0.10) {
            return 1.0;
        }
        return uniform(0.0, 1.0);
    }

    double z_below_one() {
        return uniform(0.0, 1.0) < 0.1 ? 0.0 : uniform(0.0, 0.99);
    }

    PoolState pool(double z) {
        return PoolState::anchored(log_uniform(0.01, 100.0), log_uniform(0.01, 100.0), OraclePrice(log_uniform(0.05, 20.0)),
                                   MixParameter(z));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace qubitswap::test
