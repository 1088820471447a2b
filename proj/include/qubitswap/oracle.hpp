#pragma once

#include "qubitswap/pool.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qubitswap::oracle {

enum class PathSource { Constant, Schedule, Gbm, Replay };

std::string_view to_string(PathSource s);

struct PricePoint {
    std::int64_t step;
    double price;

    friend bool operator==(const PricePoint&, const PricePoint&) = default;
};

/// Oracle prices indexed by step. Steps start at 0 and strictly increase;
/// between listed steps the last price holds.
class PricePath {
public:
    PricePath(std::vector<PricePoint> points, PathSource source);

    const std::vector<PricePoint>& points() const noexcept { return points_; }
    PathSource source() const noexcept { return source_; }
    std::size_t size() const noexcept { return points_.size(); }

    /// Price in force at `step` (piecewise constant).
    double price_at(std::int64_t step) const;

    std::vector<double> prices() const;

private:
    std::vector<PricePoint> points_;
    PathSource source_;
};

struct GbmParams {
    double initial_price;
    double mu;    ///< drift per step
    double sigma; ///< volatility per sqrt(step)
    std::int64_t steps;
    std::uint64_t seed;
};

/// Standard normal draws from std::mt19937_64 via the Marsaglia polar
/// method. The engine is fully specified by the standard; the transform is
/// spelled out here because std::normal_distribution is not portable.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double next();
    /// Uniform in [0, 1) from the top 53 bits of one engine draw.
    double uniform();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

PricePath constant_path(double price, std::int64_t steps);

/// Expands breakpoints (first at step 0) into `steps` consecutive prices.
PricePath schedule_path(const std::vector<PricePoint>& breakpoints, std::int64_t steps);

/// p[0] = initial_price, p[t+1] = p[t] exp((mu - sigma^2/2) + sigma N(0,1)).
PricePath gbm_path(const GbmParams& params);

/// Re-anchors the curve at the current reserves under the new oracle price.
/// Reserves are unchanged; at z = 0 k is kept as is (p does not enter the curve).
PoolState apply_oracle_update(const PoolState& state, OraclePrice p_new);

/// Replay format: header `step,price`, one row per step. Errors name the
/// offending line.
PricePath read_price_csv(std::istream& in);
PricePath read_price_csv_file(const std::string& path);
void write_price_csv(std::ostream& out, const PricePath& path);

} // namespace qubitswap::oracle
