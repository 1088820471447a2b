#pragma once

#include "qubitswap/format.hpp"
#include "qubitswap/oracle.hpp"
#include "qubitswap/pool.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qubitswap::sim {

// ---------------------------------------------------------------- config --

struct ConstantPathSpec {
    double price;
};

/// Piecewise-constant breakpoints; the first must be at step 0.
struct SchedulePathSpec {
    std::vector<oracle::PricePoint> points;
};

struct GbmPathSpec {
    std::optional<double> initial_price; ///< defaults to the scenario p0
    double mu = 0.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

struct ReplayPathSpec {
    std::string file; ///< resolved relative to the config file
};

using PathSpec = std::variant<ConstantPathSpec, SchedulePathSpec, GbmPathSpec, ReplayPathSpec>;

/// Noise trades: each step draws `trades_per_step` trades with a fair-coin
/// direction and a size fraction exp(log_mean + log_sigma N(0,1)) of the
/// input-side reserve, capped at max_fraction.
struct NoiseTraderSpec {
    std::int64_t trades_per_step = 1;
    double log_mean = -5.0;
    double log_sigma = 1.0;
    double max_fraction = 0.1;
    std::uint64_t seed = 0;
};

struct AgentSpec {
    bool arbitrageur = true;
    std::optional<NoiseTraderSpec> noise;
};

struct ScenarioConfig {
    double x0 = 1.0;
    double y0 = 1.0;
    double p0 = 1.0;
    std::vector<double> z_values;
    std::int64_t steps = 1;
    PathSpec price_path = ConstantPathSpec{1.0};
    AgentSpec agents;
    std::string base_dir; ///< directory used to resolve relative replay files
};

/// Parses the JSON scenario document. Unknown fields are rejected; errors
/// name the field path or the JSON line/column.
ScenarioConfig parse_scenario_json(const std::string& text, const std::string& base_dir = ".");
ScenarioConfig load_scenario_file(const std::string& path);

void validate(const ScenarioConfig& config);

/// Oracle path of `config.steps` steps.
oracle::PricePath build_path(const ScenarioConfig& config);

// --------------------------------------------------------------- metrics --

struct StepMetrics {
    std::int64_t step;
    double oracle_price;
    double spot_price;
    double x;
    double y;
    double pool_value; ///< x + y / p, X units
    double hold_value; ///< x0 + y0 / p, X units
    double il_relative;
    double last_slippage_cost;
    double cumulative_volume; ///< X-side volume of all executed trades

    friend bool operator==(const StepMetrics&, const StepMetrics&) = default;
};

struct RunResult {
    double z;
    std::vector<StepMetrics> steps;
    std::int64_t trades = 0;
    std::int64_t skipped_trades = 0;
    std::int64_t clamped_trades = 0;
};

/// Column names of StepMetrics, in declaration order.
const std::vector<std::string>& step_metric_columns();
Table metrics_table(const RunResult& run);

/// Drives one pool per z through the oracle path. Per step: oracle update,
/// arbitrage (skipped at z = 1), noise trades, record. Infeasible trades
/// are skipped and counted. Each z runs independently; results are ordered
/// as config.z_values.
std::vector<RunResult> run_scenario(const ScenarioConfig& config);

RunResult run_single(const ScenarioConfig& config, const oracle::PricePath& path, MixParameter z);

// ---------------------------------------------------------- reserve curve --

struct CurveRow {
    double z;
    double x;
    std::optional<double> y; ///< empty when x is outside the curve's domain
};

/// Either a fixed curve constant (with the oracle price it is paired with)
/// or an anchor point every curve is forced through.
struct FixedK {
    double k;
    double p = 1.0;
};
struct AnchorPoint {
    double x;
    double y;
    double p;
};
using CurveSpec = std::variant<FixedK, AnchorPoint>;

std::vector<CurveRow> sweep_reserve_curve(const CurveSpec& spec, const std::vector<double>& z_values,
                                          const std::vector<double>& x_grid);

} // namespace qubitswap::sim
