#include "qubitswap/simulator.hpp"

#include "qubitswap/analytics.hpp"
#include "qubitswap/curve.hpp"
#include "qubitswap/swap.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>

namespace qubitswap::sim {
namespace {

// Arbitrage moves smaller than this fraction of the X reserve are skipped;
// the pool is already at the oracle price to within rounding.
constexpr double kArbitrageDust = 1e-12;

// Noise trades are capped at this fraction of the remaining distance to the
// solvency boundary.
constexpr double kSolvencyMargin = 0.5;

struct Executor {
    PoolState state;
    RunResult& run;
    double volume = 0.0;
    double last_slippage = 0.0;

    void execute(TradeDirection dir, double amount) {
        try {
            const SwapResult r = swap_exact_in(state, dir, amount);
            state = r.new_state;
            volume += dir == TradeDirection::SellX ? r.amount_in : r.amount_out;
            last_slippage = r.slippage_cost;
            ++run.trades;
        } catch (const InsolvencyError&) {
            ++run.skipped_trades;
        } catch (const DomainError&) {
            ++run.skipped_trades;
        }
    }

    void arbitrage() {
        const PoolState target = analytics::rebalance_to_oracle(state, state.p());
        const double dx = target.x() - state.x();
        if (std::abs(dx) <= kArbitrageDust * state.x()) {
            return;
        }
        if (dx > 0.0) {
            execute(TradeDirection::SellX, dx);
        } else {
            execute(TradeDirection::SellY, target.y() - state.y());
        }
    }

    void noise_trade(const NoiseTraderSpec& spec, oracle::NormalSource& rng) {
        const auto dir = rng.uniform() < 0.5 ? TradeDirection::SellX : TradeDirection::SellY;
        double fraction = std::exp(spec.log_mean + spec.log_sigma * rng.next());
        bool clamped = false;
        if (fraction > spec.max_fraction) {
            fraction = spec.max_fraction;
            clamped = true;
        }
        double amount = 0.0;
        if (dir == TradeDirection::SellX) {
            amount = fraction * state.x();
            const double bound = curve::max_x_bound(state.k(), state.p(), state.z());
            const double cap = kSolvencyMargin * (bound - state.x());
            if (amount > cap) {
                amount = cap;
                clamped = true;
            }
        } else {
            amount = fraction * state.y();
            if (state.z().is_pure_oracle()) {
                const double cap = kSolvencyMargin * state.p().value() * state.x();
                if (amount > cap) {
                    amount = cap;
                    clamped = true;
                }
            }
        }
        run.clamped_trades += clamped ? 1 : 0;
        execute(dir, amount);
    }
};

} // namespace

const std::vector<std::string>& step_metric_columns() {
    static const std::vector<std::string> cols{
        "step",       "oracle_price", "spot_price",  "x", "y", "pool_value",
        "hold_value", "il_relative",  "last_slippage_cost", "cumulative_volume"};
    return cols;
}

Table metrics_table(const RunResult& run) {
    Table t(step_metric_columns());
    for (const auto& m : run.steps) {
        t.add_row({m.step, m.oracle_price, m.spot_price, m.x, m.y, m.pool_value, m.hold_value, m.il_relative,
                   m.last_slippage_cost, m.cumulative_volume});
    }
    return t;
}

oracle::PricePath build_path(const ScenarioConfig& config) {
    return std::visit(
        [&](const auto& spec) -> oracle::PricePath {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, ConstantPathSpec>) {
                return oracle::constant_path(spec.price, config.steps);
            } else if constexpr (std::is_same_v<T, SchedulePathSpec>) {
                return oracle::schedule_path(spec.points, config.steps);
            } else if constexpr (std::is_same_v<T, GbmPathSpec>) {
                return oracle::gbm_path(
                    {spec.initial_price.value_or(config.p0), spec.mu, spec.sigma, config.steps, spec.seed});
            } else {
                std::filesystem::path file(spec.file);
                if (file.is_relative()) {
                    file = std::filesystem::path(config.base_dir) / file;
                }
                oracle::PricePath replay = oracle::read_price_csv_file(file.string());
                if (replay.points().back().step + 1 < config.steps) {
                    throw DomainError("replay file " + file.string() + " covers fewer than " +
                                      std::to_string(config.steps) + " steps");
                }
                return replay;
            }
        },
        config.price_path);
}

RunResult run_single(const ScenarioConfig& config, const oracle::PricePath& path, MixParameter z) {
    RunResult run{z.value(), {}, 0, 0, 0};
    run.steps.reserve(static_cast<std::size_t>(config.steps));

    Executor ex{PoolState::anchored(config.x0, config.y0, OraclePrice(config.p0), z), run};
    std::optional<oracle::NormalSource> rng;
    if (config.agents.noise) {
        rng.emplace(config.agents.noise->seed);
    }

    for (std::int64_t t = 0; t < config.steps; ++t) {
        const OraclePrice p(path.price_at(t));
        ex.last_slippage = 0.0;
        ex.state = oracle::apply_oracle_update(ex.state, p);
        if (config.agents.arbitrageur && !z.is_pure_oracle()) {
            ex.arbitrage();
        }
        if (config.agents.noise) {
            for (std::int64_t i = 0; i < config.agents.noise->trades_per_step; ++i) {
                ex.noise_trade(*config.agents.noise, *rng);
            }
        }

        const double pool_value = ex.state.x() + ex.state.y() / p.value();
        const double hold_value = config.x0 + config.y0 / p.value();
        run.steps.push_back(StepMetrics{t, p.value(), spot_price(ex.state), ex.state.x(), ex.state.y(), pool_value,
                                        hold_value, (hold_value - pool_value) / hold_value, ex.last_slippage,
                                        ex.volume});
    }
    return run;
}

std::vector<RunResult> run_scenario(const ScenarioConfig& config) {
    validate(config);
    const oracle::PricePath path = build_path(config);

    std::vector<std::future<RunResult>> jobs;
    jobs.reserve(config.z_values.size());
    for (double z : config.z_values) {
        jobs.push_back(std::async(std::launch::async, [&config, &path, z] {
            return run_single(config, path, MixParameter(z));
        }));
    }
    std::vector<RunResult> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) {
        out.push_back(j.get());
    }
    return out;
}

std::vector<CurveRow> sweep_reserve_curve(const CurveSpec& spec, const std::vector<double>& z_values,
                                          const std::vector<double>& x_grid) {
    std::vector<CurveRow> rows;
    rows.reserve(z_values.size() * x_grid.size());
    for (double zv : z_values) {
        const MixParameter z(zv);
        double k = 0.0;
        OraclePrice p(1.0);
        if (const auto* fixed = std::get_if<FixedK>(&spec)) {
            k = fixed->k;
            p = OraclePrice(fixed->p);
        } else {
            const auto& a = std::get<AnchorPoint>(spec);
            p = OraclePrice(a.p);
            k = curve::anchor_k(a.x, a.y, p, z);
        }
        for (double x : x_grid) {
            CurveRow row{zv, x, std::nullopt};
            try {
                row.y = curve::reserve_y(k, x, p, z);
            } catch (const InsolvencyError&) {
            } catch (const DomainError&) {
            }
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace qubitswap::sim
