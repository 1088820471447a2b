#pragma once

#include "qubitswap/pool.hpp"

#include <string_view>

namespace qubitswap {

enum class TradeDirection {
    SellX, ///< trader adds X, removes Y
    SellY, ///< trader adds Y, removes X
};

std::string_view to_string(TradeDirection d);
TradeDirection parse_direction(std::string_view s);

/// Outcome of a trade. Prices are always quoted in Y per X; slippage_cost is
/// the trader's price-impact cost and is never negative.
struct SwapResult {
    TradeDirection direction;
    double amount_in;
    double amount_out;
    double exec_price;
    double spot_before;
    double spot_after;
    double slippage_cost;
    PoolState new_state;
};

/// Trades below this fraction of the input-side reserve are rejected as dust.
inline constexpr double kDustFraction = 1e-15;

/// Moves the pool along its curve by `amount_in` of the input asset.
/// Throws InsolvencyError carrying the largest feasible amount_in when the
/// trade would reach the solvency boundary.
SwapResult swap_exact_in(const PoolState& state, TradeDirection direction, double amount_in);

/// Finds the input that yields exactly `amount_out` and executes it.
/// Throws InsolvencyError carrying the available output when amount_out
/// cannot be delivered.
SwapResult swap_exact_out(const PoolState& state, TradeDirection direction, double amount_out);

/// Read-only preview; numerically identical to swap_exact_in.
SwapResult quote(const PoolState& state, TradeDirection direction, double amount_in);

} // namespace qubitswap
