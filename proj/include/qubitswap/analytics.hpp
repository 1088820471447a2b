#pragma once

#include "qubitswap/pool.hpp"
#include "qubitswap/swap.hpp"

namespace qubitswap::analytics {

/// Impermanent loss after the oracle moves from p0 to p1, per unit of the
/// initial X reserve. Portfolios are valued in X (value = x + y / p).
///
/// `il_paper` is the shortfall hold - pool per unit x0, which is
/// 1 + rho - 2 rho^(1/(2-z)) for a balanced start. `il_relative` divides by
/// the hold value and is the dimensionless fraction.
struct ILReport {
    double rho; ///< p0 / p1
    double z;
    double il_paper;
    double il_relative;
    double v_pool;
    double v_hold;
};

ILReport il_closed_form(MixParameter z, double rho);

/// 2 sqrt(r) - r - 1, the textbook constant-product formula. Note the
/// opposite sign to ILReport::il_paper at z = 0.
double il_standard_amm(double r);

/// Builds a balanced pool (y0 = p0 x0), rebalances it to p1 and values both
/// portfolios from the resulting reserves. Unsupported for z = 1.
ILReport il_simulated(double x0, OraclePrice p0, OraclePrice p1, MixParameter z);

/// Arbitrage to a new oracle price: the curve constant k is kept, p is
/// replaced by p_new, and the reserves move to the point of that curve where
/// the spot price equals p_new, x* = ((2-z) k / (2 p_new))^(1/(2-z)). There
/// y* = p_new x*. When p_new equals the pool's own price this is an
/// ordinary move along the current curve. Throws UnsupportedError at z = 1,
/// where the spot is pinned to the oracle and no such point exists.
PoolState rebalance_to_oracle(const PoolState& state, OraclePrice p_new);

/// Second-order slippage prediction for selling dx of X, trader-cost sign.
struct TaylorSlippage {
    double second_derivative_form; ///< (1/2) y''(x) dx
    double simplified_form;        ///< (dx (z-2) / (2x)) (dy/dx + z p/(2-z))
    double trade_size;
};

struct SlippageEstimate {
    double taylor_second_derivative_form;
    double taylor_simplified_form;
    double exact;
    double trade_size;
};

TaylorSlippage slippage_taylor(const PoolState& state, double dx);

/// |exec_price - spot_before| of an actual swap.
double slippage_exact(const PoolState& state, TradeDirection direction, double amount_in);

/// Taylor forms and exact slippage for selling dx of X.
SlippageEstimate estimate_slippage(const PoolState& state, double dx);

/// Taylor coefficient (slippage per unit dx) of the balanced unit pool
/// x = y = p = 1, where k = 1 + z/(2-z).
double normalized_slippage_coefficient(MixParameter z);

} // namespace qubitswap::analytics
