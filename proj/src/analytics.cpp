#include "qubitswap/analytics.hpp"

#include "qubitswap/curve.hpp"

#include <cmath>
#include <string>

namespace qubitswap::analytics {
namespace {

void require_ratio(double r, const char* name) {
    if (!std::isfinite(r) || r <= 0.0) {
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(r));
    }
}

double pool_exponent(MixParameter z) {
    return 1.0 / (2.0 - z.value());
}

} // namespace

ILReport il_closed_form(MixParameter z, double rho) {
    require_ratio(rho, "price ratio rho");
    const double v_pool = 2.0 * std::pow(rho, pool_exponent(z));
    const double v_hold = 1.0 + rho;
    const double il = v_hold - v_pool;
    return ILReport{rho, z.value(), il, il / v_hold, v_pool, v_hold};
}

double il_standard_amm(double r) {
    require_ratio(r, "price ratio r");
    return 2.0 * std::sqrt(r) - r - 1.0;
}

PoolState rebalance_to_oracle(const PoolState& state, OraclePrice p_new) {
    const MixParameter z = state.z();
    if (z.is_pure_oracle()) {
        throw UnsupportedError("rebalancing is undefined at z = 1: the spot price always equals the oracle");
    }
    const double x_target = std::pow((2.0 - z.value()) * state.k() / (2.0 * p_new.value()), pool_exponent(z));
    const double y_target = curve::reserve_y(state.k(), x_target, p_new, z);
    return PoolState::on_curve(x_target, y_target, p_new, z, state.k());
}

ILReport il_simulated(double x0, OraclePrice p0, OraclePrice p1, MixParameter z) {
    if (z.is_pure_oracle()) {
        throw UnsupportedError("simulated impermanent loss is undefined at z = 1 (no rebalancing trade exists)");
    }
    const double y0 = p0.value() * x0;
    const PoolState start = PoolState::anchored(x0, y0, p0, z);
    const PoolState end = rebalance_to_oracle(start, p1);

    const double v_pool = (end.x() + end.y() / p1.value()) / x0;
    const double v_hold = (x0 + y0 / p1.value()) / x0;
    const double il = v_hold - v_pool;
    return ILReport{p0.value() / p1.value(), z.value(), il, il / v_hold, v_pool, v_hold};
}

TaylorSlippage slippage_taylor(const PoolState& state, double dx) {
    if (!std::isfinite(dx) || dx <= 0.0) {
        throw DomainError("trade size must be positive and finite, got " + std::to_string(dx));
    }
    const double k = state.k();
    const double x = state.x();
    const OraclePrice p = state.p();
    const MixParameter z = state.z();
    // Reject trades that would cross the solvency bound.
    (void)curve::reserve_y(k, x + dx, p, z);

    const double zv = z.value();
    const double second = 0.5 * curve::d2y_dx2(k, x, p, z) * dx;
    const double simplified = dx * (zv - 2.0) / (2.0 * x) * (curve::dy_dx(k, x, p, z) + curve::oracle_slope(p, z));
    return TaylorSlippage{second, simplified, dx};
}

double slippage_exact(const PoolState& state, TradeDirection direction, double amount_in) {
    const SwapResult r = swap_exact_in(state, direction, amount_in);
    return std::abs(r.exec_price - r.spot_before);
}

SlippageEstimate estimate_slippage(const PoolState& state, double dx) {
    const TaylorSlippage t = slippage_taylor(state, dx);
    return SlippageEstimate{t.second_derivative_form, t.simplified_form,
                            slippage_exact(state, TradeDirection::SellX, dx), dx};
}

double normalized_slippage_coefficient(MixParameter z) {
    const OraclePrice p(1.0);
    const double k = curve::anchor_k(1.0, 1.0, p, z);
    return 0.5 * curve::d2y_dx2(k, 1.0, p, z);
}

} // namespace qubitswap::analytics
