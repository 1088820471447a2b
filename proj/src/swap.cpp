#include "qubitswap/swap.hpp"

#include "qubitswap/curve.hpp"
#include "qubitswap/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qubitswap {
namespace {

// Trades are solved in log/fraction coordinates so small trades keep full
// relative precision. With A = y + c x = k x^(z-1) and c = z p/(2-z):
//
//   selling X, d = dx/x:        dy_out(d) = -A expm1((z-1) log1p(d)) + c x d
//   selling Y, w = ln(x/x'):    dy_in(w)  =  A expm1((1-z) w) - c x expm1(-w)
//
// Both are strictly increasing in their argument.
struct Geometry {
    double a;
    double c;
    double cx;
    double exponent; // z - 1
    double one_minus_z;

    explicit Geometry(const PoolState& s)
        : a(s.y() + curve::oracle_slope(s.p(), s.z()) * s.x()),
          c(curve::oracle_slope(s.p(), s.z())),
          cx(curve::oracle_slope(s.p(), s.z()) * s.x()),
          exponent(s.z().value() - 1.0),
          one_minus_z(1.0 - s.z().value()) {}

    double y_out_for_sell_x(double d) const {
        return -a * std::expm1(exponent * std::log1p(d)) + cx * d;
    }
    double y_out_for_sell_x_slope(double d) const {
        return a * one_minus_z * std::pow(1.0 + d, exponent - 1.0) + cx;
    }
    double y_remaining_after_sell_x(double d, double x_after) const {
        return a * std::exp(exponent * std::log1p(d)) - c * x_after;
    }
    double y_in_for_sell_y(double w) const {
        return a * std::expm1(one_minus_z * w) - cx * std::expm1(-w);
    }
    double y_in_for_sell_y_slope(double w) const {
        return a * one_minus_z * std::exp(one_minus_z * w) + cx * std::exp(-w);
    }
};

// Splits `reserve` into (paid out, remaining). Whichever part is smaller is
// computed directly and the other one as their floating difference, so both
// keep full relative precision.
struct Split {
    double paid;
    double remaining;
};

template <typename Paid, typename Remaining>
Split split_reserve(double reserve, Paid&& paid, Remaining&& remaining) {
    const double out = paid();
    if (out <= 0.5 * reserve) {
        return {out, reserve - out};
    }
    const double rest = remaining();
    return {reserve - rest, rest};
}

void require_amount(double amount, double reserve, const char* what) {
    if (!std::isfinite(amount) || amount <= 0.0) {
        throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(amount));
    }
    if (amount < kDustFraction * reserve) {
        throw DomainError(std::string(what) + " " + std::to_string(amount) + " is below the dust threshold");
    }
}

SwapResult make_result(const PoolState& before, TradeDirection dir, double amount_in, double amount_out,
                       double x_after, double y_after) {
    const PoolState after = PoolState::on_curve(x_after, y_after, before.p(), before.z(), before.k());
    const double spot_before = spot_price(before);
    double exec = 0.0;
    double slippage = 0.0;
    if (dir == TradeDirection::SellX) {
        exec = amount_out / amount_in;
        slippage = spot_before - exec;
    } else {
        exec = amount_in / amount_out;
        slippage = exec - spot_before;
    }
    // Rounding can leave a sub-ulp negative gap on the z = 1 line.
    slippage = std::max(0.0, slippage);
    return SwapResult{dir, amount_in, amount_out, exec, spot_before, spot_price(after), slippage, after};
}

SwapResult sell_x(const PoolState& s, double dx) {
    require_amount(dx, s.x(), "amount_in");
    const double bound = curve::max_x_bound(s.k(), s.p(), s.z());
    const double x_after = s.x() + dx;
    if (x_after >= bound) {
        throw InsolvencyError("selling " + std::to_string(dx) + " X would reach the solvency bound; maximum amount_in is " +
                                  std::to_string(bound - s.x()) + " (exclusive)",
                              bound - s.x());
    }
    const Geometry g(s);
    const double d = dx / s.x();
    const Split split = split_reserve(
        s.y(), [&] { return g.y_out_for_sell_x(d); }, [&] { return g.y_remaining_after_sell_x(d, x_after); });
    if (!(split.paid > 0.0) || !(split.remaining > 0.0)) {
        throw InsolvencyError("trade exhausts the Y reserve", bound - s.x());
    }
    return make_result(s, TradeDirection::SellX, dx, split.paid, x_after, split.remaining);
}

// Log-ratio w = ln(x / x') of the X reserve released for `dy` of Y in.
double solve_sell_y(const PoolState& s, const Geometry& g, double dy) {
    auto f = [&](double w) { return g.y_in_for_sell_y(w) - dy; };
    auto df = [&](double w) { return g.y_in_for_sell_y_slope(w); };
    // f(0) = -dy < 0 and f grows without bound for z < 1.
    const double guess = -std::log1p(-std::min(0.5, dy / (spot_price(s) * s.x())));
    double hi = std::max(2.0 * guess, 1.0);
    for (int i = 0; f(hi) <= 0.0; ++i) {
        if (i == kMaxRootIterations || !std::isfinite(hi)) {
            throw ConvergenceError("could not bracket the sell-Y trade");
        }
        hi *= 2.0;
    }
    return solve_increasing(f, df, 0.0, hi, guess).root;
}

SwapResult sell_y(const PoolState& s, double dy) {
    require_amount(dy, s.y(), "amount_in");
    const Geometry g(s);
    if (s.z().is_pure_oracle() && dy >= g.cx) {
        throw InsolvencyError("selling " + std::to_string(dy) + " Y would exhaust the X reserve; maximum amount_in is " +
                                  std::to_string(g.cx) + " (exclusive)",
                              g.cx);
    }
    Split split{};
    if (s.z().is_pure_oracle()) {
        // Linear curve: x' = x - dy / p.
        const double p = s.p().value();
        split = split_reserve(s.x(), [&] { return dy / p; }, [&] { return (g.cx - dy) / p; });
    } else {
        const double w = solve_sell_y(s, g, dy);
        split = split_reserve(s.x(), [&] { return -s.x() * std::expm1(-w); }, [&] { return s.x() * std::exp(-w); });
    }
    if (!(split.paid > 0.0) || !(split.remaining > 0.0)) {
        throw InsolvencyError("trade exhausts the X reserve", s.z().is_pure_oracle() ? g.cx : dy);
    }
    return make_result(s, TradeDirection::SellY, dy, split.paid, split.remaining, s.y() + dy);
}

} // namespace

std::string_view to_string(TradeDirection d) {
    return d == TradeDirection::SellX ? "sell-x" : "sell-y";
}

TradeDirection parse_direction(std::string_view s) {
    if (s == "sell-x" || s == "SellX") {
        return TradeDirection::SellX;
    }
    if (s == "sell-y" || s == "SellY") {
        return TradeDirection::SellY;
    }
    throw DomainError("unknown trade direction '" + std::string(s) + "' (expected sell-x or sell-y)");
}

SwapResult swap_exact_in(const PoolState& state, TradeDirection direction, double amount_in) {
    return direction == TradeDirection::SellX ? sell_x(state, amount_in) : sell_y(state, amount_in);
}

SwapResult quote(const PoolState& state, TradeDirection direction, double amount_in) {
    return swap_exact_in(state, direction, amount_in);
}

SwapResult swap_exact_out(const PoolState& state, TradeDirection direction, double amount_out) {
    const Geometry g(state);
    if (direction == TradeDirection::SellY) {
        require_amount(amount_out, state.x(), "amount_out");
        if (amount_out >= state.x()) {
            throw InsolvencyError("cannot withdraw " + std::to_string(amount_out) + " X; available is " +
                                      std::to_string(state.x()) + " (exclusive)",
                                  state.x());
        }
        return sell_y(state, g.y_in_for_sell_y(-std::log1p(-amount_out / state.x())));
    }

    require_amount(amount_out, state.y(), "amount_out");
    if (amount_out >= state.y()) {
        throw InsolvencyError("cannot withdraw " + std::to_string(amount_out) + " Y; available is " +
                                  std::to_string(state.y()) + " (exclusive)",
                              state.y());
    }
    double d = 0.0;
    if (state.z().is_pure_oracle()) {
        d = amount_out / g.cx;
    } else {
        auto f = [&](double t) { return g.y_out_for_sell_x(t) - amount_out; };
        auto df = [&](double t) { return g.y_out_for_sell_x_slope(t); };
        const double bound = curve::max_x_bound(state.k(), state.p(), state.z());
        const double guess = amount_out / (spot_price(state) * state.x());
        double hi = 0.0;
        if (std::isfinite(bound)) {
            hi = bound / state.x() - 1.0;
        } else {
            hi = std::max(2.0 * guess, 1.0);
            for (int i = 0; f(hi) <= 0.0; ++i) {
                if (i == kMaxRootIterations) {
                    throw ConvergenceError("could not bracket the sell-X trade");
                }
                hi *= 2.0;
            }
        }
        d = solve_increasing(f, df, 0.0, hi, guess).root;
    }
    return sell_x(state, d * state.x());
}

} // namespace qubitswap
