#pragma once

#include "qubitswap/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qubitswap {

struct RootResult {
    double root;
    int iterations;
};

inline constexpr int kMaxRootIterations = 200;

/// Root of a strictly increasing function on the bracket [lo, hi] with
/// f(lo) <= 0 <= f(hi). Newton steps are taken while they stay inside the
/// shrinking bracket; otherwise the step falls back to bisection.
template <typename F, typename DF>
RootResult solve_increasing(F&& f, DF&& df, double lo, double hi, double guess,
                            double rel_tol = 4.0 * std::numeric_limits<double>::epsilon()) {
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int it = 1; it <= kMaxRootIterations; ++it) {
        const double fx = f(x);
        if (fx == 0.0) {
            return {x, it};
        }
        if (fx < 0.0) {
            lo = x;
        } else {
            hi = x;
        }

        const double d = df(x);
        double next = (d > 0.0 && std::isfinite(d)) ? x - fx / d : lo - 1.0;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double tol = rel_tol * std::abs(next) + std::numeric_limits<double>::min();
        if (std::abs(next - x) <= tol || hi - lo <= tol) {
            return {next, it};
        }
        x = next;
    }
    throw ConvergenceError("root finder did not converge within " + std::to_string(kMaxRootIterations) +
                           " iterations");
}

} // namespace qubitswap
