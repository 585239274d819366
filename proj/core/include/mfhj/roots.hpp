#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "mfhj/errors.hpp"

namespace mfhj {

struct RootResult {
    double root = 0.0;
    double value = 0.0;  // f(root)
    int iterations = 0;
};

/// Newton iteration kept inside a sign-changing bracket [lo, hi]; a step
/// that would leave the bracket or does not shrink fast enough is replaced
/// by bisection. `fdf(x)` returns {f(x), f'(x)}.
template <class FDF>
RootResult newton_bisect(FDF&& fdf, double lo, double hi, double guess,
                         double x_tol = 4.0 * std::numeric_limits<double>::epsilon(),
                         int max_iter = 200) {
    const auto [f_lo, d_lo] = fdf(lo);
    const auto [f_hi, d_hi] = fdf(hi);
    (void)d_lo;
    (void)d_hi;
    if (f_lo == 0.0) return {lo, 0.0, 0};
    if (f_hi == 0.0) return {hi, 0.0, 0};
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw DomainError("newton_bisect: bracket does not change sign");
    // orient so that f(lo) < 0 < f(hi)
    if (f_lo > 0.0) std::swap(lo, hi);

    const bool guess_inside = guess > std::fmin(lo, hi) && guess < std::fmax(lo, hi);
    double x = guess_inside ? guess : 0.5 * (lo + hi);
    double dx_old = std::fabs(hi - lo);
    double dx = dx_old;
    auto [f, df] = fdf(x);
    for (int it = 1; it <= max_iter; ++it) {
        if (f == 0.0) return {x, 0.0, it};
        const bool out_of_range = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
        const bool too_slow = std::fabs(2.0 * f) > std::fabs(dx_old * df);
        if (out_of_range || too_slow) {
            dx_old = dx;
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        } else {
            dx_old = dx;
            dx = f / df;
            x -= dx;
        }
        const double tol = x_tol * std::fmax(1.0, std::fabs(x));
        auto [f_new, df_new] = fdf(x);
        f = f_new;
        df = df_new;
        if (std::fabs(dx) <= tol) return {x, f, it};
        if (f < 0.0) lo = x; else hi = x;
    }
    throw ConvergenceError("newton_bisect: iteration limit reached", std::fabs(f));
}

} // namespace mfhj
