#include "mfhj/hj_limit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mfhj/roots.hpp"

namespace mfhj::hj {
namespace {

constexpr double kLog2 = std::numbers::ln2;

double objective(double x, double t, double y) {
    const double d = x - y;
    return d * d / (2.0 * t) - kLog2 - log_cosh(y);
}

// Stationary points of the objective solve F(y) = y - x - t tanh y = 0.
RootResult stationary_root(double x, double t, double lo, double hi, double guess) {
    auto fdf = [x, t](double y) {
        const double th = std::tanh(y);
        return std::array<double, 2>{y - x - t * th, 1.0 - t * (1.0 - th * th)};
    };
    return newton_bisect(fdf, lo, hi, guess);
}

struct Minimizers {
    std::optional<double> left;   // y < -a
    std::optional<double> right;  // y > a
};

// For t <= 1 the objective is convex and `right` holds the unique root.
// For t > 1, F has a local max at -a and a local min at a, a = arccosh(sqrt t);
// the outer roots (when they exist) are the local minima of the objective.
Minimizers outer_minimizers(double x, double t) {
    Minimizers out;
    const double lo = x - t - 1.0;
    const double hi = x + t + 1.0;
    if (t <= 1.0) {
        out.right = stationary_root(x, t, lo, hi, x).root;
        return out;
    }
    const double a = std::acosh(std::sqrt(t));
    const double f_at_a = a - x - t * std::tanh(a);
    const double f_at_minus_a = -a - x + t * std::tanh(a);
    if (f_at_a <= 0.0) out.right = stationary_root(x, t, a, hi, x + t).root;
    if (f_at_minus_a >= 0.0) out.left = stationary_root(x, t, lo, -a, x - t).root;
    return out;
}

LaxSolution make_solution(double x, double t, double y, bool on_shock, Branch branch) {
    LaxSolution s;
    s.y_star = y;
    s.u = (x - y) / t;
    s.phi = objective(x, t, y);
    s.on_shock = on_shock;
    s.branch = branch;
    return s;
}

void require_positive_t(PlanePoint p, int n) {
    validate(p);
    require(n >= 1, "n must be a positive integer");
    require(p.t > 0.0, "t must be positive; use the boundary closed form at t = 0");
}

struct ColeHopfIntegrals {
    double shift = 0.0;        // min of the objective
    double weight = 0.0;       // int exp(-N (G - shift)) dy
    double first_moment = 0.0; // int ((x - y)/t) exp(-N (G - shift)) dy
};

ColeHopfIntegrals cole_hopf_integrals(PlanePoint p, int n, bool with_moment) {
    using boost::math::quadrature::gauss_kronrod;
    const double x = p.x, t = p.t;
    const double nn = n;

    // Either minimizer gives the same shift on the shock line.
    const double shift = lax_action(p, Side::plus).phi;
    auto w = [=](double y) { return std::exp(-nn * (objective(x, t, y) - shift)); };

    // Fold about y = x so that the x = 0 odd cancellation is exact.
    const double half_width = 10.0 / std::sqrt(nn * std::min(1.0, 1.0 / t)) + std::fabs(t) + 5.0;
    constexpr unsigned max_depth = 15;
    constexpr double tol = 1e-10;

    // Break the folded range around each peak so the adaptive error estimate
    // sees a resolved bump even when the width ~ sqrt(t/N) is tiny.
    std::vector<double> cuts{0.0, half_width};
    const double sigma = std::sqrt(t / nn);
    const auto mins = outer_minimizers(x, t);
    for (const auto& m : {mins.left, mins.right}) {
        if (!m) continue;
        const double s = std::fabs(*m - x);
        for (double c : {s - 8.0 * sigma, s, s + 8.0 * sigma})
            if (c > 0.0 && c < half_width) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    // Slivers narrower than the peak width only upset the error estimate.
    std::vector<double> kept{0.0};
    for (double c : cuts)
        if (c - kept.back() >= sigma) kept.push_back(c);
    kept.back() = half_width;
    cuts = std::move(kept);

    auto integrate = [&](auto f, double& err_total) {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double err = 0.0;
            sum += gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], max_depth, tol, &err);
            err_total += err;
        }
        return sum;
    };

    ColeHopfIntegrals out;
    out.shift = shift;
    double err = 0.0;
    out.weight = integrate([&](double s) { return w(x + s) + w(x - s); }, err);
    if (!(err <= 1e-8 * out.weight))
        throw ConvergenceError("Cole-Hopf weight integral did not converge", err / out.weight);

    if (with_moment) {
        double err_m = 0.0;
        out.first_moment =
            integrate([&](double s) { return (s / t) * (w(x - s) - w(x + s)); }, err_m);
        if (!(err_m <= 1e-8 * out.weight))
            throw ConvergenceError("Cole-Hopf moment integral did not converge", err_m / out.weight);
    }
    return out;
}

} // namespace

double boundary_action(double x) { return -kLog2 - log_cosh(x); }

double boundary_velocity(double x) { return -std::tanh(x); }

double viscous_action(PlanePoint p, int n) {
    require_positive_t(p, n);
    const auto ch = cole_hopf_integrals(p, n, false);
    const double nn = n;
    const double norm = std::sqrt(nn / (2.0 * std::numbers::pi * p.t));
    return ch.shift - std::log(norm * ch.weight) / nn;
}

double viscous_velocity(PlanePoint p, int n) {
    require_positive_t(p, n);
    const auto ch = cole_hopf_integrals(p, n, true);
    return ch.first_moment / ch.weight;
}

LaxSolution lax_action(PlanePoint p, std::optional<Side> side) {
    validate(p);
    const double x = p.x, t = p.t;
    if (t == 0.0) {
        LaxSolution s;
        s.y_star = x;
        s.phi = boundary_action(x);
        s.u = boundary_velocity(x);
        return s;
    }

    if (x == 0.0 && t > 1.0) {
        require(side.has_value(), "x = 0, t > 1 lies on the shock line; a side is required");
        const auto mins = outer_minimizers(0.0, t);
        // G is even in y at x = 0: mirror one root so the branches are exact negatives.
        const double y = *mins.right;
        return *side == Side::plus ? make_solution(x, t, y, true, Branch::plus)
                                   : make_solution(x, t, -y, true, Branch::minus);
    }

    const auto mins = outer_minimizers(x, t);
    if (mins.left && mins.right) {
        const double g_left = objective(x, t, *mins.left);
        const double g_right = objective(x, t, *mins.right);
        // G(y) - G(-y) = -2xy/t: when the values tie to rounding, sign(x) decides.
        const double tie = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(g_left));
        bool take_right = g_right < g_left;
        if (std::fabs(g_right - g_left) <= tie) take_right = x > 0.0;
        return make_solution(x, t, take_right ? *mins.right : *mins.left, false, Branch::unique);
    }
    const double y = mins.right ? *mins.right : *mins.left;
    return make_solution(x, t, y, false, Branch::unique);
}

double self_consistent_magnetization(PlanePoint p, Side side) {
    validate(p);
    const double x = p.x, t = p.t;
    if (t == 0.0) return -std::tanh(x);
    if (x == 0.0 && t <= 1.0) return 0.0;

    const Side branch = x > 0.0 ? Side::plus : (x < 0.0 ? Side::minus : side);

    // H(u) = u + tanh(x - u t): increasing, then decreasing on
    // ((x - a)/t, (x + a)/t) when t > 1, then increasing again.
    auto fdf = [x, t](double u) {
        const double th = std::tanh(x - u * t);
        return std::array<double, 2>{u + th, 1.0 - t * (1.0 - th * th)};
    };
    auto h = [&](double u) { return fdf(u)[0]; };

    double lo = -1.0, hi = 1.0;
    double guess = branch == Side::plus ? -0.5 : 0.5;
    if (t > 1.0) {
        const double a = std::acosh(std::sqrt(t));
        const double c1 = (x - a) / t;
        const double c2 = (x + a) / t;
        if (branch == Side::plus) {
            if (c1 > -1.0 && h(std::min(c1, 1.0)) >= 0.0) hi = std::min(c1, 1.0);
            else lo = std::max(c2, -1.0);
        } else {
            if (c2 < 1.0 && h(std::max(c2, -1.0)) <= 0.0) lo = std::max(c2, -1.0);
            else hi = std::min(c1, 1.0);
        }
        // seed near the pitchfork: m^2 ~ 3 (t - 1) / t^3
        const double m_seed = std::min(0.99, std::sqrt(3.0 * (t - 1.0) / (t * t * t)));
        guess = branch == Side::plus ? -m_seed : m_seed;
    }
    return newton_bisect(fdf, lo, hi, guess).root;
}

double spontaneous_magnetization(double t) {
    require(std::isfinite(t) && t > 1.0, "spontaneous magnetization requires t > 1");
    auto fdf = [t](double m) {
        const double th = std::tanh(t * m);
        return std::array<double, 2>{th - m, t * (1.0 - th * th) - 1.0};
    };
    const double seed = std::min(0.99, std::sqrt(3.0 * (t - 1.0) / (t * t * t)));
    double lo = 0.5 * seed;
    while (fdf(lo)[0] <= 0.0 && lo > 1e-300) lo *= 0.5;
    return newton_bisect(fdf, lo, 1.0, seed).root;
}

double critical_line(double t) {
    require(std::isfinite(t) && t > 1.0, "critical line requires t > 1");
    return std::atanh(std::sqrt((t - 1.0) / t)) - std::sqrt(t * (t - 1.0));
}

ShockJump shock_jump(double t) {
    require(std::isfinite(t) && t > 1.0, "shock jump requires t > 1");
    const double m = spontaneous_magnetization(t);
    return {m, -m};
}

Characteristic characteristic(double x0, double t_max, int n_points) {
    require(std::isfinite(x0), "x0 must be finite");
    require(std::isfinite(t_max) && t_max >= 0.0, "t_max must be non-negative");
    require(n_points >= 2, "n_points must be at least 2");
    Characteristic c;
    c.x0 = x0;
    c.points.reserve(static_cast<std::size_t>(n_points));
    const double speed = std::tanh(x0);
    for (int i = 0; i < n_points; ++i) {
        const double s = t_max * i / (n_points - 1);
        c.points.push_back({x0 - s * speed, s});
    }
    return c;
}

double symmetry_breaking_limit(double t, Side epsilon_sign) {
    require(std::isfinite(t) && t > 1.0, "symmetry breaking limit requires t > 1");
    const double sign = epsilon_sign == Side::plus ? 1.0 : -1.0;
    constexpr double tol = 1e-8;
    double previous = std::numeric_limits<double>::quiet_NaN();
    double delta = std::numeric_limits<double>::infinity();
    for (double eps = 0.1; eps >= 1e-14; eps *= 0.1) {
        const double u = lax_action({sign * eps * (t - 1.0), t}).u;
        delta = std::fabs(u - previous);
        if (delta < tol) return u;
        previous = u;
    }
    throw ConvergenceError("symmetry breaking limit did not stabilize", delta);
}

std::vector<Crossing> pairwise_crossings(std::span<const double> x0, std::span<const double> speed,
                                         double t_max) {
    require(x0.size() == speed.size(), "x0 and speed must have the same length");
    std::vector<Crossing> out;
    for (std::size_t i = 0; i < x0.size(); ++i) {
        for (std::size_t j = i + 1; j < x0.size(); ++j) {
            const double dv = speed[i] - speed[j];
            if (dv == 0.0) continue;
            const double s = (x0[j] - x0[i]) / dv;
            if (s > 0.0 && s <= t_max) out.push_back({i, j, {x0[i] + s * speed[i], s}});
        }
    }
    return out;
}

std::vector<Crossing> characteristic_crossings(std::span<const double> x0, double t_max) {
    std::vector<double> speed(x0.size());
    std::transform(x0.begin(), x0.end(), speed.begin(), [](double v) { return -std::tanh(v); });
    return pairwise_crossings(x0, speed, t_max);
}

} // namespace mfhj::hj
