#include "mfhj/sk_rs.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "mfhj/gauss_hermite.hpp"
#include "mfhj/roots.hpp"

namespace mfhj::sk {
namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kQbarTol = 1e-12;

double integrand(GaussianKind kind, double z) {
    switch (kind) {
    case GaussianKind::log_cosh: return log_cosh(z);
    case GaussianKind::tanh_sq: {
        const double th = std::tanh(z);
        return th * th;
    }
    case GaussianKind::sech_sq: {
        const double s = 1.0 / std::cosh(z);
        return s * s;
    }
    case GaussianKind::sech_4: {
        const double s = 1.0 / std::cosh(z);
        return s * s * s * s;
    }
    }
    return 0.0;
}

double map_q(const SkParams& p, double q) {
    return gaussian_expectation(GaussianKind::tanh_sq, p.beta_h, p.x + p.t * q);
}

// d/dq of map_q, via d/dv E tanh^2 = 3 E sech^4 - 2 E sech^2.
double map_q_derivative(const SkParams& p, double q) {
    const double v = p.x + p.t * q;
    return p.t * (3.0 * gaussian_expectation(GaussianKind::sech_4, p.beta_h, v) -
                  2.0 * gaussian_expectation(GaussianKind::sech_sq, p.beta_h, v));
}

double polish_qbar(const SkParams& p, double q) {
    auto fdf = [&p](double v) {
        return std::array<double, 2>{v - map_q(p, v), 1.0 - map_q_derivative(p, v)};
    };
    const double r = qbar_residual(p, q);
    double lo = q, hi = 1.0;
    if (r > 0.0) {
        hi = q;
        lo = 0.5 * q;
        while (qbar_residual(p, lo) > 0.0 && lo > 1e-300) lo *= 0.5;
    }
    return newton_bisect(fdf, lo, hi, q, 1e-16).root;
}

} // namespace

void validate(const SkParams& p) {
    require(std::isfinite(p.x) && p.x >= 0.0, "x must be finite and non-negative");
    require(std::isfinite(p.t) && p.t >= 0.0, "t must be finite and non-negative");
    require(std::isfinite(p.beta_h), "beta_h must be finite");
}

double gaussian_expectation(GaussianKind kind, double beta_h, double v) {
    require(std::isfinite(beta_h), "beta_h must be finite");
    require(std::isfinite(v) && v >= 0.0, "variance must be finite and non-negative");
    if (v == 0.0) return integrand(kind, beta_h);
    const double sd = std::sqrt(v);
    auto f = [&](double g) { return integrand(kind, beta_h + sd * g); };
    if (v <= 1.0) return GaussHermiteRule::standard().expectation(f);
    // The integrands have poles at distance pi / (2 sd) from the real g axis,
    // which stalls Gauss-Hermite for sd > 1. A trapezoid rule with step
    // 0.25 / sd keeps its aliasing error near exp(-4 pi^2).
    const double h = 0.25 / sd;
    const int k = static_cast<int>(std::ceil(9.0 / h));
    double sum = f(0.0);
    for (int i = k; i >= 1; --i) {
        const double g = i * h;
        sum += std::exp(-0.5 * g * g) * (f(g) + f(-g));
    }
    return sum * h / std::sqrt(2.0 * std::numbers::pi);
}

double qbar_residual(const SkParams& p, double q) { return q - map_q(p, q); }

double solve_qbar(const SkParams& p) {
    validate(p);
    if (p.t == 0.0) return map_q(p, 0.0);

    constexpr double alpha = 0.5;
    constexpr int max_iter = 10000;
    constexpr int polish_after = 200;

    // q = 0 is an unstable fixed point for x = beta_h = 0, t > 1.
    double q = (p.x == 0.0 && p.beta_h == 0.0 && p.t > 1.0) ? 1.0 : map_q(p, 0.0);
    double residual = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double fq = map_q(p, q);
        residual = q - fq;
        if (std::fabs(residual) < 0.1 * kQbarTol) return q;
        if (it >= polish_after) break;
        q = (1.0 - alpha) * q + alpha * fq;
    }

    q = polish_qbar(p, q);
    residual = qbar_residual(p, q);
    if (!(std::fabs(residual) < kQbarTol))
        throw ConvergenceError("q_bar fixed point did not converge", std::fabs(residual));
    return q;
}

double rs_boundary_action(double x, double beta_h) {
    return 2.0 * kLog2 + 2.0 * gaussian_expectation(GaussianKind::log_cosh, beta_h, x) - x;
}

double rs_boundary_velocity(double x, double beta_h) {
    return -gaussian_expectation(GaussianKind::tanh_sq, beta_h, x);
}

RsSolution rs_action(const SkParams& p) {
    validate(p);
    RsSolution s;
    s.q_bar = solve_qbar(p);
    s.residual = qbar_residual(p, s.q_bar);
    s.y_star = p.x + p.t * s.q_bar;
    // (t/2) ((x - y)/t)^2 = t q^2 / 2
    s.phi_rs = 0.5 * p.t * s.q_bar * s.q_bar + 2.0 * kLog2 +
               2.0 * gaussian_expectation(GaussianKind::log_cosh, p.beta_h, s.y_star) - s.y_star;
    const double v = s.y_star;
    s.caustic_margin = 1.0 / 3.0 + (2.0 / 3.0) * p.t * gaussian_expectation(GaussianKind::sech_sq, p.beta_h, v) -
                       p.t * gaussian_expectation(GaussianKind::sech_4, p.beta_h, v);
    if (p.x == 0.0) {
        const double one_minus_q = 1.0 - s.q_bar;
        s.pressure = kLog2 + gaussian_expectation(GaussianKind::log_cosh, p.beta_h, p.t * s.q_bar) +
                     0.25 * p.t * one_minus_q * one_minus_q;
    }
    return s;
}

RsPressure rs_pressure(double beta, double h) {
    require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and non-negative");
    require(std::isfinite(h), "h must be finite");
    const double t = beta * beta;
    const auto sol = rs_action({0.0, t, beta * h});
    RsPressure out;
    out.beta = beta;
    out.h = h;
    out.q_bar = sol.q_bar;
    out.pressure = *sol.pressure;
    out.reconstruction = 0.5 * sol.phi_rs + 0.25 * t;
    out.discrepancy = std::fabs(out.pressure - out.reconstruction);
    return out;
}

double caustic_margin(const SkParams& p) { return rs_action(p).caustic_margin; }

std::optional<double> caustic_root(double x, double beta_h, double t_lo, double t_hi, double touch_tol) {
    require(std::isfinite(t_lo) && std::isfinite(t_hi) && 0.0 <= t_lo && t_lo < t_hi,
            "caustic_root needs 0 <= t_lo < t_hi");
    auto margin = [&](double t) { return caustic_margin({x, t, beta_h}); };

    constexpr int grid = 64;
    std::array<double, grid + 1> ts{}, ms{};
    for (int i = 0; i <= grid; ++i) {
        ts[i] = t_lo + (t_hi - t_lo) * i / grid;
        ms[i] = margin(ts[i]);
        if (ms[i] == 0.0) return ts[i];
    }
    for (int i = 0; i < grid; ++i) {
        if ((ms[i] > 0.0) == (ms[i + 1] > 0.0)) continue;
        double lo = ts[i], hi = ts[i + 1], m_lo = ms[i];
        while (hi - lo > 1e-14 * std::fmax(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            const double m_mid = margin(mid);
            if (m_mid == 0.0) return mid;
            if ((m_mid > 0.0) == (m_lo > 0.0)) {
                lo = mid;
                m_lo = m_mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }

    // No sign change: look for a touching zero around the smallest |margin|.
    int best = 0;
    for (int i = 1; i <= grid; ++i)
        if (std::fabs(ms[i]) < std::fabs(ms[best])) best = i;
    double a = ts[std::max(best - 1, 0)];
    double b = ts[std::min(best + 1, grid)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = std::fabs(margin(c)), fd = std::fabs(margin(d));
    while (b - a > 1e-13 * std::fmax(1.0, b)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = std::fabs(margin(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = std::fabs(margin(d));
        }
    }
    const double t_star = 0.5 * (a + b);
    if (std::fabs(margin(t_star)) <= touch_tol) return t_star;
    return std::nullopt;
}

std::vector<PlanePoint> rs_characteristic(double x0, double t_max, int n_points, double beta_h) {
    require(std::isfinite(x0) && x0 >= 0.0, "x0 must be finite and non-negative");
    require(std::isfinite(t_max) && t_max >= 0.0, "t_max must be non-negative");
    require(n_points >= 2, "n_points must be at least 2");
    const double slope = gaussian_expectation(GaussianKind::tanh_sq, beta_h, x0);
    std::vector<PlanePoint> pts;
    pts.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double s = t_max * i / (n_points - 1);
        pts.push_back({x0 - s * slope, s});
    }
    return pts;
}

std::vector<hj::Crossing> rs_characteristic_crossings(std::span<const double> x0, double t_max,
                                                      double beta_h) {
    std::vector<double> speed(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
        require(std::isfinite(x0[i]) && x0[i] >= 0.0, "x0 must be finite and non-negative");
        speed[i] = -gaussian_expectation(GaussianKind::tanh_sq, beta_h, x0[i]);
    }
    return hj::pairwise_crossings(x0, speed, t_max);
}

} // namespace mfhj::sk
