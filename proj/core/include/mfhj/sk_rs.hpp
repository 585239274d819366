#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mfhj/hj_limit.hpp"
#include "mfhj/plane.hpp"

/// Replica-symmetric Sherrington-Kirkpatrick solution of the free
/// Hamilton-Jacobi problem with boundary data
///   phi(x, 0) = 2 log 2 + 2 E_g log cosh(beta_h + g sqrt(x)) - x.
namespace mfhj::sk {

/// x is the cavity-field variance, t the interaction (t = beta^2 at the
/// physical point) and beta_h the external-field combination.
struct SkParams {
    double x = 0.0;
    double t = 0.0;
    double beta_h = 0.0;
};

void validate(const SkParams& p);

enum class GaussianKind { log_cosh, tanh_sq, sech_sq, sech_4 };

/// E_g f(beta_h + g sqrt(v)): the shared order-120 Gauss-Hermite rule for
/// v <= 1, a fixed trapezoid rule in g with step 0.25 / sqrt(v) above.
/// At v = 0 this is f(beta_h) exactly.
double gaussian_expectation(GaussianKind kind, double beta_h, double v);

/// q - E_g tanh^2(beta_h + g sqrt(x + t q)).
double qbar_residual(const SkParams& p, double q);

/// Root of q = E_g tanh^2(beta_h + g sqrt(x + t q)) in [0, 1], residual
/// below 1e-12. Damped fixed-point iteration (alpha = 1/2), finished by a
/// bracketed Newton step when the contraction is slow. At x = 0,
/// beta_h = 0 and t > 1 the positive root is selected.
double solve_qbar(const SkParams& p);

struct RsSolution {
    double q_bar = 0.0;
    double y_star = 0.0;  // x + t q_bar
    double phi_rs = 0.0;
    std::optional<double> pressure;  // only at x = 0
    double caustic_margin = 0.0;
    double residual = 0.0;  // fixed-point residual of q_bar

    double u() const { return 0.0 - q_bar; }
};

/// RS boundary data and its x-derivative (minus the boundary velocity).
double rs_boundary_action(double x, double beta_h);
double rs_boundary_velocity(double x, double beta_h);

/// Lax-Oleinik action with minimizer y = x + t q_bar:
///   phi_RS = t q_bar^2 / 2 + 2 log 2 + 2 E_g log cosh(beta_h + g sqrt(y)) - y.
RsSolution rs_action(const SkParams& p);

struct RsPressure {
    double beta = 0.0;
    double h = 0.0;
    double q_bar = 0.0;
    double pressure = 0.0;        // closed form
    double reconstruction = 0.0;  // phi_RS(0, beta^2) / 2 + beta^2 / 4
    double discrepancy = 0.0;
};

/// A_RS(beta, h) = log 2 + E_g log cosh(beta h + g beta sqrt(q)) + beta^2 (1 - q)^2 / 4.
RsPressure rs_pressure(double beta, double h);

/// 1/3 + (2/3) t E[sech^2] - t E[sech^4] at v = x + t q_bar. Non-negative
/// where RS characteristics do not cross; zero on the caustic.
double caustic_margin(const SkParams& p);

/// Zero of caustic_margin in t on [t_lo, t_hi] at fixed (x, beta_h): a sign
/// change is refined by bisection, a touching zero by golden-section
/// search. Returns nullopt if the margin stays above `touch_tol`.
std::optional<double> caustic_root(double x, double beta_h, double t_lo, double t_hi,
                                   double touch_tol = 1e-12);

/// x = x0 - s E_g tanh^2(beta_h + g sqrt(x0)), s in [0, t_max].
std::vector<PlanePoint> rs_characteristic(double x0, double t_max, int n_points, double beta_h);

std::vector<hj::Crossing> rs_characteristic_crossings(std::span<const double> x0, double t_max,
                                                      double beta_h);

} // namespace mfhj::sk
