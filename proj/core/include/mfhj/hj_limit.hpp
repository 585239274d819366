#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mfhj/plane.hpp"

/// Thermodynamic limit of the Curie-Weiss Hamilton-Jacobi/Burgers problem
/// with boundary data phi(x, 0) = -log 2 - log cosh x.
namespace mfhj::hj {

enum class Branch { plus, minus, unique };

inline const char* to_string(Branch b) {
    switch (b) {
    case Branch::plus: return "plus";
    case Branch::minus: return "minus";
    default: return "unique";
    }
}

/// Lax-Oleinik solution at one point. u = (x - y_star)/t = -tanh(y_star).
struct LaxSolution {
    double y_star = 0.0;
    double phi = 0.0;
    double u = 0.0;
    bool on_shock = false;
    Branch branch = Branch::unique;
};

struct Characteristic {
    double x0 = 0.0;
    std::vector<PlanePoint> points;
};

/// Boundary data of the free problem.
double boundary_action(double x);
double boundary_velocity(double x);

/// Cole-Hopf (Gaussian convolution) form of the finite-N action:
///   phi_N = -(1/N) log[ sqrt(N/t) int dy/sqrt(2 pi) exp(-N G(y)) ],
///   G(y) = (x - y)^2 / (2t) - log 2 - log cosh y,
/// evaluated by adaptive Gauss-Kronrod after shifting by min G.
/// Coincides with cw::exact_fields(p, n).phi. Requires t > 0.
double viscous_action(PlanePoint p, int n);

/// Ratio-of-integrals form of u_N = -<m_N>. Requires t > 0.
double viscous_velocity(PlanePoint p, int n);

/// Minimizes G(y) over y. On the shock line (x == 0, t > 1) the two global
/// minimizers are degenerate and `side` must be given; elsewhere it is
/// ignored.
LaxSolution lax_action(PlanePoint p, std::optional<Side> side = std::nullopt);

/// Root of u = -tanh(x - u t) on (-1, 1). Off the shock the branch with
/// sign(u) = -sign(x) is returned; at x == 0 `side` picks it.
double self_consistent_magnetization(PlanePoint p, Side side);

/// Positive root m* of m = tanh(t m). Requires t > 1.
double spontaneous_magnetization(double t);

/// Boundary x_c(t) = artanh(sqrt((t-1)/t)) - sqrt(t (t-1)) of the fold of
/// the x0 >= 0 characteristics. Requires t > 1.
double critical_line(double t);

struct ShockJump {
    double u_minus = 0.0;  // limit from x < 0, equals +m*
    double u_plus = 0.0;   // limit from x > 0, equals -m*
};

/// One-sided velocities across the shock line. Requires t > 1.
ShockJump shock_jump(double t);

/// x = x0 - s tanh(x0), sampled uniformly for s in [0, t_max].
Characteristic characteristic(double x0, double t_max, int n_points);

/// Limit of u along x = eps (t - 1) as eps -> 0 with the given sign of eps.
/// Requires t > 1.
double symmetry_breaking_limit(double t, Side epsilon_sign);

struct Crossing {
    std::size_t a = 0;  // indices into the launch arrays
    std::size_t b = 0;
    PlanePoint at;
};

/// All pairwise intersections with 0 < s <= t_max of the straight lines
/// x = x0[i] + s * speed[i].
std::vector<Crossing> pairwise_crossings(std::span<const double> x0, std::span<const double> speed,
                                         double t_max);

/// Crossings among the CW characteristics launched from `x0`.
std::vector<Crossing> characteristic_crossings(std::span<const double> x0, double t_max);

} // namespace mfhj::hj
