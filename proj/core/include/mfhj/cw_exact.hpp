#pragma once

#include <vector>

#include "mfhj/plane.hpp"

/// Exact finite-N Curie-Weiss thermodynamics.
///
/// All sums run over the N+1 magnetization levels m_k = (2k - N)/N with
/// binomial multiplicities and Gibbs weight exp(N (t m^2 / 2 + x m)); they
/// are evaluated in log space with a single max shift.
namespace mfhj::cw {

struct ExactFields {
    int n = 0;
    double phi = 0.0;        // Guerra action, -(1/N) log Z_N
    double u = 0.0;          // velocity, -<m>
    double potential = 0.0;  // (<m^2> - <m>^2) / 2
    /// moments[k] = <m^k> for k = 0..k_max (moments[0] == 1).
    std::vector<double> moments;

    double moment(int k) const { return moments.at(static_cast<std::size_t>(k)); }
};

/// (1/N) log sum_k binom(N,k) exp(N (t m_k^2 / 2 + x m_k)).
double log_partition(PlanePoint p, int n);

/// Action, velocity, potential and the first k_max magnetization moments,
/// all from weighted binomial sums (no numerical differentiation).
ExactFields exact_fields(PlanePoint p, int n, int k_max = 4);

/// |d_t phi + (d_x phi)^2 / 2 - (1/2N) d_xx phi| by central differences.
/// The viscous Hamilton-Jacobi equation holds exactly, so this measures
/// the O(step^2) truncation error only. Requires t - step >= 0.
double hj_residual(PlanePoint p, int n, double step = 1e-3);

/// |(d_t + u_N d_x) log rho_N - 2 N V_N| with rho_N(x, t) = Z_N(x, 2t) / 2^N,
/// u_N and V_N taken at (x, 2t). Derivatives by central differences.
double continuity_residual(PlanePoint p, int n, double step = 1e-3);

struct ConservationResiduals {
    double r1 = 0.0;  // <m^3> - 3<m><m^2> + 2<m>^3
    double r2 = 0.0;  // (<m^4> - <m^2>^2) - 2<m><m^3> + 2<m>^2<m^2>
    double r3 = 0.0;  // <m^4> - <m^2>^2
};

/// Momentum/energy streaming residuals; each is O(1/N) off the shock line.
ConservationResiduals conservation_residuals(PlanePoint p, int n);

} // namespace mfhj::cw
