#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mfhj/plane.hpp"
#include "mfhj/sk_rs.hpp"

namespace mfhj {

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least-squares line through (log n, log err).
LogLogFit fit_loglog(std::span<const double> n, std::span<const double> err);

struct ConvergenceRow {
    int n = 0;
    double value = 0.0;
    double reference = 0.0;
    double error = 0.0;
    double std_error = 0.0;  // Monte Carlo error, zero for deterministic models
};

struct ConvergenceReport {
    std::string model;
    std::vector<ConvergenceRow> rows;
    std::vector<double> ratios;  // error[k+1] / error[k]
    double slope = 0.0;
};

/// |phi_N - phi| with phi_N from the Cole-Hopf integral and phi from the
/// Lax-Oleinik minimizer. Off the shock line only.
ConvergenceReport cw_action_convergence(PlanePoint p, std::span<const int> n_list);

/// |u_N - u|, same representations.
ConvergenceReport cw_velocity_convergence(PlanePoint p, std::span<const int> n_list);

/// |p4| of the SK overlap identities against zero, with Monte Carlo errors.
ConvergenceReport sk_identity_convergence(const sk::SkParams& params, std::span<const int> n_list,
                                          int n_samples, std::uint64_t seed);

} // namespace mfhj
