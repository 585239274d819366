#include "mfhj/convergence.hpp"

#include <cmath>

#include "mfhj/hj_limit.hpp"
#include "mfhj/sk_finite.hpp"

namespace mfhj {
namespace {

void validate_n_list(std::span<const int> n_list) {
    require(n_list.size() >= 3, "n_list needs at least 3 entries");
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        require(n_list[k] >= 1, "n_list entries must be positive");
        if (k > 0) require(n_list[k] > n_list[k - 1], "n_list must be strictly increasing");
    }
}

void finish(ConvergenceReport& report) {
    std::vector<double> ns, errs;
    for (const auto& r : report.rows) {
        ns.push_back(r.n);
        errs.push_back(r.error);
    }
    for (std::size_t k = 1; k < errs.size(); ++k) report.ratios.push_back(errs[k] / errs[k - 1]);
    report.slope = fit_loglog(ns, errs).slope;
}

} // namespace

LogLogFit fit_loglog(std::span<const double> n, std::span<const double> err) {
    require(n.size() == err.size() && n.size() >= 2, "fit_loglog needs matching inputs of length >= 2");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(n.size());
    for (std::size_t k = 0; k < n.size(); ++k) {
        require(n[k] > 0.0 && err[k] > 0.0, "fit_loglog needs positive data");
        const double lx = std::log(n[k]), ly = std::log(err[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    require(denom > 0.0, "fit_loglog needs distinct abscissae");
    LogLogFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    return fit;
}

ConvergenceReport cw_action_convergence(PlanePoint p, std::span<const int> n_list) {
    validate_n_list(n_list);
    const double limit = hj::lax_action(p).phi;
    ConvergenceReport report;
    report.model = "cw-action";
    for (int n : n_list) {
        const double v = hj::viscous_action(p, n);
        report.rows.push_back({n, v, limit, std::fabs(v - limit), 0.0});
    }
    finish(report);
    return report;
}

ConvergenceReport cw_velocity_convergence(PlanePoint p, std::span<const int> n_list) {
    validate_n_list(n_list);
    const double limit = hj::lax_action(p).u;
    ConvergenceReport report;
    report.model = "cw-velocity";
    for (int n : n_list) {
        const double v = hj::viscous_velocity(p, n);
        report.rows.push_back({n, v, limit, std::fabs(v - limit), 0.0});
    }
    finish(report);
    return report;
}

ConvergenceReport sk_identity_convergence(const sk::SkParams& params, std::span<const int> n_list,
                                          int n_samples, std::uint64_t seed) {
    validate_n_list(n_list);
    ConvergenceReport report;
    report.model = "sk-identities";
    for (int n : n_list) {
        const auto r = sk::sk_identity_residuals(params, n, n_samples, seed);
        report.rows.push_back({n, r.p4.value, 0.0, std::fabs(r.p4.value), r.p4.std_error});
    }
    finish(report);
    return report;
}

} // namespace mfhj
