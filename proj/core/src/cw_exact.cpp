#include "mfhj/cw_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mfhj::cw {
namespace {

void validate_inputs(PlanePoint p, int n) {
    require(n >= 1, "n must be a positive integer");
    validate(p);
}

void validate_step(PlanePoint p, double step) {
    require(std::isfinite(step) && step > 0.0, "step must be positive");
    require(p.t - step >= 0.0, "t - step must be non-negative");
}

// Magnetization levels grouped as mirror pairs (+m, -m) sharing one
// binomial coefficient, so that the x -> -x symmetry is exact in floating
// point. `minus` is unused when m == 0 (N even, k = N/2).
struct LevelPair {
    double m = 0.0;  // >= 0
    double log_plus = 0.0;
    double log_minus = 0.0;
    bool paired = true;
};

std::vector<LevelPair> level_pairs(PlanePoint p, int n) {
    const double nn = n;
    const double lg_n = std::lgamma(nn + 1.0);
    std::vector<LevelPair> out;
    out.reserve(static_cast<std::size_t>(n / 2) + 1);
    for (int k = 0; 2 * k <= n; ++k) {
        LevelPair lp;
        lp.m = (nn - 2.0 * k) / nn;
        const double log_binom = lg_n - std::lgamma(k + 1.0) - std::lgamma(nn - k + 1.0);
        const double even = log_binom + nn * 0.5 * p.t * lp.m * lp.m;
        lp.log_plus = even + nn * p.x * lp.m;
        lp.log_minus = even - nn * p.x * lp.m;
        lp.paired = 2 * k != n;
        out.push_back(lp);
    }
    return out;
}

double max_log(const std::vector<LevelPair>& levels) {
    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& lp : levels) shift = std::max({shift, lp.log_plus, lp.log_minus});
    return shift;
}

} // namespace

double log_partition(PlanePoint p, int n) {
    validate_inputs(p, n);
    const auto levels = level_pairs(p, n);
    const double shift = max_log(levels);
    double sum = 0.0;
    for (const auto& lp : levels) {
        sum += std::exp(lp.log_plus - shift) + (lp.paired ? std::exp(lp.log_minus - shift) : 0.0);
    }
    return (shift + std::log(sum)) / n;
}

ExactFields exact_fields(PlanePoint p, int n, int k_max) {
    validate_inputs(p, n);
    require(k_max >= 4, "k_max must be at least 4");

    const auto levels = level_pairs(p, n);
    const double shift = max_log(levels);

    std::vector<double> acc(static_cast<std::size_t>(k_max) + 1, 0.0);
    const double nn = n;
    for (const auto& lp : levels) {
        const double w_plus = std::exp(lp.log_plus - shift);
        const double w_minus = lp.paired ? std::exp(lp.log_minus - shift) : 0.0;
        double m_power = 1.0;
        for (int j = 0; j <= k_max; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            acc[static_cast<std::size_t>(j)] += w_plus * m_power + sign * w_minus * m_power;
            m_power *= lp.m;
        }
    }

    ExactFields f;
    f.n = n;
    f.phi = -(shift + std::log(acc[0])) / nn;
    f.moments.resize(acc.size());
    f.moments[0] = 1.0;
    for (std::size_t j = 1; j < acc.size(); ++j) f.moments[j] = acc[j] / acc[0];
    f.u = -f.moments[1];
    f.potential = 0.5 * (f.moments[2] - f.moments[1] * f.moments[1]);
    return f;
}

double hj_residual(PlanePoint p, int n, double step) {
    validate_inputs(p, n);
    validate_step(p, step);
    const double h = step;
    auto phi = [n](double x, double t) { return -log_partition({x, t}, n); };

    const double c = phi(p.x, p.t);
    const double dt = (phi(p.x, p.t + h) - phi(p.x, p.t - h)) / (2.0 * h);
    const double xp = phi(p.x + h, p.t);
    const double xm = phi(p.x - h, p.t);
    const double dx = (xp - xm) / (2.0 * h);
    const double dxx = (xp - 2.0 * c + xm) / (h * h);
    return std::fabs(dt + 0.5 * dx * dx - dxx / (2.0 * n));
}

double continuity_residual(PlanePoint p, int n, double step) {
    validate_inputs(p, n);
    validate_step(p, step);
    const double h = step;
    const double nn = n;
    // log rho_N(x, t) = N A_N(x, 2t) - N log 2
    auto log_rho = [&](double x, double t) {
        return nn * log_partition({x, 2.0 * t}, n) - nn * std::log(2.0);
    };

    const double dt = (log_rho(p.x, p.t + h) - log_rho(p.x, p.t - h)) / (2.0 * h);
    const double dx = (log_rho(p.x + h, p.t) - log_rho(p.x - h, p.t)) / (2.0 * h);
    const auto f = exact_fields({p.x, 2.0 * p.t}, n);
    return std::fabs(dt + f.u * dx - 2.0 * nn * f.potential);
}

ConservationResiduals conservation_residuals(PlanePoint p, int n) {
    const auto f = exact_fields(p, n, 4);
    const double m1 = f.moments[1], m2 = f.moments[2], m3 = f.moments[3], m4 = f.moments[4];
    ConservationResiduals r;
    r.r1 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
    r.r3 = m4 - m2 * m2;
    r.r2 = r.r3 - 2.0 * m1 * m3 + 2.0 * m1 * m1 * m2;
    return r;
}

} // namespace mfhj::cw
