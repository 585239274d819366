#include "mfhj/gauss_hermite.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mfhj/errors.hpp"

namespace mfhj {

// Newton on the orthonormal Hermite recurrence for the physicists' rule
// (weight exp(-z^2)), then g = sqrt(2) z and w -> w / sqrt(pi).
GaussHermiteRule::GaussHermiteRule(int order) {
    if (order < 2) throw DomainError("Gauss-Hermite order must be at least 2");
    const int n = order;
    const int half = (n + 1) / 2;
    const double pim4 = std::pow(std::numbers::pi, -0.25);

    std::vector<double> z(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    double root = 0.0;
    for (int i = 0; i < half; ++i) {
        // initial guesses for the largest roots first
        if (i == 0) root = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1) root -= 1.14 * std::pow(static_cast<double>(n), 0.426) / root;
        else if (i == 2) root = 1.86 * root - 0.86 * z[0];
        else if (i == 3) root = 1.91 * root - 0.91 * z[1];
        else root = 2.0 * root - z[static_cast<std::size_t>(i - 2)];

        double dp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = root * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            dp = std::sqrt(2.0 * n) * p2;
            const double step = p1 / dp;
            root -= step;
            if (std::fabs(step) <= 1e-15 * std::fmax(1.0, std::fabs(root))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ConvergenceError("Gauss-Hermite root did not converge", 0.0);
        z[static_cast<std::size_t>(i)] = root;
        z[static_cast<std::size_t>(n - 1 - i)] = -root;
        w[static_cast<std::size_t>(i)] = 2.0 / (dp * dp);
        w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
    }

    nodes_.resize(z.size());
    weights_.resize(w.size());
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    for (std::size_t i = 0; i < z.size(); ++i) {
        nodes_[i] = std::numbers::sqrt2 * z[i];
        weights_[i] = w[i] * inv_sqrt_pi;
    }
}

const GaussHermiteRule& GaussHermiteRule::standard() {
    static const GaussHermiteRule rule(120);
    return rule;
}

} // namespace mfhj
