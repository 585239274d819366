#pragma once

#include <span>
#include <vector>

namespace mfhj {

/// Gauss-Hermite rule rescaled to the standard normal: for smooth f,
/// E_g f(g) ~= sum_i weights[i] * f(nodes[i]), g ~ N(0, 1).
class GaussHermiteRule {
public:
    explicit GaussHermiteRule(int order);

    /// Shared order-120 rule, built once.
    static const GaussHermiteRule& standard();

    int order() const { return static_cast<int>(nodes_.size()); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    template <class F>
    double expectation(F&& f) const {
        // nodes[i] and nodes[n-1-i] are mirror images; pairs are summed
        // from the tails inwards
        const std::size_t n = nodes_.size();
        double sum = 0.0;
        for (std::size_t i = 0; i < n / 2; ++i) sum += weights_[i] * (f(nodes_[i]) + f(nodes_[n - 1 - i]));
        if (n % 2 == 1) sum += weights_[n / 2] * f(nodes_[n / 2]);
        return sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

} // namespace mfhj
