#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "mfhj/convergence.hpp"

using namespace mfhj;

namespace {

TEST(FitLogLog, RecoversExactPowerLaw) {
    const std::vector<double> n{10, 20, 40, 80};
    std::vector<double> e;
    for (double v : n) e.push_back(3.0 * std::pow(v, -1.5));
    const auto fit = fit_loglog(n, e);
    EXPECT_NEAR(fit.slope, -1.5, 1e-13);
    EXPECT_NEAR(std::exp(fit.intercept), 3.0, 1e-12);
}

TEST(FitLogLog, RejectsDegenerateInput) {
    const std::vector<double> n{10, 10, 10}, e{1, 2, 3};
    EXPECT_THROW(fit_loglog(n, e), DomainError);
    const std::vector<double> zero{1, 0, 1}, ok{1, 2, 3};
    EXPECT_THROW(fit_loglog(ok, zero), DomainError);
    const std::vector<double> shorter{1, 2};
    EXPECT_THROW(fit_loglog(ok, shorter), DomainError);
}

TEST(CwConvergence, ActionSlopeNearMinusOne) {
    const std::vector<int> ns{50, 100, 200, 400, 800};
    const auto r = cw_action_convergence({0.3, 0.5}, ns);
    EXPECT_EQ(r.model, "cw-action");
    ASSERT_EQ(r.rows.size(), 5u);
    ASSERT_EQ(r.ratios.size(), 4u);
    EXPECT_LE(r.slope, -0.85);
    EXPECT_NEAR(r.slope, -1.0, 0.05);
    for (const auto& row : r.rows) {
        EXPECT_EQ(row.reference, r.rows.front().reference);
        EXPECT_EQ(row.error, std::fabs(row.value - row.reference));
        EXPECT_EQ(row.std_error, 0.0);
    }
}

TEST(CwConvergence, VelocitySlope) {
    const std::vector<int> ns{50, 100, 200, 400, 800};
    EXPECT_LE(cw_velocity_convergence({0.2, 2.0}, ns).slope, -0.5);
}

TEST(CwConvergence, ValidatesSizes) {
    const std::vector<int> two{10, 20};
    const std::vector<int> unsorted{10, 30, 20};
    const std::vector<int> negative{-1, 10, 20};
    EXPECT_THROW(cw_action_convergence({0.3, 0.5}, two), DomainError);
    EXPECT_THROW(cw_action_convergence({0.3, 0.5}, unsorted), DomainError);
    EXPECT_THROW(cw_velocity_convergence({0.3, 0.5}, negative), DomainError);
    const std::vector<int> ok{10, 20, 40};
    EXPECT_THROW(cw_action_convergence({0.0, 2.0}, ok), DomainError);
}

TEST(SkConvergence, P4DecreasesBeyondErrorBars) {
    const std::vector<int> ns{6, 8, 10, 12};
    const auto r = sk_identity_convergence({0.0, 0.36, 0.0}, ns, 600, 99);
    EXPECT_EQ(r.model, "sk-identities");
    for (std::size_t k = 1; k < r.rows.size(); ++k) {
        const auto& a = r.rows[k - 1];
        const auto& b = r.rows[k];
        EXPECT_GT(a.error - b.error, 2.0 * std::hypot(a.std_error, b.std_error)) << b.n;
    }
    EXPECT_LT(r.slope, 0.0);
}

} // namespace
