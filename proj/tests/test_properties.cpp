// Randomized properties over hand-rolled generators with fixed seeds.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mfhj/cw_exact.hpp"
#include "mfhj/hj_limit.hpp"
#include "mfhj/sk_rs.hpp"

using namespace mfhj;

namespace {

constexpr int kCases = 100;

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    // Points with |x| bounded away from the shock line.
    PlanePoint off_shock(double x_max, double t_max) {
        double x = 0.0;
        while (std::fabs(x) < 1e-3) x = uniform(-x_max, x_max);
        return {x, uniform(0.0, t_max)};
    }
};

TEST(CwProperties, SpinFlipSymmetry) {
    Gen g(1);
    for (int k = 0; k < kCases; ++k) {
        const double x = g.uniform(-3, 3), t = g.uniform(0, 4);
        const int n = g.integer(1, 300);
        const auto a = cw::exact_fields({x, t}, n);
        const auto b = cw::exact_fields({-x, t}, n);
        EXPECT_EQ(a.phi, b.phi);
        EXPECT_EQ(a.u, -b.u);
        EXPECT_EQ(a.potential, b.potential);
    }
}

TEST(CwProperties, MomentsAreAdmissible) {
    Gen g(2);
    for (int k = 0; k < kCases; ++k) {
        const double x = g.uniform(-3, 3), t = g.uniform(0, 4);
        const int n = g.integer(1, 300);
        const auto f = cw::exact_fields({x, t}, n);
        EXPECT_LE(std::fabs(f.u), 1.0);
        EXPECT_GE(f.potential, -1e-16);
        EXPECT_LE(f.moment(2), 1.0 + 1e-15);
        EXPECT_GE(f.moment(2), f.moment(1) * f.moment(1) - 1e-15);
        EXPECT_GE(f.moment(4), f.moment(2) * f.moment(2) - 1e-15);
    }
}

TEST(CwProperties, ActionIsConcaveInXAndDecreasingInT) {
    // d_xx phi = -N Var(m) <= 0, d_t phi = -<m^2>/2 <= 0.
    Gen g(3);
    for (int k = 0; k < kCases; ++k) {
        const double x = g.uniform(-2, 2), t = g.uniform(0.1, 3);
        const int n = g.integer(2, 100);
        const double h = 1e-3;
        const double c = cw::exact_fields({x, t}, n).phi;
        const double l = cw::exact_fields({x - h, t}, n).phi, r = cw::exact_fields({x + h, t}, n).phi;
        EXPECT_LE(l - 2 * c + r, 1e-12);
        EXPECT_LE(cw::exact_fields({x, t + h}, n).phi, c + 1e-15);
    }
}

TEST(LimitProperties, LaxAgreesWithSelfConsistency) {
    Gen g(4);
    for (int k = 0; k < kCases; ++k) {
        const auto p = g.off_shock(2.5, 4.0);
        const auto s = hj::lax_action(p);
        const double u = hj::self_consistent_magnetization(p, Side::plus);
        EXPECT_NEAR(s.u, u, 1e-10) << p.x << "," << p.t;
        EXPECT_LT(std::fabs(u + std::tanh(p.x - u * p.t)), 1e-12);
        EXPECT_LT(s.u * p.x, 0.0);
    }
}

TEST(LimitProperties, MinimizerMonotoneAndVelocityDecreasing) {
    Gen g(5);
    for (int k = 0; k < 20; ++k) {
        const double t = g.uniform(0.05, 4.0);
        double prev_y = -INFINITY, prev_u = INFINITY;
        for (double x = -2.0; x <= 2.0; x += 0.05) {
            if (std::fabs(x) < 1e-9) continue;
            const auto s = hj::lax_action({x, t});
            EXPECT_GE(s.y_star, prev_y);
            EXPECT_LT(s.u, prev_u);
            prev_y = s.y_star;
            prev_u = s.u;
        }
    }
}

TEST(LimitProperties, VelocitySlopeMatchesClosedForm) {
    // Differentiating u = -tanh(x - u t): d_x u = -(1 - u^2) / (1 - t (1 - u^2)).
    Gen g(6);
    for (int k = 0; k < kCases; ++k) {
        const auto p = g.off_shock(2.0, 3.0);
        const double h = 1e-6;
        if (std::fabs(p.x) < 10 * h) continue;
        const double u = hj::lax_action(p).u;
        const double du = (hj::lax_action({p.x + h, p.t}).u - hj::lax_action({p.x - h, p.t}).u) / (2 * h);
        const double s = 1.0 - u * u;
        EXPECT_NEAR(du, -s / (1.0 - p.t * s), 1e-5 * (1.0 + std::fabs(du)));
        EXPECT_LT(du, 0.0);
    }
}

TEST(LimitProperties, ViscousAgreesWithBinomial) {
    Gen g(7);
    for (int k = 0; k < 30; ++k) {
        const double x = g.uniform(-1.5, 1.5), t = g.uniform(0.05, 3.0);
        const int n = g.integer(5, 300);
        const auto f = cw::exact_fields({x, t}, n);
        EXPECT_NEAR(hj::viscous_action({x, t}, n), f.phi, 1e-8 * std::fabs(f.phi));
        EXPECT_NEAR(hj::viscous_velocity({x, t}, n), f.u, 1e-8);
    }
}

TEST(RsProperties, FixedPointIsAdmissible) {
    Gen g(8);
    for (int k = 0; k < kCases; ++k) {
        const sk::SkParams p{g.uniform(0, 2), g.uniform(0, 4), g.uniform(-1, 1)};
        const auto s = sk::rs_action(p);
        EXPECT_GE(s.q_bar, 0.0);
        EXPECT_LE(s.q_bar, 1.0);
        EXPECT_LT(std::fabs(s.residual), 1e-12);
        EXPECT_GE(s.caustic_margin, -1e-12) << p.x << "," << p.t << "," << p.beta_h;
        EXPECT_EQ(sk::solve_qbar(p), sk::solve_qbar({p.x, p.t, -p.beta_h}));
    }
}

TEST(RsProperties, PressureReconstruction) {
    Gen g(9);
    for (int k = 0; k < 40; ++k) {
        const auto r = sk::rs_pressure(g.uniform(0, 2.5), g.uniform(-1, 1));
        EXPECT_LT(r.discrepancy, 1e-10);
    }
}

} // namespace
