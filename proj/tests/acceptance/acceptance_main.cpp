// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mfhj/convergence.hpp"
#include "mfhj/cw_exact.hpp"
#include "mfhj/hj_limit.hpp"
#include "mfhj/sk_finite.hpp"
#include "mfhj/sk_rs.hpp"
#include "support/oracles.hpp"
#include "support/sk_enumeration.hpp"

using namespace mfhj;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::vector<int> kRateList{50, 100, 200, 400, 800};

Outcome cross_representation() {
    const auto start = std::chrono::steady_clock::now();
    double worst_phi = 0.0, worst_u = 0.0;
    for (int n : {10, 50, 100, 200})
        for (double x : {0.0, 0.25, 0.5, 1.0})
            for (double t : {0.25, 0.5, 1.0, 2.0}) {
                const PlanePoint p{x, t};
                const auto exact = cw::exact_fields(p, n);
                const double dphi = std::fabs(hj::viscous_action(p, n) - exact.phi) / std::fabs(exact.phi);
                const double du = std::fabs(hj::viscous_velocity(p, n) + exact.moment(1));
                worst_phi = std::max(worst_phi, dphi);
                worst_u = std::max(worst_u, du);
            }
    const double elapsed = seconds_since(start);
    return {worst_phi <= 1e-8 && worst_u <= 1e-8 && elapsed < 10.0,
            fmt("max rel action diff %.2e, max velocity diff %.2e, %.2f s", worst_phi, worst_u, elapsed)};
}

Outcome action_rate() {
    const auto start = std::chrono::steady_clock::now();
    const double a = cw_action_convergence({0.3, 0.5}, kRateList).slope;
    const double b = cw_action_convergence({0.3, 2.0}, kRateList).slope;
    const double elapsed = seconds_since(start);
    return {a <= -0.85 && b <= -0.85 && elapsed < 5.0,
            fmt("slopes %.4f at (0.3, 0.5) and %.4f at (0.3, 2), %.2f s", a, b, elapsed)};
}

Outcome velocity_rate() {
    const double s = cw_velocity_convergence({0.2, 2.0}, kRateList).slope;
    return {s <= -0.5, fmt("slope %.4f at (0.2, 2)", s)};
}

Outcome potential_scaling() {
    std::vector<double> nv;
    for (int n = 20; n <= 640; n *= 2) nv.push_back(n * cw::exact_fields({0.3, 2.0}, n).potential);
    double worst = 0.0;
    for (std::size_t i = 1; i < nv.size(); ++i) worst = std::max(worst, std::fabs(nv[i] / nv[i - 1] - 1.0));
    const double last = std::fabs(nv.back() / nv[nv.size() - 2] - 1.0);
    return {worst < 0.5 && last < 0.25,
            fmt("N*V_N from %.4f to %.4f, max step change %.1f%%, last %.1f%%", nv.front(), nv.back(),
                100 * worst, 100 * last)};
}

Outcome shock_geometry() {
    double sum = 0.0, eq = 0.0;
    for (double t : {1.5, 2.0, 3.0}) {
        const auto j = hj::shock_jump(t);
        sum = std::max(sum, std::fabs(j.u_plus + j.u_minus));
        for (double u : {j.u_plus, j.u_minus}) eq = std::max(eq, std::fabs(u + std::tanh(0.0 - u * t)));
    }
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), ut(0.0, 4.0);
    double lax_vs_sc = 0.0;
    for (int k = 0; k < 100;) {
        const PlanePoint p{ux(rng), ut(rng)};
        if (p.x == 0.0) continue;
        ++k;
        const double u = hj::lax_action(p).u;
        eq = std::max(eq, std::fabs(u + std::tanh(p.x - u * p.t)));
        lax_vs_sc = std::max(lax_vs_sc, std::fabs(u - hj::self_consistent_magnetization(p, Side::plus)));
    }
    return {sum < 1e-10 && eq < 1e-12 && lax_vs_sc < 1e-10,
            fmt("|u+ + u-| %.1e, self-consistency residual %.1e, Lax vs solver %.1e", sum, eq, lax_vs_sc)};
}

Outcome critical_line() {
    const double closed = std::atanh(std::sqrt(0.5)) - std::sqrt(2.0);
    const double diff = std::fabs(hj::critical_line(2.0) - closed);

    std::vector<double> x0(200);
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] = 4.0 * static_cast<double>(i) / 199.0;
    int right = 0, left = 0;
    for (const auto& c : hj::characteristic_crossings(x0, 4.0)) {
        if (c.at.t <= 1.0) {
            ++right;  // no fold exists before t = 1
            continue;
        }
        (c.at.x >= hj::critical_line(c.at.t) ? right : left) += 1;
    }
    return {diff < 1e-12 && right == 0 && left >= 1,
            fmt("x_c(2) error %.1e; crossings with x >= x_c: %d, with x < x_c: %d", diff, right, left)};
}

Outcome conservation() {
    const std::vector<int> ns{20, 40, 80, 160, 320};
    std::array<std::vector<double>, 3> scaled;
    for (int n : ns) {
        const auto r = cw::conservation_residuals({0.3, 0.5}, n);
        scaled[0].push_back(n * std::fabs(r.r1));
        scaled[1].push_back(n * std::fabs(r.r2));
        scaled[2].push_back(n * std::fabs(r.r3));
    }
    bool bounded = true;
    std::string detail;
    for (std::size_t i = 0; i < 3; ++i) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t k = 1; k < ns.size(); ++k) {
            const double ratio = scaled[i][k] / scaled[i][k - 1];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        bounded = bounded && lo >= 0.4 && hi <= 2.5;
        detail += fmt("N|r%zu| ratios in [%.3g, %.3g]; ", i + 1, lo, hi);
    }
    double r1_sym = 0.0;
    for (int n : ns)
        for (double t : {0.5, 1.0, 2.0}) r1_sym = std::max(r1_sym, std::fabs(cw::conservation_residuals({0.0, t}, n).r1));
    const bool sym = r1_sym <= std::numeric_limits<double>::epsilon();
    return {bounded && sym, detail + fmt("max |r1| at x = 0: %.1e", r1_sym)};
}

Outcome sk_criticality() {
    const auto root = sk::caustic_root(0.0, 0.0, 0.5, 2.0);
    const double root_err = root ? std::fabs(*root - 1.0) : std::numeric_limits<double>::infinity();
    double q_max = 0.0;
    for (int k = 0; k <= 100; ++k) q_max = std::max(q_max, sk::solve_qbar({0.0, k / 100.0, 0.0}));
    double annealed = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double b = k / 100.0;
        annealed = std::max(annealed, std::fabs(sk::rs_pressure(b, 0.0).pressure - std::log(2.0) - b * b / 4.0));
    }
    double recon = 0.0;
    for (double b : {0.5, 1.2})
        for (double h : {0.0, 0.3}) recon = std::max(recon, sk::rs_pressure(b, h).discrepancy);
    return {root_err <= 1e-10 && q_max == 0.0 && annealed <= 1e-12 && recon <= 1e-10,
            fmt("root error %.1e, max q_bar for t <= 1: %.1e, annealed error %.1e, reconstruction %.1e", root_err,
                q_max, annealed, recon)};
}

Outcome sk_boundary() {
    const auto start = std::chrono::steady_clock::now();
    const auto m = sk::quenched_overlap_moments({0.4, 0.0, 0.2}, 8, 2000, 20240917);
    const double elapsed = seconds_since(start);
    const double target = oracle::e_tanh_sq(0.2, 0.4);
    const double z = std::fabs(m.q1.value - target) / m.q1.std_error;
    return {z <= 3.0 && elapsed < 60.0,
            fmt("<q12> = %.6f +- %.6f vs %.6f (%.2f sigma), %.2f s", m.q1.value, m.q1.std_error, target, z, elapsed)};
}

Outcome sk_identity_scaling() {
    const sk::SkParams p{0.0, 0.36, 0.0};
    const auto small = sk::quenched_overlap_moments(p, 6, 600, 99);
    const auto large = sk::quenched_overlap_moments(p, 12, 600, 99);
    const double drop = std::fabs(small.p4.value) - std::fabs(large.p4.value);
    const double sigma = std::hypot(small.p4.std_error, large.p4.std_error);

    double worst = 0.0;
    for (int n = 2; n <= 6; ++n)
        for (const sk::SkParams& q : {p, sk::SkParams{0.4, 1.5, 0.3}}) {
            const auto s = sk::draw_sample(n, 31, static_cast<std::uint64_t>(n));
            const auto got = sk::overlap_monomials(sk::gibbs_correlators(s, q));
            const auto ref = oracle::replica_enumeration(oracle::boltzmann(s, q), n);
            for (auto f : {&sk::OverlapMonomials::q12, &sk::OverlapMonomials::q12_2, &sk::OverlapMonomials::q12_3,
                           &sk::OverlapMonomials::q12_4, &sk::OverlapMonomials::q12_q23,
                           &sk::OverlapMonomials::q12_q34, &sk::OverlapMonomials::q12_q23_2,
                           &sk::OverlapMonomials::q12_q34_2, &sk::OverlapMonomials::q12_2_q23_2,
                           &sk::OverlapMonomials::q12_2_q34_2})
                worst = std::max(worst, std::fabs(got.*f - ref.*f));
        }
    return {drop > 2.0 * sigma && worst <= 1e-12,
            fmt("|p4| %.3e (n=6) -> %.3e (n=12), drop %.1f sigma; replica enumeration diff %.1e",
                std::fabs(small.p4.value), std::fabs(large.p4.value), drop / sigma, worst)};
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return out;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
    pclose(pipe);
    return out;
}

Outcome determinism() {
    const std::string exe = MFHJ_CLI_PATH;
    const std::vector<std::string> commands = {
        "sk finite --x 0.4 --t 0.3 --beta-h 0.2 --n 8 --samples 200 --seed 5",
        "sk finite --x 0.4 --t 0.3 --n 6 --samples 100 --seed 5 --format csv",
        "sweep --model sk-finite --n 6 --samples 40 --seed 3 --x-max 1 --n-x 3 --t-max 1 --n-t 3 --format csv",
        "sweep --model sk-finite --n 5 --samples 40 --seed 3 --x-max 1 --n-x 2 --t-max 1 --n-t 2",
        "convergence --model sk-identities --t 0.36 --n-list 4,6,8 --samples 60 --seed 1",
        "convergence --model sk-identities --t 0.36 --n-list 4,6,8 --samples 60 --seed 1 --format csv"};
    int identical = 0;
    for (const auto& c : commands) {
        const auto a = capture(exe + " " + c);
        const auto b = capture(exe + " " + c);
        if (!a.empty() && a == b) ++identical;
    }
    return {identical == static_cast<int>(commands.size()),
            fmt("%d of %zu seeded commands byte-identical across runs", identical, commands.size())};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"cross-representation exactness", cross_representation},
        {"action convergence rate", action_rate},
        {"velocity convergence rate", velocity_rate},
        {"potential 1/N scaling", potential_scaling},
        {"shock geometry", shock_geometry},
        {"critical line", critical_line},
        {"conservation identities", conservation},
        {"SK criticality", sk_criticality},
        {"SK finite-N boundary", sk_boundary},
        {"SK identity scaling", sk_identity_scaling},
        {"determinism", determinism}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu of %zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
