#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mfhj/sk_rs.hpp"

/// Finite-N SK checks by exact enumeration of 2^n configurations per
/// disorder sample, averaged over quenched Gaussian couplings.
namespace mfhj::sk {

inline constexpr int kMaxEnumeratedSpins = 14;

/// Standard normal keyed by (seed, stream, counter); independent of the
/// order in which values are requested.
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

struct DisorderSample {
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    std::vector<double> couplings;    // J_ij for i < j, row-major packed
    std::vector<double> site_fields;  // J_i

    double coupling(int i, int j) const;
};

/// Couplings are counters 0 .. n(n-1)/2 - 1 of stream `index`; site fields
/// follow them.
DisorderSample draw_sample(int n, std::uint64_t seed, std::uint64_t index);

/// All spin correlators omega(sigma_{i1} ... sigma_{ik}) of one sample.
/// A product over a multiset of sites reduces to its parity mask.
class GibbsCorrelators {
public:
    GibbsCorrelators(int n, std::vector<double> table) : n_(n), table_(std::move(table)) {}

    int n() const { return n_; }
    double by_mask(std::uint32_t mask) const { return table_[mask]; }
    double operator()(std::span<const int> sites) const;

private:
    int n_;
    std::vector<double> table_;  // indexed by parity mask
};

/// Boltzmann weights exp(sqrt(t/N) sum_{i<j} J_ij s_i s_j + sqrt(x) sum_i J_i s_i
/// + beta_h sum_i s_i) over all 2^n states, Walsh-Hadamard transformed
/// into correlators. n <= 14.
GibbsCorrelators gibbs_correlators(const DisorderSample& sample, const SkParams& params);

/// Replica-factorized overlap monomials Omega(.) of one disorder sample.
struct OverlapMonomials {
    double q12 = 0.0;
    double q12_2 = 0.0;
    double q12_3 = 0.0;
    double q12_4 = 0.0;
    double q12_q23 = 0.0;
    double q12_q34 = 0.0;
    double q12_q23_2 = 0.0;
    double q12_q34_2 = 0.0;
    double q12_2_q23_2 = 0.0;
    double q12_2_q34_2 = 0.0;
};

OverlapMonomials overlap_monomials(const GibbsCorrelators& omega);

/// Per-sample monomials for samples 0 .. n_samples-1, ordered by index.
/// Samples are evaluated on worker threads; the result does not depend on
/// the thread count.
std::vector<OverlapMonomials> sample_monomials(const SkParams& params, int n, int n_samples,
                                               std::uint64_t seed);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Quenched averages <.> = E Omega(.) and the overlap identity polynomials
///   p1 = <q12^3 - 4 q12 q23^2 + 3 q12 q34^2> - <q12><q12^2 - 4 q12 q23 + 3 q12 q34>
///   p2 = <q12^4 - 4 q12^2 q23^2 + 3 q12^2 q34^2> - <q12><q12^3 - 4 q12 q23^2 + 3 q12 q34^2>
///   p3 = <q12^4 - 4 q12^2 q23^2 + 3 q12^2 q34^2> - <q12>^2 <q12^2 - 4 q12 q23 + 3 q12 q34>
///   p4 = <q12^4 - 4 q12^2 q23^2 + 3 q12^2 q34^2>
/// Standard errors of products of averages use the delta method.
struct OverlapMoments {
    int n = 0;
    int n_samples = 0;
    Estimate q1;
    Estimate q2;
    Estimate p1;
    Estimate p2;
    Estimate p3;
    Estimate p4;
    Estimate v_n;  // (<q12^2> - <q12>^2) / 2
};

OverlapMoments reduce_moments(std::span<const OverlapMonomials> samples, int n);

OverlapMoments quenched_overlap_moments(const SkParams& params, int n, int n_samples,
                                        std::uint64_t seed);

struct IdentityResiduals {
    Estimate p1;
    Estimate p2;
    Estimate p3;
    Estimate p4;  // meaningful at beta_h = 0 only
    Estimate v_n;
};

IdentityResiduals sk_identity_residuals(const SkParams& params, int n, int n_samples,
                                        std::uint64_t seed);

} // namespace mfhj::sk
