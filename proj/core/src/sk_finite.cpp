#include "mfhj/sk_finite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace mfhj::sk {
namespace {

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const std::uint64_t h = splitmix(splitmix(splitmix(seed) ^ stream) ^ counter);
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;  // open interval (0, 1)
}

std::size_t pair_index(int n, int i, int j) {
    // i < j
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) -
           static_cast<std::size_t>(i) * static_cast<std::size_t>(i + 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
}

void validate_size(int n) {
    require(n >= 1, "n must be positive");
    require(n <= kMaxEnumeratedSpins, "n exceeds the exact-enumeration cap of 14 spins");
}

// In-place Walsh-Hadamard transform: out[mask] = sum_c in[c] (-1)^{|c & mask|}.
void walsh_hadamard(std::vector<double>& v) {
    for (std::size_t len = 1; len < v.size(); len <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const double a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

Estimate estimate(std::span<const double> z) {
    const double s = static_cast<double>(z.size());
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= s;
    double ss = 0.0;
    for (double v : z) ss += (v - mean) * (v - mean);
    const double sd = z.size() > 1 ? std::sqrt(ss / (s - 1.0)) : 0.0;
    return {mean, sd / std::sqrt(s)};
}

} // namespace

double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const double u1 = counter_uniform(seed, stream, 2 * counter);
    const double u2 = counter_uniform(seed, stream, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double DisorderSample::coupling(int i, int j) const {
    require(i != j && i >= 0 && j >= 0 && i < n && j < n, "coupling indices out of range");
    if (i > j) std::swap(i, j);
    return couplings[pair_index(n, i, j)];
}

DisorderSample draw_sample(int n, std::uint64_t seed, std::uint64_t index) {
    validate_size(n);
    DisorderSample s;
    s.n = n;
    s.seed = seed;
    s.index = index;
    const std::size_t n_pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
    s.couplings.resize(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) s.couplings[k] = counter_normal(seed, index, k);
    s.site_fields.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        s.site_fields[static_cast<std::size_t>(i)] = counter_normal(seed, index, n_pairs + static_cast<std::size_t>(i));
    return s;
}

double GibbsCorrelators::operator()(std::span<const int> sites) const {
    std::uint32_t mask = 0;
    for (int i : sites) {
        require(i >= 0 && i < n_, "site index out of range");
        mask ^= 1u << i;
    }
    return table_[mask];
}

GibbsCorrelators gibbs_correlators(const DisorderSample& sample, const SkParams& params) {
    validate(params);
    const int n = sample.n;
    validate_size(n);
    require(sample.couplings.size() == static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2 &&
                sample.site_fields.size() == static_cast<std::size_t>(n),
            "disorder sample has inconsistent sizes");

    const double pair_scale = std::sqrt(params.t / n);
    const double site_scale = std::sqrt(params.x);
    const std::size_t states = std::size_t{1} << n;

    // bit i set <=> sigma_i = -1
    std::vector<double> log_w(states);
    std::vector<double> spin(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < states; ++c) {
        for (int i = 0; i < n; ++i) spin[static_cast<std::size_t>(i)] = ((c >> i) & 1u) ? -1.0 : 1.0;
        double pair = 0.0;
        std::size_t k = 0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = i + 1; j < n; ++j) row += sample.couplings[k++] * spin[static_cast<std::size_t>(j)];
            pair += row * spin[static_cast<std::size_t>(i)];
        }
        double field = 0.0, magnet = 0.0;
        for (int i = 0; i < n; ++i) {
            field += sample.site_fields[static_cast<std::size_t>(i)] * spin[static_cast<std::size_t>(i)];
            magnet += spin[static_cast<std::size_t>(i)];
        }
        log_w[c] = pair_scale * pair + site_scale * field + params.beta_h * magnet;
    }

    const double shift = *std::max_element(log_w.begin(), log_w.end());
    double z = 0.0;
    for (double& v : log_w) {
        v = std::exp(v - shift);
        z += v;
    }
    for (double& v : log_w) v /= z;
    walsh_hadamard(log_w);
    return GibbsCorrelators(n, std::move(log_w));
}

OverlapMonomials overlap_monomials(const GibbsCorrelators& omega) {
    const int n = omega.n();
    const double nn = n;
    std::vector<std::uint32_t> pm(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pm[static_cast<std::size_t>(i * n + j)] = (1u << i) ^ (1u << j);

    auto w = [&](std::uint32_t mask) { return omega.by_mask(mask); };

    OverlapMonomials m;
    double s1 = 0.0;
    for (int i = 0; i < n; ++i) s1 += w(1u << i) * w(1u << i);

    double s2 = 0.0, s_q12q23 = 0.0, s3 = 0.0, s_q12q23_2 = 0.0, s4 = 0.0, s_q12_2q23_2 = 0.0;
    for (int a = 0; a < n * n; ++a) {
        const std::uint32_t ij = pm[static_cast<std::size_t>(a)];
        const double w_ij = w(ij);
        const int i = a / n, j = a % n;
        s2 += w_ij * w_ij;
        s_q12q23 += w(1u << i) * w_ij * w(1u << j);
        for (int k = 0; k < n; ++k) {
            const double w_ijk = w(ij ^ (1u << k));
            s3 += w_ijk * w_ijk;
        }
        for (int b = 0; b < n * n; ++b) {
            const std::uint32_t kl = pm[static_cast<std::size_t>(b)];
            const double w_ijkl = w(ij ^ kl);
            s4 += w_ijkl * w_ijkl;
            s_q12_2q23_2 += w_ij * w_ijkl * w(kl);
        }
    }
    // q12 q23^2: replica 1 carries s_i, replica 2 s_i s_j s_k, replica 3 s_j s_k
    for (int i = 0; i < n; ++i) {
        const double w_i = w(1u << i);
        for (int b = 0; b < n * n; ++b) {
            const std::uint32_t jk = pm[static_cast<std::size_t>(b)];
            s_q12q23_2 += w_i * w(jk ^ (1u << i)) * w(jk);
        }
    }

    m.q12 = s1 / nn;
    m.q12_2 = s2 / (nn * nn);
    m.q12_3 = s3 / (nn * nn * nn);
    m.q12_4 = s4 / (nn * nn * nn * nn);
    m.q12_q23 = s_q12q23 / (nn * nn);
    m.q12_q34 = m.q12 * m.q12;
    m.q12_q23_2 = s_q12q23_2 / (nn * nn * nn);
    m.q12_q34_2 = m.q12 * m.q12_2;
    m.q12_2_q23_2 = s_q12_2q23_2 / (nn * nn * nn * nn);
    m.q12_2_q34_2 = m.q12_2 * m.q12_2;
    return m;
}

std::vector<OverlapMonomials> sample_monomials(const SkParams& params, int n, int n_samples,
                                               std::uint64_t seed) {
    validate(params);
    validate_size(n);
    require(n_samples >= 2, "at least two disorder samples are required");

    std::vector<OverlapMonomials> out(static_cast<std::size_t>(n_samples));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int s = next++; s < n_samples; s = next++) {
            const auto sample = draw_sample(n, seed, static_cast<std::uint64_t>(s));
            out[static_cast<std::size_t>(s)] = overlap_monomials(gibbs_correlators(sample, params));
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads = std::min<unsigned>(hw, static_cast<unsigned>(n_samples));
    if (n_threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(work);
    }
    return out;
}

OverlapMoments reduce_moments(std::span<const OverlapMonomials> samples, int n) {
    require(samples.size() >= 2, "at least two disorder samples are required");
    const std::size_t s = samples.size();

    std::vector<double> q(s), q2(s), a1(s), b1(s), a2(s);
    for (std::size_t k = 0; k < s; ++k) {
        const auto& m = samples[k];
        q[k] = m.q12;
        q2[k] = m.q12_2;
        a1[k] = m.q12_3 - 4.0 * m.q12_q23_2 + 3.0 * m.q12_q34_2;
        b1[k] = m.q12_2 - 4.0 * m.q12_q23 + 3.0 * m.q12_q34;
        a2[k] = m.q12_4 - 4.0 * m.q12_2_q23_2 + 3.0 * m.q12_2_q34_2;
    }
    const double Q = estimate(q).value;
    const double Q2 = estimate(q2).value;
    const double A1 = estimate(a1).value;
    const double B1 = estimate(b1).value;
    const double A2 = estimate(a2).value;

    // delta-method linearizations around the sample means
    std::vector<double> z1(s), z2(s), z3(s), zv(s);
    for (std::size_t k = 0; k < s; ++k) {
        z1[k] = a1[k] - Q * b1[k] - B1 * q[k];
        z2[k] = a2[k] - Q * a1[k] - A1 * q[k];
        z3[k] = a2[k] - Q * Q * b1[k] - 2.0 * Q * B1 * q[k];
        zv[k] = 0.5 * (q2[k] - 2.0 * Q * q[k]);
    }

    OverlapMoments out;
    out.n = n;
    out.n_samples = static_cast<int>(s);
    out.q1 = estimate(q);
    out.q2 = estimate(q2);
    out.p1 = {A1 - Q * B1, estimate(z1).std_error};
    out.p2 = {A2 - Q * A1, estimate(z2).std_error};
    out.p3 = {A2 - Q * Q * B1, estimate(z3).std_error};
    out.p4 = estimate(a2);
    out.v_n = {0.5 * (Q2 - Q * Q), estimate(zv).std_error};
    return out;
}

OverlapMoments quenched_overlap_moments(const SkParams& params, int n, int n_samples,
                                        std::uint64_t seed) {
    const auto samples = sample_monomials(params, n, n_samples, seed);
    return reduce_moments(samples, n);
}

IdentityResiduals sk_identity_residuals(const SkParams& params, int n, int n_samples,
                                        std::uint64_t seed) {
    const auto m = quenched_overlap_moments(params, n, n_samples, seed);
    return {m.p1, m.p2, m.p3, m.p4, m.v_n};
}

} // namespace mfhj::sk
