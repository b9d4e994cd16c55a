#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include "volrat/error.hpp"
#include "volrat/spectrum.hpp"

namespace volrat {

namespace detail {

// Philox4x32-10 block cipher (Salmon et al.): a pure function of
// (key, counter), which is what makes sample streams independent of how
// samples are partitioned across workers.
struct philox4x32 {
    static constexpr std::uint32_t mult_a = 0xD2511F53u;
    static constexpr std::uint32_t mult_b = 0xCD9E8D57u;
    static constexpr std::uint32_t weyl_a = 0x9E3779B9u;
    static constexpr std::uint32_t weyl_b = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              std::uint64_t ctr_hi,
                                              std::uint64_t ctr_lo) {
        std::array<std::uint32_t, 4> c = {
            static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
            static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(mult_a) * c[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(mult_b) * c[2];
            c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
                 static_cast<std::uint32_t>(p0)};
            k0 += weyl_a;
            k1 += weyl_b;
        }
        return c;
    }
};

} // namespace detail

/// Deterministic per-sample stream of standard normal deviates: sample i of
/// seed s reads Philox blocks keyed (s, counter = (i, block)), so the stream
/// is a pure function of (seed, i) no matter which worker consumes it.
class normal_stream {
public:
    normal_stream(std::uint64_t seed, std::uint64_t sample_index)
        : seed_(seed), sample_(sample_index) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto b = detail::philox4x32::block(seed_, sample_, block_++);
        const std::uint64_t u0 =
            (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
        const std::uint64_t u1 =
            (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
        // Box-Muller; u in (0,1] keeps the log finite
        const double u = ((u0 >> 11) + 1) * 0x1.0p-53;
        const double v = (u1 >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u));
        const double angle = 2.0 * M_PI * v;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

private:
    std::uint64_t seed_;
    std::uint64_t sample_;
    std::uint64_t block_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// A Monte Carlo estimate of the measure with its 99% Wilson score interval.
struct mc_estimate {
    std::int64_t hits = 0;
    std::int64_t samples = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t seed = 0;
    double delta = 0.0;
};

/// Two-sided 99% Wilson score interval for hits successes in samples trials.
inline std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t samples) {
    constexpr double z = 2.5758293035489004; // 99.5th standard normal percentile
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    const double z2n = z * z / n;
    const double center = (p + 0.5 * z2n) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / (1.0 + z2n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// Draws x with independent standard normal coordinates in the ambient
/// dimension and returns ||Sigma x|| / (sigma_m ||x||) in [0, 1], where
/// Sigma applies sigma_k to the k-th coordinate and zero weight beyond m.
inline double sample_ratio(const spectrum& s, normal_stream& rng) {
    double weighted = 0.0; // sum sigma_k^2 x_k^2 over the first m coordinates
    double norm2 = 0.0;    // sum x_k^2 over all n coordinates
    for (const auto& e : s.entries()) {
        const double s2 = e.value * e.value;
        for (std::int64_t i = 0; i < e.count; ++i) {
            const double g = rng.next();
            weighted += s2 * g * g;
            norm2 += g * g;
        }
    }
    for (int i = s.m(); i < s.ambient_n(); ++i) {
        const double g = rng.next();
        norm2 += g * g;
    }
    const double smax = s.sigma_max();
    return std::sqrt(weighted / norm2) / smax;
}

namespace detail {

template <class PerSample>
inline void run_partitioned(std::int64_t samples, int workers, PerSample&& body) {
    workers = std::max(1, workers);
    if (workers == 1) {
        body(0, samples, 0);
        return;
    }
    std::vector<std::thread> pool;
    const std::int64_t chunk = (samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(samples, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&body, lo, hi, w] { body(lo, hi, w); });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace detail

/// Estimates the measure of {x : ||Ax|| < delta ||A|| ||x||} by counting
/// sample_ratio < delta. Bit-identical results for fixed (seed, samples)
/// regardless of the worker count: hits are integer sums of per-sample
/// predicates that depend only on (seed, sample index).
inline mc_estimate estimate_measure(const spectrum& s, double delta,
                                    std::int64_t samples, std::uint64_t seed,
                                    int workers = 1) {
    if (samples < 1)
        throw usage_error("estimate_measure: requires samples >= 1");
    if (!(delta >= 0.0 && delta < 1.0))
        throw domain_error("estimate_measure: requires delta in [0, 1)");
    workers = std::max(1, workers);
    std::vector<std::int64_t> partial(static_cast<size_t>(workers), 0);
    detail::run_partitioned(samples, workers,
                            [&](std::int64_t lo, std::int64_t hi, int w) {
                                std::int64_t h = 0;
                                for (std::int64_t i = lo; i < hi; ++i) {
                                    normal_stream rng(seed, static_cast<std::uint64_t>(i));
                                    if (sample_ratio(s, rng) < delta)
                                        ++h;
                                }
                                partial[static_cast<size_t>(w)] = h;
                            });
    mc_estimate r;
    for (std::int64_t h : partial)
        r.hits += h;
    r.samples = samples;
    r.p_hat = static_cast<double>(r.hits) / static_cast<double>(samples);
    std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.hits, samples);
    r.seed = seed;
    r.delta = delta;
    return r;
}

/// Empirical distribution function of the ratio over an ascending grid of
/// delta values, from a single pass over the samples. The estimates are
/// cumulative, hence monotone nondecreasing across the grid.
inline std::vector<mc_estimate> estimate_cdf(const spectrum& s,
                                             std::span<const double> grid,
                                             std::int64_t samples, std::uint64_t seed,
                                             int workers = 1) {
    if (samples < 1)
        throw usage_error("estimate_cdf: requires samples >= 1");
    for (size_t j = 0; j < grid.size(); ++j) {
        if (!(grid[j] >= 0.0 && grid[j] < 1.0))
            throw usage_error("estimate_cdf: grid values must lie in [0, 1)");
        if (j > 0 && !(grid[j] > grid[j - 1]))
            throw usage_error("estimate_cdf: grid must be sorted ascending");
    }
    workers = std::max(1, workers);
    // histogram over grid cells: cell j counts samples whose ratio falls
    // between grid[j-1] and grid[j]; prefix sums give the CDF counts
    std::vector<std::vector<std::int64_t>> partial(
        static_cast<size_t>(workers), std::vector<std::int64_t>(grid.size() + 1, 0));
    detail::run_partitioned(samples, workers,
                            [&](std::int64_t lo, std::int64_t hi, int w) {
                                auto& hist = partial[static_cast<size_t>(w)];
                                for (std::int64_t i = lo; i < hi; ++i) {
                                    normal_stream rng(seed, static_cast<std::uint64_t>(i));
                                    const double ratio = sample_ratio(s, rng);
                                    const auto it = std::upper_bound(grid.begin(), grid.end(), ratio);
                                    hist[static_cast<size_t>(it - grid.begin())]++;
                                }
                            });
    std::vector<mc_estimate> out(grid.size());
    std::int64_t cumulative = 0;
    for (size_t j = 0; j < grid.size(); ++j) {
        for (int w = 0; w < workers; ++w)
            cumulative += partial[static_cast<size_t>(w)][j];
        auto& r = out[j];
        r.hits = cumulative;
        r.samples = samples;
        r.p_hat = static_cast<double>(cumulative) / static_cast<double>(samples);
        std::tie(r.ci_lo, r.ci_hi) = wilson_interval(cumulative, samples);
        r.seed = seed;
        r.delta = grid[j];
    }
    return out;
}

} // namespace volrat
