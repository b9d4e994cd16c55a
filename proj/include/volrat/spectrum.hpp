#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "volrat/error.hpp"
#include "volrat/exact.hpp"

namespace volrat {

struct spectrum_entry {
    double value;
    std::int64_t count;
};

/// Ascending singular values sigma_1 <= ... <= sigma_m of a full-rank
/// (m x n)-matrix, run-length encoded so that evaluation costs scale with
/// the number of distinct values, not with m.
class spectrum {
public:
    spectrum(std::vector<spectrum_entry> entries, int ambient_n)
        : entries_(std::move(entries)), n_(ambient_n) {
        if (entries_.empty())
            throw usage_error("spectrum: no singular values");
        std::int64_t m = 0;
        double prev = 0.0;
        for (const auto& e : entries_) {
            if (!(e.value > 0.0))
                throw usage_error("spectrum: singular values must be positive");
            if (!(e.value > prev))
                throw usage_error("spectrum: values must be strictly increasing");
            if (e.count < 1)
                throw usage_error("spectrum: counts must be positive");
            prev = e.value;
            m += e.count;
        }
        if (m >= n_)
            throw usage_error("spectrum: requires total count m < ambient n");
        m_ = static_cast<int>(m);
    }

    /// All singular values equal to one: an orthogonal projection.
    static spectrum identity(int m, int n) {
        return spectrum({{1.0, m}}, n);
    }

    const std::vector<spectrum_entry>& entries() const noexcept { return entries_; }
    int ambient_n() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    dimensions dims() const { return dimensions(m_, n_); }
    double xi() const { return dims().xi(); }

    double sigma_min() const noexcept { return entries_.front().value; }
    double sigma_max() const noexcept { return entries_.back().value; }

    /// Condition number kappa = sigma_m / sigma_1.
    double kappa() const noexcept { return sigma_max() / sigma_min(); }

    /// The averaged condition number: 1/kappa_bar^2 = (1/m) sum (sigma_k/sigma_m)^2,
    /// with 1 <= kappa_bar <= kappa. Computed in linear scale (all ratios <= 1).
    double kappa_bar() const noexcept {
        const double smax = sigma_max();
        double s = 0.0;
        for (const auto& e : entries_) {
            const double r = e.value / smax;
            s += static_cast<double>(e.count) * r * r;
        }
        return std::sqrt(static_cast<double>(m_) / s);
    }

private:
    std::vector<spectrum_entry> entries_;
    int n_;
    int m_;
};

} // namespace volrat
