#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <span>
#include <string>

#include "volrat/error.hpp"

namespace volrat {

/// ln(sum_i exp(t_i)) in the max-shifted form. Entries may be -inf
/// (exact zero addends); the result never overflows for finite inputs.
inline double log_sum_exp(std::span<const double> terms) {
    if (terms.empty())
        throw usage_error("log_sum_exp: empty sequence");
    double mx = -std::numeric_limits<double>::infinity();
    for (double t : terms)
        mx = std::max(mx, t);
    if (std::isinf(mx) && mx < 0)
        return mx; // all addends are zero
    double acc = 0.0;
    for (double t : terms) {
        double s = t - mx;
        if (s > -800.0) // below this the addend is lost in double precision anyway
            acc += std::exp(s);
    }
    return mx + std::log(acc);
}

inline double log_add_exp(double a, double b) {
    const double terms[2] = {a, b};
    return log_sum_exp(terms);
}

/// ln(exp(a) - exp(b)) for a >= b.
inline double log_diff_exp(double a, double b) {
    if (b > a)
        throw usage_error("log_diff_exp: requires a >= b");
    if (std::isinf(b) && b < 0)
        return a;
    if (a == b)
        return -std::numeric_limits<double>::infinity();
    return a + std::log1p(-std::exp(b - a));
}

/// A nonnegative quantity carried as its natural logarithm, so that
/// magnitudes far below the smallest positive double stay exact.
/// -inf encodes an exact zero. Conversion to linear scale is explicit
/// and may underflow only at that output boundary.
class log_value {
public:
    log_value() = default; // zero

    static log_value from_log(double log_e) { return log_value(log_e); }

    static log_value from_linear(double x) {
        if (x < 0.0 || std::isnan(x))
            throw domain_error("log_value: negative or NaN linear value");
        return log_value(std::log(x));
    }

    static log_value zero() { return log_value(); }
    static log_value one() { return log_value(0.0); }

    double log() const noexcept { return log_; }
    double log10() const noexcept { return log_ / ln10_; }
    bool is_zero() const noexcept { return std::isinf(log_) && log_ < 0; }

    /// Explicit conversion to linear scale; underflows to 0.0 below ~1e-308.
    double linear() const noexcept { return std::exp(log_); }

    friend log_value operator*(log_value a, log_value b) {
        if (a.is_zero() || b.is_zero())
            return zero();
        return log_value(a.log_ + b.log_);
    }
    friend log_value operator/(log_value a, log_value b) {
        if (b.is_zero())
            throw domain_error("log_value: division by zero");
        if (a.is_zero())
            return zero();
        return log_value(a.log_ - b.log_);
    }
    /// Linear-scale addition, computed stably in the log domain.
    friend log_value operator+(log_value a, log_value b) {
        return log_value(log_add_exp(a.log_, b.log_));
    }
    /// Linear-scale subtraction; requires a >= b.
    friend log_value log_diff(log_value a, log_value b) {
        return log_value(log_diff_exp(a.log_, b.log_));
    }
    friend log_value pow(log_value a, double e) {
        if (a.is_zero())
            return e > 0 ? zero() : one();
        return log_value(a.log_ * e);
    }

    friend bool operator<(log_value a, log_value b) { return a.log_ < b.log_; }
    friend bool operator>(log_value a, log_value b) { return a.log_ > b.log_; }
    friend bool operator<=(log_value a, log_value b) { return a.log_ <= b.log_; }
    friend bool operator>=(log_value a, log_value b) { return a.log_ >= b.log_; }
    friend bool operator==(log_value a, log_value b) { return a.log_ == b.log_; }

    /// Renders "a.bcdefE±xx" with `sig` significant digits straight from the
    /// log representation, valid for exponents far outside double range
    /// (e.g. "3.53260E-325"). Exact zero renders as "0".
    std::string sci_string(int sig = 6) const {
        if (is_zero())
            return "0";
        double l10 = log10();
        auto e = static_cast<long long>(std::floor(l10));
        double mant = std::pow(10.0, l10 - static_cast<double>(e));
        // rounding of the mantissa may carry into the exponent
        double scale = std::pow(10.0, sig - 1);
        if (std::round(mant * scale) >= 10.0 * scale) {
            mant /= 10.0;
            ++e;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*fE%+03lld", sig - 1, mant, e);
        return buf;
    }

private:
    explicit log_value(double log_e) : log_(log_e) {}

    static constexpr double ln10_ = 2.302585092994045684;
    double log_ = -std::numeric_limits<double>::infinity();
};

} // namespace volrat
