#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "volrat/error.hpp"
#include "volrat/log_value.hpp"
#include "volrat/quadrature.hpp"
#include "volrat/special.hpp"

namespace volrat {

/// Target dimension m and ambient dimension n with 1 <= m < n.
struct dimensions {
    int m;
    int n;

    dimensions(int m_, int n_) : m(m_), n(n_) {
        if (m < 1)
            throw usage_error("dimensions: requires m >= 1");
        if (n <= m)
            throw usage_error("dimensions: requires n > m");
    }

    int gap() const noexcept { return n - m; }
    /// xi = sqrt(m/n), the jump position of the limiting step function.
    double xi() const noexcept { return std::sqrt(static_cast<double>(m) / n); }
};

/// Parameters of the polynomial representations: the integrand exponent
/// alpha = (n-m-2)/2, the indices k = alpha and l = m/2, and the truncation
/// index nu (number of polynomial terms minus one). For even gaps nu = k;
/// for odd gaps >= 3 nu = k - 1/2; a gap of 1 has no polynomial part
/// (nu = -1) and is handled by quadrature.
struct exact_params {
    double alpha;
    double k;
    double l;
    int nu;

    static exact_params from(dimensions d) {
        exact_params p;
        p.alpha = 0.5 * (d.n - d.m - 2);
        p.k = p.alpha;
        p.l = 0.5 * d.m;
        if (d.gap() % 2 == 0)
            p.nu = (d.gap() - 2) / 2;
        else
            p.nu = d.gap() >= 3 ? (d.gap() - 3) / 2 : -1;
        return p;
    }
};

enum class eval_method { even_polynomial, odd_with_remainder, quadrature, bound };

inline const char* to_string(eval_method m) {
    switch (m) {
    case eval_method::even_polynomial: return "even-polynomial";
    case eval_method::odd_with_remainder: return "odd-with-remainder";
    case eval_method::quadrature: return "quadrature";
    case eval_method::bound: return "bound";
    }
    return "?";
}

/// A computed measure or bound with a certified bracket
/// bracket_lo <= value <= bracket_hi (all in [0, 1]).
struct measure_result {
    log_value value;
    eval_method method = eval_method::quadrature;
    log_value bracket_lo;
    log_value bracket_hi;
};

namespace detail {

inline void check_delta(double delta) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw domain_error("psi: requires delta in [0, 1)");
}

// probabilities never exceed one; trim the float-summation overshoot
inline log_value clamp_to_one(double log_e) {
    return log_value::from_log(std::min(log_e, 0.0));
}

// ln of the Gamma prefactor 2 Gamma(n/2) / (Gamma(m/2) Gamma((n-m)/2)).
inline double log_prefactor(dimensions d) {
    return std::log(2.0) + log_gamma(0.5 * d.n) - log_gamma(0.5 * d.m) -
           log_gamma(0.5 * (d.n - d.m));
}

} // namespace detail

/// ln of the polynomial coefficients
/// Gamma(k+l+1) / (Gamma(k-j+1) Gamma(l+j+1)), j = 0..nu.
/// Computing them once lets delta sweeps reuse them across rows.
inline std::vector<double> polynomial_coeff_logs(dimensions d) {
    const auto p = exact_params::from(d);
    if (p.nu < 0)
        throw usage_error("polynomial_coeff_logs: no polynomial form for n - m = 1");
    std::vector<double> coeff(static_cast<size_t>(p.nu) + 1);
    const double top = log_gamma(p.k + p.l + 1.0);
    for (int j = 0; j <= p.nu; ++j)
        coeff[static_cast<size_t>(j)] =
            top - log_gamma(p.k - j + 1.0) - log_gamma(p.l + j + 1.0);
    return coeff;
}

namespace detail {

// Log-domain evaluation of sum_j coeff_j (1-delta^2)^(k-j) delta^(2(l+j)).
inline double polynomial_sum_log(dimensions d, double delta, std::span<const double> coeff) {
    const auto p = exact_params::from(d);
    const double log_d2 = 2.0 * std::log(delta);
    const double log_1md2 = std::log1p(-delta * delta);
    std::vector<double> terms(coeff.size());
    for (size_t j = 0; j < coeff.size(); ++j)
        terms[j] = coeff[j] + (p.k - static_cast<double>(j)) * log_1md2 +
                   (p.l + static_cast<double>(j)) * log_d2;
    return log_sum_exp(terms);
}

} // namespace detail

/// Exact volume ratio for even gaps n - m >= 2: the degree n-2 polynomial
/// in delta with positive terms, summed in the log domain.
inline log_value psi_even(dimensions d, double delta,
                          std::span<const double> coeff) {
    if (d.gap() % 2 != 0)
        throw usage_error("psi_even: requires n - m even");
    detail::check_delta(delta);
    if (delta == 0.0)
        return log_value::zero();
    return detail::clamp_to_one(detail::polynomial_sum_log(d, delta, coeff));
}

inline log_value psi_even(dimensions d, double delta) {
    const auto coeff = polynomial_coeff_logs(d);
    return psi_even(d, delta, coeff);
}

/// The odd-gap remainder of the polynomial representation,
///   (2/sqrt(pi)) Gamma(n/2)/Gamma((n-1)/2) * Int_0^delta t^(n-2)/sqrt(1-t^2) dt,
/// evaluated as delta^(n-1) * Int_0^1 u^(n-2)/sqrt(1-delta^2 u^2) du with the
/// power kept in log scale, so it stays meaningful where delta^(n-1)
/// underflows doubles.
inline log_value odd_remainder(dimensions d, double delta, double tol = 1e-12) {
    if (d.gap() % 2 == 0 || d.gap() < 3)
        throw usage_error("odd_remainder: requires n - m odd and >= 3");
    detail::check_delta(delta);
    if (delta == 0.0)
        return log_value::zero();
    const double log_pre = std::log(2.0) - 0.5 * std::log(M_PI) +
                           log_gamma(0.5 * d.n) - log_gamma(0.5 * (d.n - 1));
    const double d2 = delta * delta;
    const double p = static_cast<double>(d.n) - 2.0;
    const auto integrand = [d2, p](double u) {
        return std::pow(u, p) / std::sqrt(1.0 - d2 * u * u);
    };
    const double j = integrate_adaptive(integrand, 0.0, 1.0, tol);
    return detail::clamp_to_one(log_pre + (d.n - 1) * std::log(delta) + std::log(j));
}

/// Odd gaps n - m >= 3: partial polynomial sum plus the remainder, with the
/// certified bracket [sum, sum + delta^(n-1)].
inline measure_result psi_odd(dimensions d, double delta,
                              std::span<const double> coeff, double tol = 1e-12) {
    if (d.gap() % 2 == 0)
        throw usage_error("psi_odd: requires n - m odd");
    if (d.gap() < 3)
        throw usage_error("psi_odd: requires n - m >= 3 (gap 1 has no polynomial form)");
    detail::check_delta(delta);
    measure_result r;
    r.method = eval_method::odd_with_remainder;
    if (delta == 0.0) {
        r.value = r.bracket_lo = r.bracket_hi = log_value::zero();
        return r;
    }
    const double sum_log = detail::polynomial_sum_log(d, delta, coeff);
    const log_value sum = detail::clamp_to_one(sum_log);
    const log_value rem = odd_remainder(d, delta, tol);
    r.bracket_lo = sum;
    r.bracket_hi = detail::clamp_to_one(
        log_add_exp(sum.log(), (d.n - 1) * std::log(delta)));
    r.value = detail::clamp_to_one((sum + rem).log());
    return r;
}

inline measure_result psi_odd(dimensions d, double delta, double tol = 1e-12) {
    const auto coeff = polynomial_coeff_logs(d);
    return psi_odd(d, delta, coeff, tol);
}

/// Direct quadrature of the integral representation
///   prefactor * Int_0^delta (1-t^2)^alpha t^(m-1) dt.
/// For n = m + 1 (alpha = -1/2) the substitution t = sin(phi) removes the
/// endpoint behaviour; in both cases the power of delta is factored out of
/// the integrand so only an O(1) shape integral is evaluated linearly.
inline log_value psi_quadrature(dimensions d, double delta, double tol = 1e-12) {
    detail::check_delta(delta);
    if (delta == 0.0)
        return log_value::zero();
    const double log_pre = detail::log_prefactor(d);
    const double m = d.m;
    double log_val;
    if (d.gap() == 1) {
        // Int_0^delta (1-t^2)^(-1/2) t^(m-1) dt = Int_0^A sin^(m-1) phi dphi,
        // A = arcsin(delta), with (sin(phi)/delta)^(m-1) <= 1 on [0, A]
        const double a = std::asin(delta);
        const double log_delta = std::log(delta);
        const auto integrand = [m, log_delta](double phi) {
            if (phi <= 0.0)
                return m > 1.0 ? 0.0 : 1.0;
            return std::exp((m - 1.0) * (std::log(std::sin(phi)) - log_delta));
        };
        const double j = integrate_adaptive(integrand, 0.0, a, tol);
        log_val = log_pre + (m - 1.0) * log_delta + std::log(j);
    } else {
        // Int_0^delta (1-t^2)^alpha t^(m-1) dt = delta^m Int_0^1 (1-delta^2 u^2)^alpha u^(m-1) du
        const double alpha = exact_params::from(d).alpha;
        const double d2 = delta * delta;
        const auto integrand = [alpha, m, d2](double u) {
            if (u <= 0.0)
                return m > 1.0 ? 0.0 : 1.0;
            return std::exp(alpha * std::log1p(-d2 * u * u) + (m - 1.0) * std::log(u));
        };
        const double j = integrate_adaptive(integrand, 0.0, 1.0, tol);
        log_val = log_pre + m * std::log(delta) + std::log(j);
    }
    return detail::clamp_to_one(log_val);
}

/// The Bernstein representation for m and n both even:
///   sum_{j=l}^{k+l} C(k+l, j) (1-delta^2)^(k+l-j) delta^(2j),
/// a Bernstein polynomial of order n/2 - 1 in delta^2.
inline log_value bernstein_form(dimensions d, double delta) {
    if (d.m % 2 != 0 || d.n % 2 != 0)
        throw usage_error("bernstein_form: requires m and n both even");
    detail::check_delta(delta);
    if (delta == 0.0)
        return log_value::zero();
    const std::int64_t l = d.m / 2;
    const std::int64_t kl = d.n / 2 - 1;
    const double log_d2 = 2.0 * std::log(delta);
    const double log_1md2 = std::log1p(-delta * delta);
    std::vector<double> terms(static_cast<size_t>(kl - l) + 1);
    for (std::int64_t j = l; j <= kl; ++j)
        terms[static_cast<size_t>(j - l)] = log_binomial(kl, j) +
                                            static_cast<double>(kl - j) * log_1md2 +
                                            static_cast<double>(j) * log_d2;
    return detail::clamp_to_one(log_sum_exp(terms));
}

/// The exact normalized measure of {x : ||Px|| < delta ||x||} for the
/// orthogonal projection onto the first m of n coordinates, dispatched by
/// gap parity: even gap -> exact polynomial; odd gap >= 3 -> polynomial plus
/// quadrature remainder with the hard bracket; gap 1 -> direct quadrature
/// (bracket from the quadrature tolerance).
inline measure_result psi(dimensions d, double delta, double tol = 1e-12) {
    detail::check_delta(delta);
    measure_result r;
    if (d.gap() % 2 == 0) {
        r.method = eval_method::even_polynomial;
        r.value = psi_even(d, delta);
        r.bracket_lo = r.bracket_hi = r.value;
        return r;
    }
    if (d.gap() >= 3)
        return psi_odd(d, delta, tol);
    r.method = eval_method::quadrature;
    r.value = psi_quadrature(d, delta, tol);
    if (r.value.is_zero()) {
        r.bracket_lo = r.bracket_hi = r.value;
    } else {
        r.bracket_lo = log_value::from_log(r.value.log() + std::log1p(-10.0 * tol));
        r.bracket_hi = detail::clamp_to_one(r.value.log() + std::log1p(10.0 * tol));
    }
    return r;
}

/// The distribution function F(delta) of the projection norm ratio
/// ||Px||/||x|| under the rotation-invariant measure: identical to psi,
/// exposed under its probabilistic name.
inline log_value rpt_distribution(dimensions d, double delta) {
    return psi(d, delta).value;
}

} // namespace volrat
