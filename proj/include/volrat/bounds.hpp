#pragma once

#include <cmath>
#include <utility>

#include "volrat/error.hpp"
#include "volrat/exact.hpp"
#include "volrat/log_value.hpp"
#include "volrat/spectrum.hpp"

namespace volrat {

/// Result of minimizing the exponential-moment function X(t).
/// If the smallness condition kappa_bar * delta < xi fails, the minimum of
/// X over its domain is X(0) = 1 and the bound is trivial:
/// condition_holds = false and min_log = 0.
struct chernoff_solve {
    double t_star = 0.0;
    double min_log = 0.0;
    bool converged = true;
    bool condition_holds = false;
};

namespace detail {

inline void check_delta_open(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw domain_error("bounds: requires delta in (0, 1)");
}

} // namespace detail

/// ln X(t) for the exponential-moment function
///   X(t) = prod_k (1 - delta^2 sigma_m^2 t + sigma_k^2 t)^(-1/2)
///          * (1 - delta^2 sigma_m^2 t)^(-(n-m)/2),
/// defined for 0 <= t < 1/(delta^2 sigma_m^2). Strictly convex in t.
inline double chernoff_X(const spectrum& s, double delta, double t) {
    detail::check_delta_open(delta);
    const double smax2 = s.sigma_max() * s.sigma_max();
    const double b = delta * delta * smax2;
    if (!(t >= 0.0 && b * t < 1.0))
        throw domain_error("chernoff_X: requires 0 <= t < 1/(delta^2 sigma_m^2)");
    double acc = 0.0;
    for (const auto& e : s.entries())
        acc += static_cast<double>(e.count) * std::log1p((e.value * e.value - b) * t);
    return -0.5 * acc - 0.5 * (s.ambient_n() - s.m()) * std::log1p(-b * t);
}

/// Minimizes ln X(t) by safeguarded Newton iteration on its analytic
/// derivative, keeping a sign-changing bracket and falling back to
/// bisection whenever a Newton step leaves it.
inline chernoff_solve chernoff_min(const spectrum& s, double delta) {
    detail::check_delta_open(delta);
    chernoff_solve r;
    const double smax2 = s.sigma_max() * s.sigma_max();
    const double b = delta * delta * smax2;
    const int n = s.ambient_n(), m = s.m();

    // X'(0) < 0 iff kappa_bar * delta < xi; otherwise min X = X(0) = 1
    double sum_sq = 0.0;
    for (const auto& e : s.entries())
        sum_sq += static_cast<double>(e.count) * e.value * e.value;
    if (!(n * b < sum_sq))
        return r; // trivial

    r.condition_holds = true;
    const auto deriv = [&](double t, double& g, double& gp) {
        g = 0.5 * (n - m) * b / (1.0 - b * t);
        gp = 0.5 * (n - m) * b * b / ((1.0 - b * t) * (1.0 - b * t));
        for (const auto& e : s.entries()) {
            const double a = e.value * e.value - b;
            const double den = 1.0 + a * t;
            g -= 0.5 * static_cast<double>(e.count) * a / den;
            gp += 0.5 * static_cast<double>(e.count) * a * a / (den * den);
        }
    };

    double lo = 0.0;
    double hi = (1.0 - 1e-12) / b; // g -> +inf at the right endpoint
    double t = 0.5 * hi;
    bool done = false;
    for (int it = 0; it < 200 && !done; ++it) {
        double g, gp;
        deriv(t, g, gp);
        if (g > 0.0)
            hi = t;
        else
            lo = t;
        double next = t - g / gp;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        done = std::fabs(next - t) <= 1e-12 * std::max(next, 1e-300);
        t = next;
    }
    if (!done)
        throw numerical_error("chernoff_min: iteration budget exceeded; bracket ["
                                  + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                              t, hi - lo);
    r.t_star = t;
    r.min_log = chernoff_X(s, delta, t);
    return r;
}

/// ln of the closed-form enclosure for min X: the pair
///   (kbar*delta/xi * ((1-kbar^2 delta^2)/(1-xi^2))^gamma)^m   [lower]
///   (kappa*delta/xi * ((1-kappa^2 delta^2)/(1-xi^2))^gamma)^m [upper]
/// with gamma = (1-xi^2)/(2 xi^2). A side whose smallness precondition
/// fails is returned as the trivial bound 1.
inline std::pair<log_value, log_value> closed_form_bounds(const spectrum& s, double delta) {
    detail::check_delta_open(delta);
    const double xi = s.xi();
    const double xi2 = xi * xi;
    const double gamma = (1.0 - xi2) / (2.0 * xi2);
    const double m = s.m();
    const auto rate_log = [&](double kd) {
        return std::log(kd / xi) + gamma * (std::log1p(-kd * kd) - std::log1p(-xi2));
    };
    log_value lower = log_value::one();
    log_value upper = log_value::one();
    const double kbd = s.kappa_bar() * delta;
    if (kbd < xi)
        lower = log_value::from_log(m * rate_log(kbd));
    const double kd = s.kappa() * delta;
    if (kd < xi)
        upper = log_value::from_log(m * rate_log(kd));
    return {lower, upper};
}

/// ln phi(theta) with phi(theta) = theta * exp((1-theta^2)/2): increases
/// strictly on [0, 1], peaks at phi(1) = 1, decreases strictly beyond.
inline double phi_log(double theta) {
    if (!(theta >= 0.0))
        throw domain_error("phi_log: requires theta >= 0");
    if (theta == 0.0)
        return -std::numeric_limits<double>::infinity();
    return std::log(theta) + 0.5 * (1.0 - theta * theta);
}

/// The simplified rate bound phi(kappa*delta/xi)^m on the measure,
/// valid for kappa*delta < xi; trivial 1 otherwise.
inline log_value phi_bound(const spectrum& s, double delta) {
    detail::check_delta_open(delta);
    const double theta = s.kappa() * delta / s.xi();
    if (!(theta < 1.0))
        return log_value::one();
    return log_value::from_log(s.m() * phi_log(theta));
}

/// Condition-number enclosure of the measure for a matrix with condition
/// number kappa: psi at delta from below (always), psi at kappa*delta from
/// above (valid for kappa*delta < 1, trivial 1 otherwise). Equality on both
/// sides for orthogonal projections (kappa = 1).
inline std::pair<measure_result, measure_result>
kappa_bounds(dimensions d, double delta, double kappa) {
    detail::check_delta(delta);
    if (!(kappa >= 1.0))
        throw usage_error("kappa_bounds: requires kappa >= 1");
    measure_result lower = psi(d, delta);
    measure_result upper;
    if (kappa * delta < 1.0) {
        upper = psi(d, kappa * delta);
    } else {
        upper.value = upper.bracket_lo = upper.bracket_hi = log_value::one();
        upper.method = eval_method::bound;
    }
    return {lower, upper};
}

/// Bound for spectra whose values sigma_k equal sigma_m for all k > m0
/// (the caller asserts this): the measure is at most psi with the reduced
/// dimension m' = m - m0, and additionally at most phi(delta/xi')^(m')
/// when delta < xi' = sqrt(m'/n). Carries the tighter of the two as value
/// and the looser as bracket_hi.
inline measure_result clustered_bound(dimensions d, int m0, double delta) {
    if (m0 < 0 || m0 >= d.m)
        throw usage_error("clustered_bound: requires 0 <= m0 < m");
    detail::check_delta(delta);
    const dimensions reduced(d.m - m0, d.n);
    measure_result exact = psi(reduced, delta);
    const double xi_r = reduced.xi();
    if (!(delta > 0.0) || !(delta < xi_r))
        return exact; // phi part absent
    const log_value phi_part =
        log_value::from_log(reduced.m * phi_log(delta / xi_r));
    measure_result r;
    r.method = eval_method::bound;
    r.value = std::min(exact.value, phi_part);
    r.bracket_lo = std::min(exact.bracket_lo, phi_part);
    r.bracket_hi = std::max(exact.bracket_hi, phi_part);
    return r;
}

/// Upper-tail counterpart: bounds the measure of {x : ||Ax|| >= delta ||A|| ||x||}
/// by phi(delta/xi)^m for xi < delta <= 1.
inline log_value tail_bound(dimensions d, double delta) {
    if (!(delta <= 1.0))
        throw domain_error("tail_bound: requires delta <= 1");
    if (!(delta > d.xi()))
        throw usage_error("tail_bound: requires delta > xi = sqrt(m/n)");
    return log_value::from_log(d.m * phi_log(delta / d.xi()));
}

} // namespace volrat
