#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "volrat/bounds.hpp"
#include "volrat/error.hpp"
#include "volrat/exact.hpp"
#include "volrat/spectrum.hpp"

namespace volrat {

/// The matrix family T mapping N particle coordinates x_i in R^3 to the
/// x_i themselves and all pairwise differences x_i - x_j. Its Gram matrix
/// T^t T = (N+1) I - T0^t T0 with the rank-three row-sum map T0, so the
/// squared singular values are 1 (multiplicity 3) and N+1 (multiplicity
/// 3N-3), which makes m0 = 3 the clustered-bound cutoff.
struct schroedinger_instance {
    int N;
    dimensions dims;
    spectrum spec;
    int m0;
};

inline schroedinger_instance schroedinger_spectrum(int N) {
    if (N < 2)
        throw usage_error("schroedinger_spectrum: requires N >= 2");
    const int m = 3 * N;
    const int n = 3 * (N * (N + 1) / 2);
    spectrum s({{1.0, 3}, {std::sqrt(static_cast<double>(N) + 1.0), 3 * N - 3}}, n);
    return {N, dimensions(m, n), std::move(s), 3};
}

/// Applies T: the output stacks the N blocks x_i, then the N(N-1)/2
/// difference blocks x_i - x_j in lexicographic (i, j) order with i < j.
inline std::vector<double> apply_T(int N, std::span<const double> x) {
    if (N < 2)
        throw usage_error("apply_T: requires N >= 2");
    if (x.size() != static_cast<size_t>(3 * N))
        throw usage_error("apply_T: input length must be 3N");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(3 * N) * (N + 1) / 2);
    out.assign(x.begin(), x.end());
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            for (int c = 0; c < 3; ++c)
                out.push_back(x[static_cast<size_t>(3 * i + c)] -
                              x[static_cast<size_t>(3 * j + c)]);
    return out;
}

/// Exact probability that (1-eps) xi ||x|| <= ||Px|| < (1+eps) xi ||x||
/// for a rotation-invariant random x, F((1+eps)xi) - F((1-eps)xi), together
/// with the classical lower bound 1 - 2 exp(-c eps^2 m), c = 3/2 - ln 2.
struct rpt_result {
    double probability;
    double lower_bound;
    double c;
};

inline rpt_result rpt_probability(dimensions d, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw domain_error("rpt_probability: requires epsilon in (0, 1)");
    const double xi = d.xi();
    const double hi_arg = (1.0 + epsilon) * xi;
    const double f_hi = hi_arg < 1.0 ? rpt_distribution(d, hi_arg).linear() : 1.0;
    const double f_lo = rpt_distribution(d, (1.0 - epsilon) * xi).linear();
    rpt_result r;
    r.c = -phi_log(2.0); // 3/2 - ln 2
    r.probability = f_hi - f_lo;
    r.lower_bound = 1.0 - 2.0 * std::exp(-r.c * epsilon * epsilon * d.m);
    return r;
}

} // namespace volrat
