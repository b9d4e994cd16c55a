#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "volrat/applications.hpp"
#include "volrat/bounds.hpp"
#include "volrat/error.hpp"
#include "volrat/exact.hpp"

namespace volrat {

struct sweep_row {
    double delta;
    measure_result result;
};

/// The fixed delta grid of the figure sweeps: 0.005, 0.010, ..., 0.995.
inline std::vector<double> default_delta_grid() {
    std::vector<double> grid;
    grid.reserve(199);
    for (int i = 1; i <= 199; ++i)
        grid.push_back(static_cast<double>(i) / 200.0);
    return grid;
}

/// psi dispatcher with the polynomial coefficients computed once, so a
/// 199-row sweep at m = 65536 does not redo 32768 log-gammas per row.
class psi_evaluator {
public:
    explicit psi_evaluator(dimensions d, double tol = 1e-12) : d_(d), tol_(tol) {
        if (d_.gap() != 1)
            coeff_ = polynomial_coeff_logs(d_);
    }

    measure_result operator()(double delta) const {
        if (d_.gap() % 2 == 0) {
            measure_result r;
            r.method = eval_method::even_polynomial;
            r.value = psi_even(d_, delta, coeff_);
            r.bracket_lo = r.bracket_hi = r.value;
            return r;
        }
        if (d_.gap() >= 3)
            return psi_odd(d_, delta, coeff_, tol_);
        return psi(d_, delta, tol_); // gap 1: quadrature dispatch
    }

private:
    dimensions d_;
    double tol_;
    std::vector<double> coeff_;
};

namespace detail {

inline std::string format_log10(log_value v) {
    if (v.is_zero())
        return "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v.log10());
    return buf;
}

} // namespace detail

inline const char* csv_header() {
    return "delta,value,log10_value,method,bracket_lo_log10,bracket_hi_log10";
}

inline void write_sweep_csv(std::ostream& out, const std::vector<sweep_row>& rows) {
    out << csv_header() << '\n';
    char delta_buf[32];
    for (const auto& row : rows) {
        std::snprintf(delta_buf, sizeof delta_buf, "%.3f", row.delta);
        out << delta_buf << ',' << row.result.value.sci_string(6) << ','
            << detail::format_log10(row.result.value) << ','
            << to_string(row.result.method) << ','
            << detail::format_log10(row.result.bracket_lo) << ','
            << detail::format_log10(row.result.bracket_hi) << '\n';
    }
}

/// One parsed CSV row; log10 fields are -inf for the "-inf" literal.
struct parsed_sweep_row {
    double delta;
    std::string value;
    double log10_value;
    std::string method;
    double bracket_lo_log10;
    double bracket_hi_log10;
};

inline std::vector<parsed_sweep_row> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header())
        throw usage_error("sweep csv: missing or malformed header");
    const auto parse_log10 = [](const std::string& f) {
        return f == "-inf" ? -std::numeric_limits<double>::infinity() : std::stod(f);
    };
    std::vector<parsed_sweep_row> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string f[6];
        for (int i = 0; i < 6; ++i)
            if (!std::getline(ss, f[i], ','))
                throw usage_error("sweep csv: row with fewer than 6 fields");
        rows.push_back({std::stod(f[0]), f[1], parse_log10(f[2]), f[3],
                        parse_log10(f[4]), parse_log10(f[5])});
    }
    return rows;
}

inline std::vector<sweep_row> psi_sweep(dimensions d, const std::vector<double>& grid) {
    psi_evaluator eval(d);
    std::vector<sweep_row> rows;
    rows.reserve(grid.size());
    for (double delta : grid)
        rows.push_back({delta, eval(delta)});
    return rows;
}

inline std::vector<sweep_row> clustered_sweep(dimensions d, int m0,
                                              const std::vector<double>& grid) {
    // same cached-coefficient path as psi_sweep, with the phi part attached
    const dimensions reduced(d.m - m0, d.n);
    psi_evaluator eval(reduced);
    const double xi_r = reduced.xi();
    std::vector<sweep_row> rows;
    rows.reserve(grid.size());
    for (double delta : grid) {
        measure_result exact = eval(delta);
        if (delta > 0.0 && delta < xi_r) {
            const log_value phi_part =
                log_value::from_log(reduced.m * phi_log(delta / xi_r));
            measure_result r;
            r.method = eval_method::bound;
            r.value = std::min(exact.value, phi_part);
            r.bracket_lo = std::min(exact.bracket_lo, phi_part);
            r.bracket_hi = std::max(exact.bracket_hi, phi_part);
            rows.push_back({delta, r});
        } else {
            rows.push_back({delta, exact});
        }
    }
    return rows;
}

namespace detail {

inline void write_csv_file(const std::filesystem::path& path,
                           const std::vector<sweep_row>& rows) {
    std::ofstream out(path, std::ios::binary); // LF line endings everywhere
    if (!out)
        throw io_error("cannot open for writing: " + path.string());
    write_sweep_csv(out, rows);
    out.flush();
    if (!out)
        throw io_error("write failed: " + path.string());
}

} // namespace detail

/// The 16 projection curves m = 2^k, n = 2m, k = 1..16, over the default
/// grid. Returns the paths written.
inline std::vector<std::filesystem::path> write_fig1(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw io_error("cannot create directory: " + dir.string());
    const auto grid = default_delta_grid();
    std::vector<std::filesystem::path> paths;
    for (int k = 1; k <= 16; ++k) {
        const int m = 1 << k;
        char name[32];
        std::snprintf(name, sizeof name, "fig1_k%02d.csv", k);
        const auto path = dir / name;
        detail::write_csv_file(path, psi_sweep(dimensions(m, 2 * m), grid));
        paths.push_back(path);
    }
    return paths;
}

/// The 29 clustered-bound curves for the particle-system spectra,
/// N = 4..32, over the default grid.
inline std::vector<std::filesystem::path> write_fig2(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw io_error("cannot create directory: " + dir.string());
    const auto grid = default_delta_grid();
    std::vector<std::filesystem::path> paths;
    for (int N = 4; N <= 32; ++N) {
        const auto inst = schroedinger_spectrum(N);
        char name[32];
        std::snprintf(name, sizeof name, "fig2_N%02d.csv", N);
        const auto path = dir / name;
        detail::write_csv_file(path, clustered_sweep(inst.dims, inst.m0, grid));
        paths.push_back(path);
    }
    return paths;
}

} // namespace volrat
