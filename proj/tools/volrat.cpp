// volrat: exact values, analytic bounds, and Monte Carlo estimates for the
// normalized measure of {x : ||Ax|| < delta ||A|| ||x||}, plus CSV sweeps.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "volrat/volrat.hpp"

namespace {

using volrat::log_value;

void print_kv(const char* key, const std::string& value) {
    std::printf("%s = %s\n", key, value.c_str());
}

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string log10_str(log_value v) {
    return v.is_zero() ? "-inf" : fmt(v.log10());
}

void print_measure(const char* name, const volrat::measure_result& r) {
    print_kv(name, r.value.sci_string(6));
    print_kv("log10", log10_str(r.value));
    print_kv("method", to_string(r.method));
    print_kv("bracket_lo_log10", log10_str(r.bracket_lo));
    print_kv("bracket_hi_log10", log10_str(r.bracket_hi));
}

volrat::dimensions make_dims(int m, int n) {
    if (m < 1)
        throw volrat::usage_error("requires m >= 1");
    if (n <= m)
        throw volrat::usage_error("requires n > m");
    return volrat::dimensions(m, n);
}

struct psi_options {
    int m = 0, n = 0;
    double delta = 0.0;
    std::string method = "auto";
};

void run_psi(const psi_options& o) {
    const auto d = make_dims(o.m, o.n);
    volrat::measure_result r;
    if (o.method == "auto") {
        r = volrat::psi(d, o.delta);
    } else if (o.method == "even") {
        r.method = volrat::eval_method::even_polynomial;
        r.value = volrat::psi_even(d, o.delta);
        r.bracket_lo = r.bracket_hi = r.value;
    } else if (o.method == "odd") {
        r = volrat::psi_odd(d, o.delta);
    } else if (o.method == "quadrature") {
        r.method = volrat::eval_method::quadrature;
        r.value = volrat::psi_quadrature(d, o.delta);
        r.bracket_lo = r.bracket_hi = r.value;
    } else {
        throw volrat::usage_error("method must be one of auto|even|odd|quadrature");
    }
    print_measure("psi", r);
}

struct bound_options {
    std::string spectrum_file;
    int m = 0, n = 0;
    double kappa = 1.0;
    double delta = 0.0;
    std::string kind;
    int m0 = 0;
};

volrat::spectrum bound_spectrum(const bound_options& o) {
    if (!o.spectrum_file.empty())
        return volrat::load_spectrum_file(o.spectrum_file);
    make_dims(o.m, o.n);
    if (o.kappa == 1.0)
        return volrat::spectrum::identity(o.m, o.n);
    throw volrat::usage_error(
        "this bound needs the full spectrum for kappa > 1; provide --spectrum");
}

void run_bound(const bound_options& o) {
    if (o.kind == "chernoff") {
        const auto s = bound_spectrum(o);
        const auto r = volrat::chernoff_min(s, o.delta);
        if (!r.condition_holds)
            std::printf("warning: kappa_bar*delta >= sqrt(m/n); bound is the trivial 1\n");
        print_kv("bound", log_value::from_log(r.min_log).sci_string(6));
        print_kv("log10", fmt(r.min_log / std::log(10.0)));
        print_kv("t_star", fmt(r.t_star));
        print_kv("condition_holds", r.condition_holds ? "true" : "false");
    } else if (o.kind == "phi") {
        const auto s = bound_spectrum(o);
        const auto b = volrat::phi_bound(s, o.delta);
        if (b == log_value::one())
            std::printf("warning: kappa*delta >= sqrt(m/n); bound is the trivial 1\n");
        print_kv("bound", b.sci_string(6));
        print_kv("log10", log10_str(b));
    } else if (o.kind == "kappa") {
        const auto d = make_dims(o.m, o.n);
        if (o.kappa * o.delta >= 1.0)
            std::printf("warning: kappa*delta >= 1; upper bound is the trivial 1\n");
        const auto [lower, upper] = volrat::kappa_bounds(d, o.delta, o.kappa);
        print_kv("lower", lower.value.sci_string(6));
        print_kv("lower_log10", log10_str(lower.value));
        print_kv("upper", upper.value.sci_string(6));
        print_kv("upper_log10", log10_str(upper.value));
    } else if (o.kind == "clustered") {
        const auto d = make_dims(o.m, o.n);
        const auto r = volrat::clustered_bound(d, o.m0, o.delta);
        print_measure("bound", r);
    } else if (o.kind == "tail") {
        const auto d = make_dims(o.m, o.n);
        if (!(o.delta > d.xi() && o.delta <= 1.0)) {
            std::printf("warning: tail bound needs xi < delta <= 1; bound is the trivial 1\n");
            print_kv("bound", log_value::one().sci_string(6));
            print_kv("log10", "0");
            return;
        }
        const auto b = volrat::tail_bound(d, o.delta);
        print_kv("bound", b.sci_string(6));
        print_kv("log10", log10_str(b));
    } else {
        throw volrat::usage_error("kind must be one of chernoff|phi|kappa|clustered|tail");
    }
}

struct mc_options {
    std::string spectrum_file;
    double delta = 0.0;
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
};

void run_mc(const mc_options& o) {
    const auto s = volrat::load_spectrum_file(o.spectrum_file);
    const auto e = volrat::estimate_measure(s, o.delta, o.samples, o.seed, o.workers);
    std::printf("hits = %lld\n", static_cast<long long>(e.hits));
    std::printf("samples = %lld\n", static_cast<long long>(e.samples));
    print_kv("p_hat", fmt(e.p_hat));
    std::printf("ci99 = [%s, %s]\n", fmt(e.ci_lo).c_str(), fmt(e.ci_hi).c_str());
    std::printf("seed = %llu\n", static_cast<unsigned long long>(e.seed));
    if (s.entries().size() == 1) {
        // one distinct singular value: the ratio law is the projection law
        const auto exact = volrat::psi(s.dims(), o.delta).value;
        print_kv("exact", exact.sci_string(6));
        const double x = exact.linear();
        print_kv("exact_in_ci", (x >= e.ci_lo && x <= e.ci_hi) ? "true" : "false");
    }
}

void run_rpt(int m, int n, double epsilon) {
    const auto d = make_dims(m, n);
    const auto r = volrat::rpt_probability(d, epsilon);
    print_kv("probability", fmt(r.probability));
    print_kv("lower_bound", fmt(r.lower_bound));
    print_kv("c", fmt(r.c));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact measure, bounds, and Monte Carlo for ||Ax|| < delta ||A|| ||x||"};
    app.require_subcommand(1);

    psi_options po;
    auto* psi_cmd = app.add_subcommand("psi", "exact projection measure");
    psi_cmd->add_option("--m", po.m, "target dimension")->required();
    psi_cmd->add_option("--n", po.n, "ambient dimension")->required();
    psi_cmd->add_option("--delta", po.delta, "threshold in [0,1)")->required();
    psi_cmd->add_option("--method", po.method, "auto|even|odd|quadrature");

    bound_options bo;
    auto* bound_cmd = app.add_subcommand("bound", "analytic bounds");
    bound_cmd->add_option("--spectrum", bo.spectrum_file, "spectrum JSON file");
    bound_cmd->add_option("--m", bo.m, "target dimension");
    bound_cmd->add_option("--n", bo.n, "ambient dimension");
    bound_cmd->add_option("--kappa", bo.kappa, "condition number");
    bound_cmd->add_option("--delta", bo.delta, "threshold")->required();
    bound_cmd->add_option("--kind", bo.kind, "chernoff|phi|kappa|clustered|tail")->required();
    bound_cmd->add_option("--m0", bo.m0, "clustered-spectrum cutoff");

    mc_options mo;
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate");
    mc_cmd->add_option("--spectrum", mo.spectrum_file, "spectrum JSON file")->required();
    mc_cmd->add_option("--delta", mo.delta, "threshold in [0,1)")->required();
    mc_cmd->add_option("--samples", mo.samples, "sample count");
    mc_cmd->add_option("--seed", mo.seed, "RNG seed");
    mc_cmd->add_option("--workers", mo.workers, "worker threads");

    std::string fig1_dir, fig2_dir;
    auto* fig1_cmd = app.add_subcommand("fig1", "projection curves m=2^k, n=2m, k=1..16");
    fig1_cmd->add_option("--out", fig1_dir, "output directory")->required();
    auto* fig2_cmd = app.add_subcommand("fig2", "clustered bounds for N=4..32 particles");
    fig2_cmd->add_option("--out", fig2_dir, "output directory")->required();

    int rm = 0, rn = 0;
    double repsilon = 0.0;
    auto* rpt_cmd = app.add_subcommand("rpt", "random projection probability");
    rpt_cmd->add_option("--m", rm, "target dimension")->required();
    rpt_cmd->add_option("--n", rn, "ambient dimension")->required();
    rpt_cmd->add_option("--epsilon", repsilon, "relative width in (0,1)")->required();

    try {
        app.parse(argc, argv);
        if (psi_cmd->parsed())
            run_psi(po);
        else if (bound_cmd->parsed())
            run_bound(bo);
        else if (mc_cmd->parsed())
            run_mc(mo);
        else if (fig1_cmd->parsed())
            for (const auto& p : volrat::write_fig1(fig1_dir))
                std::printf("wrote %s\n", p.string().c_str());
        else if (fig2_cmd->parsed())
            for (const auto& p : volrat::write_fig2(fig2_dir))
                std::printf("wrote %s\n", p.string().c_str());
        else if (rpt_cmd->parsed())
            run_rpt(rm, rn, repsilon);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const volrat::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const volrat::usage_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const volrat::io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const volrat::numerical_error& e) {
        std::fprintf(stderr, "error: %s (best estimate %.17g, error bound %.3g)\n",
                     e.what(), e.best_estimate(), e.error_bound());
        return 4;
    }
    return 0;
}
