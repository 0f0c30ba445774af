// jcmsim: batch front end for the multiphoton Jaynes-Cummings engine.
//
// Subcommands write deterministic CSV time series (inversion, squeezing,
// rescaled, rabi-profile) or run the reduced self-check suite (verify).
// Exit codes: 0 success, 1 runtime/numerical failure, 2 usage error.

#include "jcm/analysis.hpp"
#include "jcm/errors.hpp"
#include "jcm/evolution.hpp"
#include "jcm/fock.hpp"
#include "jcm/kernels.hpp"
#include "jcm/model.hpp"
#include "jcm/moments.hpp"
#include "jcm/oracle.hpp"
#include "jcm/squeezing.hpp"
#include "jcm/timeseries.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunConfig {
    std::string model;        // "ijcm" | "sjcm"
    int m = 1;
    double alpha = -1.0;      // set iff --alpha given
    std::string field_file;   // set iff --field given
    double eta = 0.0;
    int order = 1;
    double t_max = 10.0;
    std::size_t steps = 0;    // 0: derive from the fastest-Rabi-period rule
    double tail_tol = 1e-12;
    std::string output;
    bool emit_plot = false;
    bool stamp = false;
    bool compare_inversion = false;  // rescaled only
    double rescale = 1.0;            // rabi-profile only
};

template <class... A> std::string fmt(const char* f, A... a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

jcm::ModelParams params_from(const RunConfig& cfg, int m_override = 0) {
    jcm::ModelParams p;
    p.m = m_override > 0 ? m_override : cfg.m;
    p.kind = cfg.model == "ijcm" ? jcm::Nonlinearity::intensity_dependent
                                 : jcm::Nonlinearity::standard;
    p.eta = cfg.eta;
    return p;
}

// One amplitude per line, "re" or "re im"; blank lines and '#' comments
// are skipped.
std::vector<std::complex<double>> read_amplitudes(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw jcm::IoError("cannot open field file: " + path);
    std::vector<std::complex<double>> amps;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream row(line);
        double re = 0.0, im = 0.0;
        if (!(row >> re))
            throw jcm::ParseError(path + ":" + std::to_string(lineno) +
                                  ": expected a real amplitude");
        if (!(row >> im))
            im = 0.0;
        std::string junk;
        if (row.clear(), row >> junk)
            throw jcm::ParseError(path + ":" + std::to_string(lineno) +
                                  ": trailing content after amplitude");
        amps.emplace_back(re, im);
    }
    if (amps.empty())
        throw jcm::ParseError(path + ": no amplitudes found");
    return amps;
}

jcm::TruncatedFieldState field_from(const RunConfig& cfg, int headroom) {
    if (!cfg.field_file.empty())
        return jcm::custom_state(read_amplitudes(cfg.field_file), headroom);
    return jcm::coherent_amplitudes(cfg.alpha, cfg.tail_tol, headroom);
}

std::size_t grid_steps(const RunConfig& cfg, const jcm::ModelParams& p,
                       const jcm::TruncatedFieldState& f) {
    if (cfg.steps)
        return cfg.steps;
    double dt = jcm::default_time_step(p, f);
    double n = std::ceil(cfg.t_max / dt);
    return std::max<std::size_t>(std::size_t(n), 2);
}

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void common_metadata(jcm::TimeSeries& ts, const RunConfig& cfg,
                     const jcm::TruncatedFieldState& f, const char* command) {
    auto& md = ts.metadata;
    md["command"] = command;
    md["model"] = cfg.model;
    md["m"] = std::to_string(cfg.m);
    md["eta"] = jcm::csv_double(cfg.eta);
    if (!cfg.field_file.empty()) {
        md["field_file"] = cfg.field_file;
        md["norm_factor"] = jcm::csv_double(f.norm_factor);
    } else {
        md["alpha"] = jcm::csv_double(cfg.alpha);
        md["tail_tol"] = jcm::csv_double(cfg.tail_tol);
    }
    md["n_bar"] = jcm::csv_double(jcm::mean_photon_number(f));
    md["n_star"] = std::to_string(f.n_star);
    md["n_max"] = std::to_string(f.n_max());
    md["kernel_isa"] =
        jcm::kernels::isa_name(jcm::kernels::active_isa());
    if (cfg.stamp)
        md["generated_at"] = iso_now();
}

void grid_metadata(jcm::TimeSeries& ts, const RunConfig& cfg,
                   std::size_t steps) {
    ts.metadata["t_max"] = jcm::csv_double(cfg.t_max);
    ts.metadata["steps"] = std::to_string(steps);
}

void emit_plot_script(const std::string& csv_path, const jcm::TimeSeries& ts) {
    std::string stem = csv_path;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
        stem.resize(stem.size() - 4);
    const std::string path = stem + ".gp";
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw jcm::IoError("cannot write plot script: " + path);
    out << "# gnuplot script for " << csv_path << "\n"
        << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set grid\n"
        << "set xlabel '" << ts.t_name << "'\n"
        << "plot";
    for (std::size_t i = 0; i < ts.names.size(); ++i)
        out << (i ? ", ''" : " '" + csv_path + "'") << " using 1:"
            << i + 2 << " with lines";
    out << "\n";
    if (!out.flush())
        throw jcm::IoError("short write: " + path);
}

void finish(const RunConfig& cfg, const jcm::TimeSeries& ts) {
    jcm::write_csv(ts, cfg.output);
    if (cfg.emit_plot)
        emit_plot_script(cfg.output, ts);
    std::cout << cfg.output << ": " << ts.t.size() << " rows\n";
}

void check_horizon(const RunConfig& cfg) {
    if (!std::isfinite(cfg.t_max) || cfg.t_max <= 0.0)
        throw jcm::InvalidParameter("t_max must be finite and > 0");
}

// --- subcommands -----------------------------------------------------------

void cmd_inversion(const RunConfig& cfg) {
    check_horizon(cfg);
    auto p = params_from(cfg);
    auto f = field_from(cfg, p.m + 2);
    auto steps = grid_steps(cfg, p, f);
    auto grid = jcm::time_grid(cfg.t_max, steps);

    jcm::Propagator prop(f, p);
    std::vector<double> sz(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        sz[i] = prop.inversion(grid[i]);

    jcm::TimeSeries ts;
    ts.t = grid;
    ts.add_column("sigma_z", std::move(sz));
    common_metadata(ts, cfg, f, "inversion");
    grid_metadata(ts, cfg, steps);
    ts.metadata["inversion_floor"] = jcm::csv_double(prop.inversion_floor());
    finish(cfg, ts);
}

void cmd_squeezing(const RunConfig& cfg) {
    check_horizon(cfg);
    auto p = params_from(cfg);
    auto f = field_from(cfg, 2 * cfg.order + p.m + 2);
    auto steps = grid_steps(cfg, p, f);
    auto grid = jcm::time_grid(cfg.t_max, steps);

    jcm::Propagator prop(f, p);
    std::vector<double> S(grid.size()), Q(grid.size()), C(grid.size()),
        U(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto rec = jcm::squeezing_factors(prop.at(grid[i]), cfg.order);
        S[i] = rec.S;
        Q[i] = rec.Q;
        C[i] = rec.commutator;
        U[i] = rec.uncertainty_product;
    }

    jcm::TimeSeries ts;
    ts.t = grid;
    ts.add_column("S_N", std::move(S));
    ts.add_column("Q_N", std::move(Q));
    ts.add_column("commutator", std::move(C));
    ts.add_column("uncertainty_product", std::move(U));
    common_metadata(ts, cfg, f, "squeezing");
    grid_metadata(ts, cfg, steps);
    ts.metadata["order"] = std::to_string(cfg.order);
    finish(cfg, ts);
}

void cmd_rescaled(const RunConfig& cfg) {
    check_horizon(cfg);
    auto p = params_from(cfg);
    auto f = field_from(cfg, 2 * cfg.order + p.m + 2);
    auto steps = grid_steps(cfg, p, f);
    auto grid = jcm::time_grid(cfg.t_max, steps);

    jcm::RescaledSqueezing rs(f, p, cfg.order);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        v[i] = rs.at(grid[i]);

    jcm::TimeSeries ts;
    ts.t = grid;
    ts.add_column("V_N", v);
    common_metadata(ts, cfg, f, "rescaled");
    grid_metadata(ts, cfg, steps);
    ts.metadata["order"] = std::to_string(cfg.order);
    ts.metadata["b"] = jcm::csv_double(rs.b());

    if (cfg.compare_inversion) {
        // Same field and detuning driven through the one-photon model on the
        // same grid: the pattern V_N is expected to mirror.
        auto p1 = params_from(cfg, 1);
        auto f1 = field_from(cfg, 3);
        jcm::Propagator prop1(f1, p1);
        std::vector<double> sz(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            sz[i] = prop1.inversion(grid[i]);
        ts.add_column("sigma_z_m1", sz);

        auto& md = ts.metadata;
        double t_r = jcm::revival_time(p1, jcm::mean_photon_number(f1));
        md["predicted_revival_T"] = jcm::csv_double(t_r);
        md["similarity_raw"] = jcm::csv_double(jcm::pattern_similarity(v, sz));

        double dt = grid[1] - grid[0];
        std::size_t w =
            std::max<std::size_t>(3, std::size_t(std::llround(t_r / 8 / dt)));
        if (w % 2 == 0)
            ++w;
        md["envelope_window_points"] = std::to_string(w);
        md["similarity_envelope"] = jcm::csv_double(jcm::pattern_similarity(
            jcm::oscillation_envelope(v, w), jcm::oscillation_envelope(sz, w)));

        jcm::RevivalOptions opt;
        opt.period_hint = t_r;
        try {
            auto rv = jcm::detect_revivals(ts, "V_N", opt);
            auto rz = jcm::detect_revivals(ts, "sigma_z_m1", opt);
            md["detected_revivals_v"] =
                std::to_string(rv.detected_centers.size());
            md["detected_revivals_inversion"] =
                std::to_string(rz.detected_centers.size());
            md["revival_center_offset"] = jcm::csv_double(
                jcm::max_center_offset(rv.detected_centers,
                                       rz.detected_centers));
        } catch (const jcm::Error&) {
            md["revival_center_offset"] = "nan";
        }
    }
    finish(cfg, ts);
}

void cmd_rabi_profile(const RunConfig& cfg) {
    auto p = params_from(cfg);
    auto f = field_from(cfg, 0);
    const int n_hi = std::max(f.n_max(), 1);

    auto omega = jcm::rabi_frequency_profile(p, 0, n_hi);
    if (cfg.rescale != 1.0)
        for (auto& w : omega)
            w /= cfg.rescale;
    auto pn = jcm::photon_distribution(f);
    pn.resize(omega.size(), 0.0);

    jcm::TimeSeries ts;
    ts.t_name = "n";
    ts.t.resize(omega.size());
    for (std::size_t i = 0; i < ts.t.size(); ++i)
        ts.t[i] = double(i);
    ts.add_column("omega_n", std::move(omega));
    ts.add_column("p_n", std::move(pn));
    common_metadata(ts, cfg, f, "rabi-profile");
    ts.metadata["rescale"] = jcm::csv_double(cfg.rescale);
    finish(cfg, ts);
}

// --- verify ----------------------------------------------------------------

struct Verifier {
    int failures = 0;
    void check(bool ok, const std::string& name, const std::string& detail) {
        std::printf("[%s] %-56s %s\n", ok ? "PASS" : "FAIL", name.c_str(),
                    detail.c_str());
        if (!ok)
            ++failures;
    }
};

const char* kind_name(jcm::Nonlinearity k) {
    return k == jcm::Nonlinearity::intensity_dependent ? "ijcm" : "sjcm";
}

int cmd_verify() {
    using jcm::Nonlinearity;
    constexpr double kAlpha = 4.0, kTol = 1e-12;
    const double pi = std::numbers::pi;
    Verifier v;
    std::printf("jcmsim verify (reduced scale, alpha = %g), kernel ISA = %s\n",
                kAlpha, jcm::kernels::isa_name(jcm::kernels::active_isa()));

    const Nonlinearity kinds[] = {Nonlinearity::intensity_dependent,
                                  Nonlinearity::standard};

    // Exact block propagator vs the analytic amplitudes.
    {
        double worst = 0.0;
        for (auto kind : kinds)
            for (int m : {1, 3})
                for (double eta : {0.0, 20.0}) {
                    jcm::ModelParams p{m, kind, eta};
                    auto f = jcm::coherent_amplitudes(kAlpha, kTol, m + 4);
                    worst = std::max(
                        worst, jcm::max_amplitude_difference(
                                   jcm::evolve(f, p, 3.0),
                                   jcm::block_propagate(f, p, 3.0)));
                }
        v.check(worst <= 1e-12, "block propagator == analytic (8 combos, T=3)",
                fmt("max |delta| = %.3e (tol 1e-12)", worst));
    }

    // Blind RK4 integration vs the analytic amplitudes, budget-rule step.
    struct Combo {
        Nonlinearity kind;
        int m;
        double eta;
    };
    const Combo ode_combos[] = {{Nonlinearity::intensity_dependent, 1, 0.0},
                                {Nonlinearity::intensity_dependent, 3, 20.0},
                                {Nonlinearity::standard, 1, 20.0},
                                {Nonlinearity::standard, 3, 0.0}};
    for (const auto& c : ode_combos) {
        jcm::ModelParams p{c.m, c.kind, c.eta};
        auto f = jcm::coherent_amplitudes(kAlpha, kTol, c.m + 4);
        double h = jcm::rk4_budget_step(f, p, 3.0, 1e-9);
        double d = jcm::max_amplitude_difference(
            jcm::ode_propagate(f, p, 3.0, h), jcm::evolve(f, p, 3.0));
        v.check(d <= 1e-8,
                fmt("RK4 ODE == analytic [%s m=%d eta=%g]", kind_name(c.kind),
                    c.m, c.eta),
                fmt("max |delta| = %.3e @ h = %.2e (tol 1e-8)", d, h));
    }

    // Conservation along one blind trajectory.
    {
        jcm::ModelParams p{1, Nonlinearity::intensity_dependent, 0.0};
        auto f = jcm::coherent_amplitudes(kAlpha, kTol, 5);
        double h = jcm::rk4_budget_step(f, p, 3.0, 1e-9);
        auto grid = jcm::time_grid(3.0, 6);
        auto traj = jcm::ode_trajectory(f, p, grid, h);
        double f1_0 = jcm::f1_expectation(traj.front());
        double dn = 0.0, df = 0.0;
        for (const auto& s : traj) {
            dn = std::max(dn, std::abs(jcm::norm_square(s) - 1.0));
            df = std::max(df, std::abs(jcm::f1_expectation(s) - f1_0));
        }
        v.check(dn <= 1e-9, "ODE norm conservation (T <= 3)",
                fmt("max |norm^2 - 1| = %.3e (tol 1e-9)", dn));
        v.check(df <= 1e-9, "ODE <F1> conservation (T <= 3)",
                fmt("max drift = %.3e (tol 1e-9)", df));
    }

    // Closed-form inversion vs the amplitude route.
    {
        double worst = 0.0;
        for (auto kind : kinds)
            for (int m : {1, 3})
                for (double eta : {0.0, 20.0})
                    for (double T : {0.7, 3.0}) {
                        jcm::ModelParams p{m, kind, eta};
                        auto f = jcm::coherent_amplitudes(kAlpha, kTol, m + 2);
                        worst = std::max(
                            worst,
                            std::abs(jcm::inversion_closed_form(f, p, T) -
                                     jcm::atomic_inversion(jcm::evolve(f, p, T))));
                    }
        v.check(worst <= 1e-12, "closed-form inversion == amplitude route",
                fmt("max |delta| = %.3e (tol 1e-12)", worst));
    }

    // Closed-form Re<a^2> vs the general moment engine.
    {
        jcm::ModelParams p{3, Nonlinearity::intensity_dependent, 20.0};
        auto f = jcm::coherent_amplitudes(kAlpha, kTol, 7);
        double worst = 0.0;
        for (double T : {0.5, 2.0})
            worst = std::max(
                worst, std::abs(jcm::re_a2_closed_form(f, p, T) -
                                jcm::field_moment(jcm::evolve(f, p, T), 2)
                                    .real()));
        v.check(worst <= 1e-10, "closed-form Re<a^2> == moment engine",
                fmt("max |delta| = %.3e (tol 1e-10)", worst));
    }

    // Vacuum, standard JCM: exact single-sector dynamics.
    {
        jcm::ModelParams p{1, Nonlinearity::standard, 0.0};
        auto f = jcm::coherent_amplitudes(0.0, kTol, 4);
        const double T = 0.7;
        auto s = jcm::evolve(f, p, T);
        double d1 = std::abs(jcm::atomic_inversion(s) - std::cos(2 * T));
        auto rec = jcm::squeezing_factors(s, 1);
        double s2 = std::sin(T) * std::sin(T);
        double d2 = std::max(std::abs(rec.S - s2), std::abs(rec.Q - s2));
        v.check(d1 <= 1e-14, "vacuum SJCM inversion == cos(2T)",
                fmt("|delta| = %.3e (tol 1e-14)", d1));
        v.check(d2 <= 1e-14, "vacuum SJCM S_1 == Q_1 == sin^2(T)",
                fmt("max |delta| = %.3e (tol 1e-14)", d2));
    }

    // Negative control: re-derive the block exponential with gamma inflated
    // by 1 ppm and require the equivalence check to catch it.
    {
        jcm::ModelParams p{1, Nonlinearity::intensity_dependent, 20.0};
        auto f = jcm::coherent_amplitudes(kAlpha, kTol, 5);
        const double T = 3.0;
        auto good = jcm::evolve(f, p, T);
        auto bh = jcm::block_hamiltonian(p, f.n_max());
        jcm::JointState bad;
        bad.T = T;
        bad.m = p.m;
        bad.n_star = f.n_star;
        const std::size_t len = f.c.size();
        bad.er.resize(len);
        bad.ei.resize(len);
        bad.gr.resize(len);
        bad.gi.resize(len);
        for (std::size_t n = 0; n < len; ++n) {
            const double a = bh.eta_half, k = bh.kappa[n];
            const double g = std::sqrt(a * a + k * k) * (1.0 + 1e-6);
            const double x = T * g, sg = std::sin(x) / g;
            const std::complex<double> c = f.c[n];
            const std::complex<double> e =
                c * std::complex<double>(std::cos(x), -a * sg);
            const std::complex<double> gg =
                c * std::complex<double>(0.0, -k * sg);
            bad.er[n] = e.real();
            bad.ei[n] = e.imag();
            bad.gr[n] = gg.real();
            bad.gi[n] = gg.imag();
        }
        double d = jcm::max_amplitude_difference(good, bad);
        v.check(d > 1e-8, "negative control: 1 ppm gamma mutation detected",
                fmt("mismatch %.3e > 1e-8", d));
    }

    // Measured first revival center vs the closed-form prediction.
    for (auto kind : kinds) {
        jcm::ModelParams p{1, kind, 0.0};
        auto f = jcm::coherent_amplitudes(kAlpha, kTol, 3);
        double t_r = jcm::revival_time(p, jcm::mean_photon_number(f));
        double t_max = (kind == Nonlinearity::intensity_dependent ? 2.2 : 1.45) * t_r;
        auto steps = std::max<std::size_t>(
            std::size_t(std::ceil(t_max / jcm::default_time_step(p, f))), 2);
        auto grid = jcm::time_grid(t_max, steps);
        jcm::Propagator prop(f, p);
        std::vector<double> sz(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            sz[i] = prop.inversion(grid[i]);
        jcm::TimeSeries ts;
        ts.t = grid;
        ts.add_column("sigma_z", std::move(sz));
        jcm::RevivalOptions opt;
        opt.period_hint = t_r;
        auto rep = jcm::detect_revivals(ts, "sigma_z", opt);
        bool ok = !rep.detected_centers.empty() &&
                  std::abs(rep.detected_centers.front() - t_r) <= 0.1 * t_r;
        v.check(ok,
                fmt("first revival center vs prediction [%s m=1]",
                    kind_name(kind)),
                rep.detected_centers.empty()
                    ? std::string("no revival detected")
                    : fmt("measured %.4f vs predicted %.4f (tol 10%%)",
                          rep.detected_centers.front(), t_r));
    }

    // Ladder-operator oracle vs the moment engine.
    {
        jcm::ModelParams p{1, Nonlinearity::intensity_dependent, 0.0};
        auto f = jcm::coherent_amplitudes(kAlpha, kTol, 4);
        auto s = jcm::evolve(f, p, 1.3);
        double worst = 0.0;
        for (int k : {1, 2})
            worst = std::max(worst, std::abs(jcm::moment_oracle(s, k) -
                                             jcm::field_moment(s, k)));
        v.check(worst <= 1e-11, "ladder-operator oracle == moment engine",
                fmt("max |delta| = %.3e (tol 1e-11)", worst));
    }

    // Inversion readout from S_1 for a sparse superposition.
    {
        const double r = 1.0 / std::sqrt(2.0);
        auto f = jcm::custom_state({{r, 0.0}, {0, 0}, {0, 0}, {r, 0.0}}, 3);
        double worst = 0.0;
        for (auto kind : kinds) {
            jcm::ModelParams p{1, kind, 0.0};
            for (double T : {0.3, 1.1, 2.7})
                worst = std::max(
                    worst, std::abs(jcm::inversion_from_squeezing(f, p, T) -
                                    jcm::inversion_closed_form(f, p, T)));
        }
        v.check(worst <= 1e-10, "inversion readout from S_1 (sparse state)",
                fmt("max |delta| = %.3e (tol 1e-10)", worst));
    }

    if (v.failures == 0)
        std::printf("all checks passed\n");
    else
        std::printf("%d check(s) FAILED\n", v.failures);
    return v.failures == 0 ? 0 : 1;
}

// --- wiring ----------------------------------------------------------------

void add_field_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--model", cfg.model,
                    "nonlinearity: ijcm (intensity-dependent) or sjcm "
                    "(standard)")
        ->required()
        ->check(CLI::IsMember({"ijcm", "sjcm"}));
    sub->add_option("--m", cfg.m, "transition order (photons per atomic flip)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* grp = sub->add_option_group("initial field",
                                      "exactly one of --alpha / --field");
    grp->add_option("--alpha", cfg.alpha, "coherent amplitude (real, >= 0)");
    grp->add_option("--field", cfg.field_file,
                    "custom state file: one 're [im]' amplitude per line")
        ->check(CLI::ExistingFile);
    grp->require_option(1);
    sub->add_option("--eta", cfg.eta, "scaled detuning")
        ->check(
            [](const std::string& s) -> std::string {
                try {
                    if (!std::isfinite(std::stod(s)))
                        return "must be finite";
                } catch (...) {
                    return "not a number";
                }
                return {};
            },
            "finite")
        ->capture_default_str();
    sub->add_option("--tail-tol", cfg.tail_tol,
                    "coherent truncation tail mass")
        ->capture_default_str();
    sub->add_flag("--emit-plot-script", cfg.emit_plot,
                  "also write a gnuplot script next to the CSV");
    sub->add_flag("--stamp", cfg.stamp,
                  "record a generation timestamp (breaks bit-reproducibility)");
}

void add_grid_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--t-max", cfg.t_max, "time horizon (scaled units)")
        ->check(
            [](const std::string& s) -> std::string {
                try {
                    double x = std::stod(s);
                    if (!std::isfinite(x) || x <= 0.0)
                        return "must be finite and > 0";
                } catch (...) {
                    return "not a number";
                }
                return {};
            },
            "finite > 0")
        ->capture_default_str();
    sub->add_option("--steps", cfg.steps,
                    "number of grid steps, >= 2 (grid has steps+1 points; "
                    "default resolves the fastest Rabi period)")
        ->check(CLI::Range(std::size_t(2), std::size_t(200000000)));
}

void add_order_option(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("-N,--order", cfg.order, "moment order N")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_output_option(CLI::App* sub, RunConfig& cfg, const char* def) {
    cfg.output = def;
    sub->add_option("-o,--output", cfg.output, "output CSV path")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiphoton Jaynes-Cummings dynamics: deterministic CSV "
                 "time series and self-checks"};
    app.require_subcommand(1);

    RunConfig inv, sq, re, rp;
    int status = 0;

    auto* c_inv = app.add_subcommand(
        "inversion", "atomic inversion <sigma_z>(T) on a uniform grid");
    add_field_options(c_inv, inv);
    add_grid_options(c_inv, inv);
    add_output_option(c_inv, inv, "inversion.csv");
    c_inv->callback([&] { cmd_inversion(inv); });

    auto* c_sq = app.add_subcommand(
        "squeezing", "quadrature squeezing factors S_N, Q_N over time");
    add_field_options(c_sq, sq);
    add_grid_options(c_sq, sq);
    add_order_option(c_sq, sq);
    add_output_option(c_sq, sq, "squeezing.csv");
    c_sq->callback([&] { cmd_squeezing(sq); });

    auto* c_re = app.add_subcommand(
        "rescaled", "rescaled squeezing factor V_N(T) = (nbar^N - "
                    "Q_N(bT/N))/nbar^N");
    add_field_options(c_re, re);
    add_grid_options(c_re, re);
    add_order_option(c_re, re);
    add_output_option(c_re, re, "rescaled.csv");
    c_re->add_flag("--compare-inversion", re.compare_inversion,
                   "add the one-photon inversion column and similarity "
                   "metrics");
    c_re->callback([&] { cmd_rescaled(re); });

    auto* c_rp = app.add_subcommand(
        "rabi-profile", "Rabi frequency differences Omega_n and P(n) over n");
    add_field_options(c_rp, rp);
    add_output_option(c_rp, rp, "rabi-profile.csv");
    c_rp->add_option("--rescale", rp.rescale,
                     "divide omega_n by this factor (co-plotting aid)")
        ->check(
            [](const std::string& s) -> std::string {
                try {
                    if (std::stod(s) == 0.0)
                        return "must be nonzero";
                } catch (...) {
                    return "not a number";
                }
                return {};
            },
            "nonzero")
        ->capture_default_str();
    c_rp->callback([&] { cmd_rabi_profile(rp); });

    auto* c_ver = app.add_subcommand(
        "verify", "reduced-scale oracle-equivalence and invariant suite");
    c_ver->callback([&] { status = cmd_verify(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const jcm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return status;
}
