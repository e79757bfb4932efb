// scenario.hpp — scenario execution and CSV emission.
//
// CSV is the output contract: LF line endings, '.' decimal separator, %.12g
// formatting, no quoting (all fields numeric). Rows are written in grid
// order regardless of how the computation was parallelized, so a fixed
// config yields byte-identical files across runs and thread counts.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cbath/config.hpp"
#include "cbath/entanglement.hpp"
#include "cbath/evolve.hpp"

namespace cbath {

struct ScenarioRow {
    double t;
    EntanglementResult ent;
    double purity;
};

inline std::vector<ScenarioRow> run_scenario(const ScenarioConfig& cfg, int n_threads = 1) {
    cfg.validate();
    if (!cfg.sweep_axis.empty())
        throw ConfigError("run_scenario: config has a sweep_axis; use run_sweep");
    const std::vector<double> grid = cfg.time_grid();
    const std::vector<CovarianceMatrix> covs =
        evolve(cfg.init, cfg.bath, grid, cfg.quad, n_threads);
    std::vector<ScenarioRow> rows(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rows[i].t = grid[i];
        rows[i].ent = analyze(covs[i]);
        rows[i].purity = purity(covs[i]);
    }
    return rows;
}

namespace detail {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace detail

inline void write_scenario_csv(const std::vector<ScenarioRow>& rows, std::ostream& out) {
    out << "t,E_N,sigma_minus_tilde,sigma_plus_tilde,det_Lambda,purity,min_symplectic,"
           "detA,detB,detC\n";
    for (const auto& r : rows) {
        out << detail::format_number(r.t) << ',' << detail::format_number(r.ent.log_negativity)
            << ',' << detail::format_number(r.ent.sigma_minus_tilde) << ','
            << detail::format_number(r.ent.sigma_plus_tilde) << ','
            << detail::format_number(r.ent.det_full) << ',' << detail::format_number(r.purity)
            << ',' << detail::format_number(r.ent.min_symplectic) << ','
            << detail::format_number(r.ent.det_a) << ',' << detail::format_number(r.ent.det_b)
            << ',' << detail::format_number(r.ent.det_c) << '\n';
    }
}

inline void write_scenario_csv(const std::vector<ScenarioRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: keep LF endings everywhere
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    write_scenario_csv(rows, out);
    if (!out) throw NumericalError("failed writing '" + path + "'");
}

// ----- sweep summaries -----

// First t with E_N above the onset threshold; for initially entangled runs
// (z > 0) the onset must follow a death (a row with E_N = 0), making it a
// revival time. NaN when the event never happens on the grid.
inline double delay_time(const std::vector<ScenarioRow>& rows, double z) {
    const double onset = 1e-3;
    bool died = (z <= 0.0); // separable start: any onset counts
    for (const auto& r : rows) {
        if (!died && r.ent.log_negativity <= 1e-12) died = true;
        else if (died && r.ent.log_negativity > onset) return r.t;
    }
    return std::nan("");
}

inline double max_entanglement(const std::vector<ScenarioRow>& rows) {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.ent.log_negativity);
    return m;
}

// mean of the last fifth of the grid, a plateau estimate
inline double asymptotic_entanglement(const std::vector<ScenarioRow>& rows) {
    if (rows.empty()) return std::nan("");
    const std::size_t start = rows.size() - std::max<std::size_t>(1, rows.size() / 5);
    double sum = 0.0;
    for (std::size_t i = start; i < rows.size(); ++i) sum += rows[i].ent.log_negativity;
    return sum / static_cast<double>(rows.size() - start);
}

struct SweepSummaryRow {
    std::string token; // literal value string from the config
    double value;
    double delay_time;
    double max_en;
    double asymptotic_en;
};

namespace detail {

inline std::string sweep_point_path(const std::string& base, const std::string& axis,
                                    const std::string& token) {
    const std::size_t dot = base.rfind('.');
    const std::size_t slash = base.find_last_of("/\\");
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    const std::string stem = has_ext ? base.substr(0, dot) : base;
    const std::string ext = has_ext ? base.substr(dot) : std::string(".csv");
    return stem + "_" + axis + "_" + token + ext;
}

} // namespace detail

// One CSV per sweep value plus a summary CSV at cfg.output_path.
inline std::vector<SweepSummaryRow> run_sweep(const ScenarioConfig& cfg, int n_threads = 1) {
    cfg.validate();
    if (cfg.sweep_axis.empty()) throw ConfigError("run_sweep: config has no sweep_axis");
    std::vector<SweepSummaryRow> summary;
    summary.reserve(cfg.sweep_values.size());
    for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
        const ScenarioConfig point = cfg.at_sweep_value(cfg.sweep_values[i]);
        const std::vector<ScenarioRow> rows = run_scenario(point, n_threads);
        write_scenario_csv(rows, detail::sweep_point_path(cfg.output_path, cfg.sweep_axis,
                                                          cfg.sweep_tokens[i]));
        SweepSummaryRow s;
        s.token = cfg.sweep_tokens[i];
        s.value = cfg.sweep_values[i];
        s.delay_time = delay_time(rows, point.init.z);
        s.max_en = max_entanglement(rows);
        s.asymptotic_en = asymptotic_entanglement(rows);
        summary.push_back(std::move(s));
    }
    return summary;
}

inline void write_sweep_summary_csv(const std::string& axis,
                                    const std::vector<SweepSummaryRow>& summary,
                                    std::ostream& out) {
    out << axis << ",delay_time,max_EN,asymptotic_EN\n";
    for (const auto& s : summary)
        out << s.token << ',' << detail::format_number(s.delay_time) << ','
            << detail::format_number(s.max_en) << ',' << detail::format_number(s.asymptotic_en)
            << '\n';
}

inline void write_sweep_summary_csv(const std::string& axis,
                                    const std::vector<SweepSummaryRow>& summary,
                                    const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    write_sweep_summary_csv(axis, summary, out);
    if (!out) throw NumericalError("failed writing '" + path + "'");
}

// ----- self check -----

// Fast invariant sweep over a fixed reference setup: kernel parity, kernel
// closed form at T=0, coefficient bounds, dual-route negativity agreement,
// two-mode squeezed benchmark, and physicality of a short reference run.
inline bool self_check(std::ostream& log) {
    int failures = 0;
    const auto report = [&](const char* name, bool ok) {
        log << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    BathSpec spec;
    spec.eta = 1.0;
    spec.mass = 1.0;
    spec.omega_cutoff = M_PI / 4.0;
    spec.beta = 50.0;
    spec.k0L = 1.0;
    QuadratureConfig quad;
    quad.t_min = default_t_min(spec);

    try {
        // kernel parity and T=0 closed form
        bool parity = true;
        for (double tau : {0.3, 1.7, 6.0})
            parity = parity && std::abs(thermal_kernel(tau, spec, quad) -
                                        thermal_kernel(-tau, spec, quad)) < 1e-12;
        report("thermal kernel parity", parity);

        BathSpec cold = spec;
        cold.beta = kBetaZeroTemperature;
        bool closed = true;
        for (double tau : {0.5, 2.0, 8.0}) {
            const double w = cold.omega_cutoff * tau;
            const double exact = (std::cos(w) + w * std::sin(w) - 1.0) / (tau * tau);
            closed = closed && std::abs(thermal_kernel(tau, cold, quad) - exact) <
                                   1e-8 * (std::abs(exact) + 1.0);
        }
        report("thermal kernel T=0 closed form", closed);

        // coefficient bounds in both sectors
        const double t_probe = 6.0;
        const KernelTable table = build_kernel_table(t_probe, spec, quad);
        bool bounds = true;
        for (double t : {0.5, 2.0, 4.0, 6.0}) {
            bounds = bounds && coefficients_cm(t, spec, table, quad).satisfies_bounds();
            bounds = bounds && coefficients_rel(t, spec, table, quad).satisfies_bounds();
        }
        report("coefficient positivity and Cauchy-Schwarz", bounds);

        // two-mode squeezed benchmark and dual-route agreement on it
        bool tms = true;
        for (double z : {0.25, 0.5, 1.0}) {
            InitialStateSpec init;
            init.z = z;
            const auto [cm0, rel0] = initial_sectors(init);
            const CovarianceMatrix cov =
                assemble_covariance(sector_covariance(cm0), sector_covariance(rel0));
            tms = tms && std::abs(log_negativity(cov) - 2.0 * z) < 1e-8;
            const auto pt = pt_symplectic_eigenvalues(cov);
            tms = tms && std::abs(pt[1] - 0.5 * std::exp(-2.0 * z)) < 1e-10;
        }
        report("two-mode squeezed negativity benchmark", tms);

        // physicality of a short reference run; heavy particles on a hot bath
        // so the sudden switch-on cannot dent the symplectic floor
        BathSpec heavy = spec;
        heavy.mass = 100.0;
        heavy.beta = 0.01;
        InitialStateSpec init;
        init.z = 0.5;
        ScenarioConfig cfg;
        cfg.bath = heavy;
        cfg.init = init;
        cfg.t_max = 8.0;
        cfg.n_times = 41;
        cfg.quad.t_min = default_t_min(heavy);
        const auto rows = run_scenario(cfg);
        bool physical = true;
        for (const auto& r : rows) {
            physical = physical && r.ent.min_symplectic >= 0.5 - 1e-6;
            physical = physical && r.ent.det_full >= 1.0 / 16.0 - 1e-8;
            physical = physical && r.ent.log_negativity >= 0.0;
        }
        report("reference run physicality", physical);
    } catch (const std::exception& e) {
        log << "FAIL exception: " << e.what() << "\n";
        ++failures;
    }

    log << (failures == 0 ? "self check passed\n" : "self check FAILED\n");
    return failures == 0;
}

} // namespace cbath
