// runner.hpp: Execute a parsed scenario and write its CSV/SVG outputs.

#pragma once

#include "qudit/dispersive.hpp"
#include "qudit/inout.hpp"
#include "qudit/io.hpp"
#include "qudit/optimize.hpp"
#include "qudit/oracle_ed.hpp"
#include "qudit/scenario.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace qudit {

struct RunReport {
    std::vector<std::string> files;
    std::vector<std::string> warnings;
};

namespace runner_detail {

inline std::string join(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

inline void guard_warnings(const SpectralModel& sm, const CavityParams& cav, RunReport& rep) {
    for (int b = 0; b < sm.dim(); ++b)
        for (const GuardViolation& g : dispersive_guard(b, sm, cav))
            rep.warnings.push_back("dispersive guard: pair (" + std::to_string(g.alpha) + "," + std::to_string(g.beta) +
                                   ") coupling " + io::num(g.coupling) + " GHz >= detuning " + io::num(g.detuning) +
                                   " GHz");
}

inline std::string state_label(int k) { return k < 0 ? "mixed" : "state " + std::to_string(k); }

inline void run_spectrum(const ScenarioConfig& cfg, const std::string& dir, RunReport& rep) {
    SpectralModel sm = build_spectral_model(cfg.model, *cfg.field, cfg.coupling, cfg.lineshape);
    guard_warnings(sm, cfg.cavity, rep);
    const auto preps = resolve_preparations(cfg, sm.eigen);
    const std::vector<double> grid = linspace(cfg.omega_start, cfg.omega_stop, static_cast<std::size_t>(cfg.omega_points));
    std::vector<std::pair<int, TransmissionTrace>> traces;
    for (const auto& p : preps) {
        sm.populations = populations(sm.eigen, p.spec);
        traces.emplace_back(p.label, transmission_spectrum(grid, cfg.cavity, sm));
    }
    const std::string csv = join(dir, cfg.output_prefix + "_spectrum.csv");
    io::write_csv(csv, io::trace_table(traces));
    rep.files.push_back(csv);

    if (cfg.refine_peaks) {
        io::CsvTable peaks({"state_index", "peak_omega_ghz", "peak_abs_t", "fwhm_ghz", "predicted_omega_ghz"});
        for (const auto& p : preps) {
            sm.populations = populations(sm.eigen, p.spec);
            const PeakProfile pk = measure_peak(cfg.omega_start, cfg.omega_stop, cfg.peak_step, cfg.cavity, sm);
            const double predicted =
                p.label < 0 ? NAN : cfg.cavity.omega + dispersive_shift(p.label, sm, cfg.cavity).real();
            peaks.add_row({std::to_string(p.label), io::num(pk.omega), io::num(pk.height), io::num(pk.fwhm),
                           io::num(predicted)});
        }
        const std::string path = join(dir, cfg.output_prefix + "_peaks.csv");
        io::write_csv(path, peaks);
        rep.files.push_back(path);
    }
    if (cfg.svg) {
        std::vector<io::Series> abs_series, phase_series;
        for (const auto& [label, tr] : traces) {
            abs_series.push_back({state_label(label), tr.omega, tr.abs_t});
            phase_series.push_back({state_label(label), tr.omega, tr.phase});
        }
        const std::string a = join(dir, cfg.output_prefix + "_abs.svg");
        const std::string ph = join(dir, cfg.output_prefix + "_phase.svg");
        io::write_svg(a, abs_series, cfg.name + ": |t_c|", "omega (GHz)", "|t_c|");
        io::write_svg(ph, phase_series, cfg.name + ": phase", "omega (GHz)", "phase (rad)");
        rep.files.push_back(a);
        rep.files.push_back(ph);
    }
}

inline void run_field_sweep(const ScenarioConfig& cfg, const std::string& dir, RunReport& rep) {
    std::vector<PreparationSpec> preps;
    std::vector<int> labels;
    if (const auto* sl = std::get_if<StateList>(&cfg.preparation)) {
        for (int k : sl->indices) {
            preps.push_back(PureState{k});
            labels.push_back(k);
        }
    } else if (const auto* th = std::get_if<ThermalState>(&cfg.preparation)) {
        preps.push_back(*th);
        labels.push_back(-1);
    } else if (const auto* ep = std::get_if<ExplicitPopulations>(&cfg.preparation)) {
        preps.push_back(*ep);
        labels.push_back(-1);
    } else {
        for (int k = 0; k < dimension(cfg.model); ++k) {
            preps.push_back(PureState{k});
            labels.push_back(k);
        }
    }
    const SweepSpec& s = *cfg.sweep;
    const FieldSweep sw =
        field_sweep_fixed_frequency(s.grid(), s.direction, cfg.cavity, cfg.model, cfg.coupling, cfg.lineshape, preps);
    const std::string csv = join(dir, cfg.output_prefix + "_sweep.csv");
    io::write_csv(csv, io::sweep_csv(sw, labels));
    rep.files.push_back(csv);
    if (cfg.svg) {
        std::vector<io::Series> series;
        for (std::size_t j = 0; j < sw.abs_t.size(); ++j) series.push_back({state_label(labels[j]), sw.b, sw.abs_t[j]});
        const std::string path = join(dir, cfg.output_prefix + "_sweep.svg");
        io::write_svg(path, series, cfg.name + ": |t_c(Omega)|", "B (T)", "|t_c|");
        rep.files.push_back(path);
    }
}

inline void run_shifts(const ScenarioConfig& cfg, const std::string& dir, RunReport& rep) {
    const SpectralModel sm = build_spectral_model(cfg.model, *cfg.field, cfg.coupling, cfg.lineshape);
    guard_warnings(sm, cfg.cavity, rep);
    const ShiftTable t = shift_table(sm, cfg.cavity, cfg.at_omega);
    const std::string csv = join(dir, cfg.output_prefix + "_shifts.csv");
    io::write_csv(csv, io::shift_csv(t));
    rep.files.push_back(csv);
}

inline void run_sw_check(const ScenarioConfig& cfg, const std::string& dir, RunReport& rep) {
    const SweepSpec& s = *cfg.sweep;
    std::vector<FieldVector> fields;
    for (double b : s.grid()) fields.push_back(FieldVector::from(b * s.direction));
    const auto rows = sw_vs_ed_compare(cfg.model, cfg.cavity, cfg.coupling, cfg.n_max, fields);
    io::CsvTable t({"b_t", "discrepancy_ghz", "min_overlap", "dispersive"});
    std::vector<double> bs, disc;
    const std::vector<double> grid = s.grid();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        t.add_row({io::num(grid[k]), io::num(rows[k].discrepancy), io::num(rows[k].min_overlap),
                   rows[k].dispersive ? "1" : "0"});
        if (!rows[k].dispersive)
            rep.warnings.push_back("sw-check: non-dispersive point at b = " + io::num(grid[k]) + " T");
        bs.push_back(grid[k]);
        disc.push_back(rows[k].discrepancy > 0.0 ? std::log10(rows[k].discrepancy) : NAN);
    }
    const std::string csv = join(dir, cfg.output_prefix + "_swcheck.csv");
    io::write_csv(csv, t);
    rep.files.push_back(csv);
    if (cfg.svg) {
        const std::string path = join(dir, cfg.output_prefix + "_swcheck.svg");
        io::write_svg(path, {{"log10 discrepancy", bs, disc}}, cfg.name + ": effective vs exact", "B (T)",
                      "log10 |E_ED - E_eff| (GHz)");
        rep.files.push_back(path);
    }
}

inline void run_qnd(const ScenarioConfig& cfg, const std::string& dir, RunReport& rep, std::ostream& log) {
    SpectralModel sm = build_spectral_model(cfg.model, *cfg.field, cfg.coupling, cfg.lineshape);
    sm.n_molecules = 1.0;   // single-molecule operator identity
    const QNDReport q = qnd_commutator(sm, cfg.cavity);
    io::CsvTable t({"row_state", "col_state", "re_commutator_ghz2", "im_commutator_ghz2", "abs_phi_ghz"});
    for (Eigen::Index r = 0; r < q.commutator.rows(); ++r)
        for (Eigen::Index c = 0; c < q.commutator.cols(); ++c)
            t.add_row({std::to_string(r), std::to_string(c), io::num(q.commutator(r, c).real()),
                       io::num(q.commutator(r, c).imag()), io::num(std::abs(q.phi(r, c)))});
    const std::string csv = join(dir, cfg.output_prefix + "_qnd.csv");
    io::write_csv(csv, t);
    rep.files.push_back(csv);
    log << "qnd: ||[H_S, V~]||_F = " << io::num(q.norm) << " GHz^2, normalized = " << io::num(q.normalized) << "\n";
}

inline void run_optimize(const ScenarioConfig& cfg, const std::string& dir, RunReport& rep, std::ostream& log) {
    const WorkingPointResult r = optimize_working_point(cfg.model, cfg.cavity, cfg.coupling, cfg.lineshape, cfg.search);
    for (const auto& d : r.diagnostics) rep.warnings.push_back("optimize: " + d);
    if (!r.feasible) {
        std::string why;
        for (const auto& d : r.diagnostics) why += "; " + d;
        throw NoWorkingPoint("optimize_working_point: no feasible field in the search space" + why);
    }
    io::CsvTable t({"bx_t", "by_t", "bz_t", "magnitude_t", "objective_ghz", "evaluations"});
    t.add_row({io::num(r.field.bx), io::num(r.field.by), io::num(r.field.bz), io::num(r.magnitude),
               io::num(r.objective), std::to_string(r.evaluations)});
    const std::string path = join(dir, cfg.output_prefix + "_optimum.csv");
    io::write_csv(path, t);
    rep.files.push_back(path);
    ShiftTable st;
    st.shifts = r.shifts;
    const std::string shifts = join(dir, cfg.output_prefix + "_optimum_shifts.csv");
    io::write_csv(shifts, io::shift_csv(st));
    rep.files.push_back(shifts);
    log << "optimum: B = (" << io::num(r.field.bx) << ", " << io::num(r.field.by) << ", " << io::num(r.field.bz)
        << ") T, min separation " << io::num(r.objective) << " GHz\n";
}

} // namespace runner_detail

inline RunReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir, std::ostream& log) {
    using namespace runner_detail;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    RunReport rep;
    switch (cfg.task) {
    case TaskKind::spectrum: run_spectrum(cfg, out_dir, rep); break;
    case TaskKind::field_sweep: run_field_sweep(cfg, out_dir, rep); break;
    case TaskKind::shifts: run_shifts(cfg, out_dir, rep); break;
    case TaskKind::sw_check: run_sw_check(cfg, out_dir, rep); break;
    case TaskKind::qnd: run_qnd(cfg, out_dir, rep, log); break;
    case TaskKind::optimize: run_optimize(cfg, out_dir, rep, log); break;
    }
    return rep;
}

} // namespace qudit
