// qudit_readout: scenario runner for dispersive readout of molecular spin qudits.
//
// Exit codes: 0 success, 2 schema or usage error, 3 numerical failure, 4 I/O error.

#include "qudit/bundled.hpp"
#include "qudit/runner.hpp"
#include "qudit/scenario.hpp"
#include "qudit/selfcheck.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit { kOk = 0, kSchema = 2, kNumerical = 3, kIo = 4 };

qudit::ScenarioConfig load(const std::string& ref) {
    if (std::filesystem::exists(ref)) return qudit::load_scenario_file(ref);
    if (const auto* b = qudit::find_bundled(ref)) return qudit::parse_scenario(std::string(b->yaml));
    throw qudit::IoError("no such file or bundled scenario: '" + ref + "'");
}

void print_report(const qudit::RunReport& rep) {
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& f : rep.files) std::cout << "wrote " << f << "\n";
}

int cmd_run(const std::string& ref, const std::string& out_dir) {
    const qudit::ScenarioConfig cfg = load(ref);
    print_report(qudit::run_scenario(cfg, out_dir, std::cout));
    return kOk;
}

int cmd_shifts(const std::string& ref, const std::string& out_dir, std::optional<double> at_omega) {
    qudit::ScenarioConfig cfg = load(ref);
    if (!cfg.field) throw qudit::SchemaError(cfg.field_line, "shifts needs a static field in the field block");
    cfg.task = qudit::TaskKind::shifts;
    if (at_omega) cfg.at_omega = at_omega;
    const qudit::SpectralModel sm = qudit::build_spectral_model(cfg.model, *cfg.field, cfg.coupling, cfg.lineshape);
    const qudit::ShiftTable t = qudit::shift_table(sm, cfg.cavity, cfg.at_omega);
    std::printf("%5s  %20s  %20s  %s\n", "state", "re_shift_ghz", "im_shift_ghz", "guard");
    for (std::size_t k = 0; k < t.shifts.size(); ++k)
        std::printf("%5zu  %20s  %20s  %s\n", k, qudit::io::num(t.shifts[k].real()).c_str(),
                    qudit::io::num(t.shifts[k].imag()).c_str(), t.flagged[k] ? "VIOLATED" : "ok");
    print_report(qudit::run_scenario(cfg, out_dir, std::cout));
    return kOk;
}

int cmd_optimize(const std::string& ref, const std::string& out_dir) {
    const qudit::ScenarioConfig cfg = load(ref);
    if (cfg.task != qudit::TaskKind::optimize)
        throw qudit::SchemaError(cfg.task_line, "optimize needs a task block of kind 'optimize'");
    print_report(qudit::run_scenario(cfg, out_dir, std::cout));
    return kOk;
}

int cmd_scenarios(const std::string& name) {
    if (name.empty()) {
        for (const auto& s : qudit::bundled_scenarios()) std::printf("%-18s %s\n", s.name.data(), s.summary.data());
        return kOk;
    }
    const auto* b = qudit::find_bundled(name);
    if (!b) {
        std::cerr << "error: unknown bundled scenario '" << name << "'\n";
        return kIo;
    }
    std::cout << b->yaml;
    return kOk;
}

int cmd_selfcheck() {
    const auto results = qudit::run_selfcheck();
    bool ok = true;
    for (const auto& r : results) {
        std::printf("[%s] %-50s %8.3f s  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
        ok = ok && r.passed;
    }
    return ok ? kOk : kNumerical;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dispersive readout of molecular spin qudits"};
    app.require_subcommand(1);
    std::string config, out_dir = ".", name;
    std::optional<double> at_omega;

    auto* run = app.add_subcommand("run", "run a scenario file or bundled scenario");
    run->add_option("config", config, "scenario file or bundled name")->required();
    run->add_option("-o,--out-dir", out_dir, "output directory");

    auto* shifts = app.add_subcommand("shifts", "print and export the shift table of a scenario");
    shifts->add_option("config", config, "scenario file or bundled name")->required();
    shifts->add_option("-o,--out-dir", out_dir, "output directory");
    shifts->add_option("--at-omega-ghz", at_omega, "evaluate the broadened shift at this probe frequency");

    auto* optimize = app.add_subcommand("optimize", "search the field working point of an optimize scenario");
    optimize->add_option("config", config, "scenario file or bundled name")->required();
    optimize->add_option("-o,--out-dir", out_dir, "output directory");

    auto* scenarios = app.add_subcommand("scenarios", "list bundled scenarios, or print one as YAML");
    scenarios->add_option("name", name, "bundled scenario to print");

    auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kSchema;
    }

    try {
        if (*run) return cmd_run(config, out_dir);
        if (*shifts) return cmd_shifts(config, out_dir, at_omega);
        if (*optimize) return cmd_optimize(config, out_dir);
        if (*scenarios) return cmd_scenarios(name);
        if (*selfcheck) return cmd_selfcheck();
    } catch (const qudit::SchemaError& e) {
        std::cerr << "schema error: " << (config.empty() ? "" : config + ": ") << e.what() << "\n";
        return kSchema;
    } catch (const qudit::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const qudit::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kOk;
}
