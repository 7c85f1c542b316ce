#include "qudit/bundled.hpp"
#include "qudit/runner.hpp"
#include "qudit/scenario.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace qudit;

namespace {

namespace fs = std::filesystem;

const char* kMinimal = R"(name: mini
model:
  kind: toy_s1
  d_ghz: 2.87
cavity:
  omega_ghz: 2.6899
  gamma1_ghz: 4.0e-5
  gamma2_ghz: 4.0e-5
lineshape:
  eta_ghz: 9.4e-3
coupling:
  lambda_ghz: [9.6e-3, 0.0, 0.0]
field:
  xi_z_ghz: 0.1
task:
  kind: shifts
)";

// Replace the first occurrence of `from` in the minimal scenario.
std::string edited(const std::string& from, const std::string& to) {
    std::string s = kMinimal;
    const auto pos = s.find(from);
    if (pos == std::string::npos) throw std::logic_error("edited: pattern not found: " + from);
    return s.replace(pos, from.size(), to);
}

int schema_line(const std::string& yaml) {
    try {
        parse_scenario(yaml);
    } catch (const SchemaError& e) {
        return e.line;
    }
    return 0;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("qudit_scn_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CliResult {
    int code{-1};
    std::string out;
};

#ifdef QUDIT_CLI_PATH
CliResult cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "cli.log";
    const std::string cmd = std::string("\"") + QUDIT_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(log);
    return r;
}
#endif

} // namespace

TEST(Scenario, MinimalParses) {
    const ScenarioConfig cfg = parse_scenario(kMinimal);
    EXPECT_EQ(cfg.name, "mini");
    EXPECT_EQ(cfg.output_prefix, "mini");
    EXPECT_EQ(cfg.task, TaskKind::shifts);
    ASSERT_TRUE(cfg.field.has_value());
    EXPECT_NEAR(2.0 * units::mu_B * cfg.field->bz, 0.1, 1e-15);
    EXPECT_NEAR(cfg.coupling.nuclear.x(), 9.6e-3 * units::mu_N / units::mu_B, 1e-20);
    EXPECT_EQ(cfg.lineshape.n_molecules, 1.0);
    EXPECT_TRUE(std::holds_alternative<AllStates>(cfg.preparation));
}

TEST(Scenario, AllBundledScenariosParse) {
    ASSERT_GE(bundled_scenarios().size(), 10u);
    for (const auto& b : bundled_scenarios()) {
        EXPECT_NO_THROW({
            const ScenarioConfig cfg = parse_scenario(std::string(b.yaml));
            EXPECT_EQ(cfg.name, b.name);
        }) << b.name;
    }
    EXPECT_EQ(find_bundled("no-such-scenario"), nullptr);
}

TEST(Scenario, SchemaErrorsCarryLineNumbers) {
    // unknown key inside the cavity block (line 8)
    EXPECT_EQ(schema_line(edited("  gamma1_ghz: 4.0e-5\n", "  gamma1_ghz: 4.0e-5\n  kappa: 1\n")), 8);
    // non-numeric value on line 6
    EXPECT_EQ(schema_line(edited("omega_ghz: 2.6899", "omega_ghz: fast")), 6);
    // missing required key reported at its block (cavity entries start on line 6)
    EXPECT_EQ(schema_line(edited("  gamma2_ghz: 4.0e-5\n", "")), 6);
    // unknown task kind on line 16
    EXPECT_EQ(schema_line(edited("kind: shifts", "kind: dance")), 16);
    // unknown top-level key
    EXPECT_EQ(schema_line(std::string(kMinimal) + "extra: 1\n"), 17);
    // YAML syntax error
    EXPECT_GT(schema_line(edited("  d_ghz: 2.87", "  d_ghz: [2.87")), 0);
    // xi_z only for the toy model
    EXPECT_GT(schema_line(edited("kind: toy_s1\n  d_ghz: 2.87", "kind: giant_spin\n  s: 1")), 0);
    // vector components
    EXPECT_EQ(schema_line(edited("[9.6e-3, 0.0, 0.0]", "[9.6e-3, 0.0]")), 12);
    // task needing a static field
    EXPECT_GT(schema_line(edited("  xi_z_ghz: 0.1\n",
                                 "  sweep: {direction: [0, 0, 1], b_start_t: 0, b_stop_t: 0.01, points: 3}\n")),
              0);
    // message text names the line
    try {
        parse_scenario(edited("omega_ghz: 2.6899", "omega_ghz: fast"));
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("line 6: ", 0), 0u);
    }
}

TEST(Scenario, PreparationForms) {
    EXPECT_EQ(std::get<StateList>(parse_scenario(std::string(kMinimal) + "preparation: {states: [0, 2]}\n").preparation)
                  .indices.size(),
              2u);
    EXPECT_GT(schema_line(std::string(kMinimal) + "preparation: {states: [3]}\n"), 0);
    EXPECT_GT(schema_line(std::string(kMinimal) + "preparation: {states: [0], thermal_k: 1}\n"), 0);
    const auto th = std::get<ThermalState>(parse_scenario(std::string(kMinimal) + "preparation: {thermal_k: 0.05}\n").preparation);
    EXPECT_DOUBLE_EQ(th.kelvin, 0.05);
    EXPECT_GT(schema_line(std::string(kMinimal) + "preparation: {populations: [1, 0]}\n"), 0);
    EXPECT_GT(schema_line(std::string(kMinimal) + "preparation: {product_states: [[2]]}\n"), 0);
}

TEST(Scenario, ProductStatesResolveAgainstTheEigenbasis) {
    const ScenarioConfig cfg = parse_scenario(std::string(find_bundled("yb-trensal")->yaml));
    ASSERT_TRUE(std::holds_alternative<ProductStates>(cfg.preparation));
    EXPECT_EQ(product_basis_index(cfg.factors, {-0.5, -1.5}), 1 * 6 + 4);
    const SpectralModel sm = build_spectral_model(cfg.model, *cfg.field, cfg.coupling, cfg.lineshape);
    const auto preps = resolve_preparations(cfg, sm.eigen);
    ASSERT_EQ(preps.size(), 2u);
    EXPECT_EQ(preps[0].label, 1);
    EXPECT_EQ(preps[1].label, 4);
    EXPECT_THROW(product_basis_index(cfg.factors, {0.5}), std::invalid_argument);
}

TEST(Scenario, FileLoadingAndRunnerOutputs) {
    TempDir dir("runner");
    EXPECT_THROW(load_scenario_file((dir.path / "absent.yaml").string()), IoError);
    write(dir.path / "mini.yaml", kMinimal);
    const ScenarioConfig cfg = load_scenario_file((dir.path / "mini.yaml").string());
    std::ostringstream log;
    const RunReport rep = run_scenario(cfg, (dir.path / "out").string(), log);
    ASSERT_EQ(rep.files.size(), 1u);
    const std::string csv = slurp(rep.files[0]);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "state_index,re_shift_ghz,im_shift_ghz");
    EXPECT_TRUE(rep.warnings.empty());
}

#ifdef QUDIT_CLI_PATH

TEST(Cli, ScenariosListing) {
    TempDir dir("cli_list");
    const CliResult r = cli("scenarios", dir.path);
    EXPECT_EQ(r.code, 0);
    for (const auto& b : bundled_scenarios()) EXPECT_NE(r.out.find(std::string(b.name)), std::string::npos);
    const CliResult one = cli("scenarios toy-nv", dir.path);
    EXPECT_EQ(one.code, 0);
    EXPECT_NO_THROW(parse_scenario(one.out));
}

TEST(Cli, RunAndShiftsSucceed) {
    TempDir dir("cli_run");
    EXPECT_EQ(cli("run toy-nv -o \"" + dir.path.string() + "\"", dir.path).code, 0);
    EXPECT_TRUE(fs::exists(dir.path / "toy-nv_spectrum.csv"));
    const CliResult s = cli("shifts toy-nv --at-omega-ghz 2.6899 -o \"" + dir.path.string() + "\"", dir.path);
    EXPECT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("re_shift_ghz"), std::string::npos);
}

TEST(Cli, SchemaErrorExitsTwoWithLine) {
    TempDir dir("cli_schema");
    write(dir.path / "bad.yaml", edited("omega_ghz: 2.6899", "omega_ghz: fast"));
    const CliResult r = cli("run \"" + (dir.path / "bad.yaml").string() + "\"", dir.path);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("line 6:"), std::string::npos) << r.out;
    EXPECT_EQ(cli("bogus-command", dir.path).code, 2);
    EXPECT_EQ(cli("optimize toy-nv", dir.path).code, 2);
}

TEST(Cli, NumericalSingularityExitsThree) {
    TempDir dir("cli_num");
    // eta = 0 with the probe exactly on the 0 -> +-1 spin transition
    std::string yaml = edited("eta_ghz: 9.4e-3", "eta_ghz: 0.0");
    yaml = yaml.substr(0, yaml.find("field:")) +
           "field:\n  xi_z_ghz: 0.0\ntask:\n  kind: spectrum\n  omega_start_ghz: 2.87\n  omega_stop_ghz: 2.87\n  points: 1\n";
    write(dir.path / "sing.yaml", yaml);
    const CliResult r = cli("run \"" + (dir.path / "sing.yaml").string() + "\" -o \"" + dir.path.string() + "\"", dir.path);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("transmission_amplitude"), std::string::npos) << r.out;
}

TEST(Cli, IoErrorExitsFour) {
    TempDir dir("cli_io");
    EXPECT_EQ(cli("run \"" + (dir.path / "missing.yaml").string() + "\"", dir.path).code, 4);
    write(dir.path / "blocker", "x");
    EXPECT_EQ(cli("run toy-nv -o \"" + (dir.path / "blocker" / "sub").string() + "\"", dir.path).code, 4);
}

TEST(Cli, SelfcheckPasses) {
    TempDir dir("cli_self");
    const CliResult r = cli("selfcheck", dir.path);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos);
}

#endif
