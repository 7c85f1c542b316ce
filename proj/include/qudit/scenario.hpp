// scenario.hpp: Declarative scenario files.
//
// A scenario is a YAML mapping with the blocks name, description, model,
// cavity, lineshape, coupling, field, preparation, task and output. Every
// physical quantity carries its unit in the key name (omega_ghz, magnitude_t,
// thermal_k, theta_deg). Unknown keys are rejected; every schema error reports
// the 1-based line of the offending node.

#pragma once

#include "qudit/eigenbasis.hpp"
#include "qudit/inout.hpp"
#include "qudit/models.hpp"
#include "qudit/optimize.hpp"
#include "qudit/units.hpp"

#include <yaml-cpp/yaml.h>

#include <Eigen/Dense>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace qudit {

struct SchemaError : std::runtime_error {
    SchemaError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

enum class TaskKind { spectrum, field_sweep, shifts, sw_check, qnd, optimize };

inline const char* task_name(TaskKind k) {
    switch (k) {
    case TaskKind::spectrum: return "spectrum";
    case TaskKind::field_sweep: return "field-sweep";
    case TaskKind::shifts: return "shifts";
    case TaskKind::sw_check: return "sw-check";
    case TaskKind::qnd: return "qnd";
    case TaskKind::optimize: return "optimize";
    }
    return "?";
}

struct SweepSpec {
    Eigen::Vector3d direction{Eigen::Vector3d::UnitZ()};   // unit vector
    double start{0.0}, stop{0.0};                          // T
    int points{0};

    std::vector<double> grid() const { return linspace(start, stop, static_cast<std::size_t>(points)); }
};

// Which states to prepare. Product labels are resolved against the eigenbasis
// at run time, by largest overlap with the product basis vector.
struct AllStates {};
struct StateList {
    std::vector<int> indices;
};
struct ProductStates {
    std::vector<std::vector<double>> m_values;   // one m per spin factor
};
using PreparationRequest = std::variant<AllStates, StateList, ProductStates, ThermalState, ExplicitPopulations>;

struct ScenarioConfig {
    std::string name;
    std::string description;
    std::string model_kind;
    ModelConfig model;
    std::vector<HalfInt> factors;   // spin factors in Kronecker order
    CavityParams cavity;
    Lineshape lineshape;
    CouplingVector coupling;
    std::optional<FieldVector> field;
    std::optional<SweepSpec> sweep;
    int field_line{0};
    PreparationRequest preparation{AllStates{}};

    TaskKind task{TaskKind::spectrum};
    int task_line{0};
    double omega_start{0.0}, omega_stop{0.0};
    int omega_points{0};
    bool refine_peaks{false};
    double peak_step{0.0};   // GHz, coarse step of the adaptive peak search
    std::optional<double> at_omega;
    int n_max{kDefaultPhotonCutoff};
    SearchSpace search;

    std::string output_prefix;
    bool svg{false};
};

namespace scenario_detail {

inline int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

class Block {
public:
    Block(const YAML::Node& node, std::string where) : node_(node), where_(std::move(where)) {
        if (!node_.IsMap()) throw SchemaError(line_of(node_), where_ + " must be a mapping");
    }

    int line() const { return line_of(node_); }
    bool has(const std::string& key) const { return static_cast<bool>(lookup(key)); }

    YAML::Node get(const std::string& key) {
        seen_.insert(key);
        YAML::Node n = lookup(key);
        if (!n) throw SchemaError(line(), where_ + ": missing required key '" + key + "'");
        return n;
    }
    YAML::Node maybe(const std::string& key) {
        seen_.insert(key);
        return lookup(key);
    }

    double number(const std::string& key) { return as_number(get(key), key); }
    double number_or(const std::string& key, double fallback) {
        YAML::Node n = maybe(key);
        return n ? as_number(n, key) : fallback;
    }
    int integer(const std::string& key) { return as_int(get(key), key); }
    int integer_or(const std::string& key, int fallback) {
        YAML::Node n = maybe(key);
        return n ? as_int(n, key) : fallback;
    }
    std::string text(const std::string& key) { return as_text(get(key), key); }
    std::string text_or(const std::string& key, const std::string& fallback) {
        YAML::Node n = maybe(key);
        return n ? as_text(n, key) : fallback;
    }
    bool flag_or(const std::string& key, bool fallback) {
        YAML::Node n = maybe(key);
        if (!n) return fallback;
        try {
            return n.as<bool>();
        } catch (const YAML::Exception&) {
            throw SchemaError(line_of(n), "'" + key + "' must be true or false");
        }
    }
    Eigen::Vector3d triple(const std::string& key) { return as_triple(get(key), key); }

    // Every key present in the mapping must have been consumed.
    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            const std::string k = it->first.as<std::string>();
            if (!seen_.count(k)) throw SchemaError(line_of(it->first), where_ + ": unknown key '" + k + "'");
        }
    }

    static double as_number(const YAML::Node& n, const std::string& key) {
        if (!n.IsScalar()) throw SchemaError(line_of(n), "'" + key + "' must be a number");
        try {
            const double x = n.as<double>();
            if (!std::isfinite(x)) throw SchemaError(line_of(n), "'" + key + "' must be finite");
            return x;
        } catch (const YAML::Exception&) {
            throw SchemaError(line_of(n), "'" + key + "' must be a number, got '" + n.Scalar() + "'");
        }
    }
    static int as_int(const YAML::Node& n, const std::string& key) {
        if (!n.IsScalar()) throw SchemaError(line_of(n), "'" + key + "' must be an integer");
        try {
            return n.as<int>();
        } catch (const YAML::Exception&) {
            throw SchemaError(line_of(n), "'" + key + "' must be an integer, got '" + n.Scalar() + "'");
        }
    }
    static std::string as_text(const YAML::Node& n, const std::string& key) {
        if (!n.IsScalar()) throw SchemaError(line_of(n), "'" + key + "' must be a string");
        return n.Scalar();
    }
    static std::vector<double> as_list(const YAML::Node& n, const std::string& key) {
        if (!n.IsSequence()) throw SchemaError(line_of(n), "'" + key + "' must be a list of numbers");
        std::vector<double> out;
        for (const auto& e : n) out.push_back(as_number(e, key));
        return out;
    }
    static Eigen::Vector3d as_triple(const YAML::Node& n, const std::string& key) {
        const std::vector<double> v = as_list(n, key);
        if (v.size() != 3) throw SchemaError(line_of(n), "'" + key + "' must have exactly 3 components");
        return {v[0], v[1], v[2]};
    }

private:
    // const access so yaml-cpp never inserts missing keys
    YAML::Node lookup(const std::string& key) const {
        const YAML::Node& c = node_;
        return c[key];
    }

    YAML::Node node_;
    std::string where_;
    std::set<std::string> seen_;
};

inline HalfInt spin_value(Block& b, const std::string& key) {
    const YAML::Node n = b.get(key);
    const double s = Block::as_number(n, key);
    try {
        const HalfInt h = HalfInt::from_double(s);
        if (h.twice() < 1) throw std::invalid_argument("spin must be positive");
        return h;
    } catch (const std::invalid_argument&) {
        throw SchemaError(line_of(n), "'" + key + "' must be a positive half-integer");
    }
}

inline int zeeman_sign(Block& b, int fallback) {
    const YAML::Node n = b.maybe("zeeman_sign");
    if (!n) return fallback;
    const int s = Block::as_int(n, "zeeman_sign");
    if (s != 1 && s != -1) throw SchemaError(line_of(n), "'zeeman_sign' must be +1 or -1");
    return s;
}

inline Eigen::Matrix3d g_tensor(Block& b, const std::string& key, const Eigen::Matrix3d& fallback) {
    const YAML::Node n = b.maybe(key);
    if (!n) return fallback;
    if (!n.IsSequence()) throw SchemaError(line_of(n), "'" + key + "' must be a 3-vector or a 3x3 matrix");
    if (n.size() == 3 && n[0].IsScalar()) return Block::as_triple(n, key).asDiagonal();
    if (n.size() != 3) throw SchemaError(line_of(n), "'" + key + "' must be a 3-vector or a 3x3 matrix");
    Eigen::Matrix3d g;
    for (int r = 0; r < 3; ++r) g.row(r) = Block::as_triple(n[r], key).transpose();
    if (!g.isApprox(g.transpose(), 1e-12)) throw SchemaError(line_of(n), "'" + key + "' must be symmetric");
    return g;
}

inline void parse_model(const YAML::Node& node, ScenarioConfig& cfg) {
    Block b(node, "model");
    cfg.model_kind = b.text("kind");
    const std::string& kind = cfg.model_kind;
    if (kind == "toy_s1") {
        const double d = b.number("d_ghz");
        const Eigen::Matrix3d g = g_tensor(b, "g", 2.0 * Eigen::Matrix3d::Identity());
        GiantSpinConfig m = toy_s1_config(d);
        m.g = g;
        m.zeeman_sign = zeeman_sign(b, +1);
        cfg.model = m;
        cfg.factors = {m.s};
    } else if (kind == "giant_spin") {
        GiantSpinConfig m;
        m.s = spin_value(b, "s");
        m.dz2 = b.number_or("dz2_ghz", 0.0);
        m.g = g_tensor(b, "g", 2.0 * Eigen::Matrix3d::Identity());
        m.zeeman_sign = zeeman_sign(b, +1);
        if (YAML::Node st = b.maybe("stevens_ghz")) {
            if (!st.IsSequence()) throw SchemaError(line_of(st), "'stevens_ghz' must be a list of {k, q, value} entries");
            for (const auto& e : st) {
                Block eb(e, "stevens_ghz entry");
                const int k = eb.integer("k"), q = eb.integer("q");
                const double val = eb.number("value");
                eb.finish();
                if (k != 2) throw SchemaError(eb.line(), "only rank k = 2 Stevens terms are built in");
                if (q < -k || q > k) throw SchemaError(eb.line(), "Stevens index needs |q| <= k");
                m.stevens[{k, q}] += val;
            }
        }
        cfg.model = m;
        cfg.factors = {m.s};
    } else if (kind == "dimer") {
        DimerConfig m;
        m.s1 = spin_value(b, "s1");
        m.s2 = spin_value(b, "s2");
        m.g1_diag = b.triple("g1");
        m.g2_diag = b.triple("g2");
        m.theta = units::degrees(b.number("theta_deg"));
        const bool in_k = b.has("j12_k"), in_ghz = b.has("j12_ghz");
        if (in_k == in_ghz) throw SchemaError(b.line(), "model: give exactly one of 'j12_k' or 'j12_ghz'");
        m.j12 = in_k ? units::kelvin_to_ghz(b.number("j12_k")) : b.number("j12_ghz");
        m.gj1 = b.number("gj1");
        m.gj2 = b.number("gj2");
        m.zeeman_sign = zeeman_sign(b, -1);
        cfg.model = m;
        cfg.factors = {m.s1, m.s2};
    } else if (kind == "electronuclear") {
        ElectroNuclearConfig m;
        m.s = spin_value(b, "s");
        m.i = spin_value(b, "i");
        m.g_perp = b.number("g_perp");
        m.g_par = b.number("g_par");
        m.g_i = b.number_or("g_i", 0.0);
        m.a_par = b.number_or("a_par_ghz", 0.0);
        m.a_perp = b.number_or("a_perp_ghz", 0.0);
        m.p = b.number_or("p_ghz", 0.0);
        m.zeeman_sign = zeeman_sign(b, +1);
        cfg.model = m;
        cfg.factors = {m.s, m.i};
    } else {
        throw SchemaError(line_of(node["kind"]),
                          "model: unknown kind '" + kind + "' (toy_s1, giant_spin, dimer, electronuclear)");
    }
    b.finish();
    try {
        std::visit([](const auto& m) { validate(m); }, cfg.model);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(b.line(), std::string("model: ") + e.what());
    }
}

inline void parse_cavity(const YAML::Node& node, ScenarioConfig& cfg) {
    Block b(node, "cavity");
    cfg.cavity.omega = b.number("omega_ghz");
    cfg.cavity.gamma1 = b.number("gamma1_ghz");
    cfg.cavity.gamma2 = b.number("gamma2_ghz");
    b.finish();
    try {
        cfg.cavity.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(b.line(), std::string("cavity: ") + e.what());
    }
}

inline void parse_lineshape(const YAML::Node& node, ScenarioConfig& cfg) {
    Block b(node, "lineshape");
    cfg.lineshape.eta = b.number("eta_ghz");
    cfg.lineshape.n_molecules = b.number_or("n_molecules", 1.0);
    b.finish();
    if (!(cfg.lineshape.eta >= 0.0)) throw SchemaError(b.line(), "lineshape: eta_ghz must be >= 0");
    if (!(cfg.lineshape.n_molecules >= 1.0)) throw SchemaError(b.line(), "lineshape: n_molecules must be >= 1");
}

inline void parse_coupling(const YAML::Node& node, ScenarioConfig& cfg) {
    Block b(node, "coupling");
    const bool direct = b.has("lambda_ghz"), rms = b.has("b_rms_t");
    if (direct == rms) throw SchemaError(b.line(), "coupling: give exactly one of 'lambda_ghz' or 'b_rms_t'");
    if (rms) {
        cfg.coupling = CouplingVector::from_rms_field(b.triple("b_rms_t"));
    } else {
        cfg.coupling.electronic = b.triple("lambda_ghz");
        if (b.has("lambda_nuclear_ghz")) {
            cfg.coupling.nuclear = b.triple("lambda_nuclear_ghz");
        } else {
            // nuclear coupling follows the electronic one through mu_N / mu_B
            cfg.coupling.nuclear = cfg.coupling.electronic * (units::mu_N / units::mu_B);
        }
    }
    b.finish();
    if (cfg.coupling.electronic.isZero(0.0) && cfg.coupling.nuclear.isZero(0.0))
        throw SchemaError(b.line(), "coupling: at least one component must be nonzero");
}

inline Eigen::Vector3d unit_direction(Block& b) {
    const YAML::Node n = b.get("direction");
    const Eigen::Vector3d d = Block::as_triple(n, "direction");
    if (!(d.norm() > 0.0)) throw SchemaError(line_of(n), "'direction' must be a nonzero vector");
    return d.normalized();
}

inline void parse_field(const YAML::Node& node, ScenarioConfig& cfg) {
    Block b(node, "field");
    cfg.field_line = b.line();
    const int forms = int(b.has("vector_t")) + int(b.has("magnitude_t")) + int(b.has("xi_z_ghz"));
    if (forms > 1) throw SchemaError(b.line(), "field: give at most one of 'vector_t', 'magnitude_t', 'xi_z_ghz'");
    if (b.has("vector_t")) {
        cfg.field = FieldVector::from(b.triple("vector_t"));
    } else if (b.has("magnitude_t")) {
        const Eigen::Vector3d d = unit_direction(b);
        cfg.field = FieldVector::from(b.number("magnitude_t") * d);
    } else if (b.has("xi_z_ghz")) {
        if (cfg.model_kind != "toy_s1")
            throw SchemaError(line_of(node["xi_z_ghz"]), "field: 'xi_z_ghz' is only defined for model kind toy_s1");
        const auto& m = std::get<GiantSpinConfig>(cfg.model);
        const double xi = b.number("xi_z_ghz");
        // zeeman_sign mu_B g_zz B_z = xi_z
        cfg.field = FieldVector{0.0, 0.0, xi / (m.zeeman_sign * units::mu_B * m.g(2, 2))};
    } else if (b.has("direction")) {
        throw SchemaError(b.line(), "field: 'direction' needs 'magnitude_t'");
    }
    if (YAML::Node sw = b.maybe("sweep")) {
        Block sb(sw, "field.sweep");
        SweepSpec s;
        s.direction = unit_direction(sb);
        s.start = sb.number("b_start_t");
        s.stop = sb.number("b_stop_t");
        s.points = sb.integer("points");
        sb.finish();
        if (s.points < 1) throw SchemaError(sb.line(), "field.sweep: points must be >= 1");
        if (s.stop < s.start) throw SchemaError(sb.line(), "field.sweep: b_stop_t must be >= b_start_t");
        cfg.sweep = s;
    }
    if (!cfg.field && !cfg.sweep)
        throw SchemaError(b.line(), "field: need 'vector_t', 'direction' + 'magnitude_t', 'xi_z_ghz' or 'sweep'");
    b.finish();
}

inline void parse_preparation(const YAML::Node& node, ScenarioConfig& cfg) {
    Block b(node, "preparation");
    const int forms = int(b.has("states")) + int(b.has("product_states")) + int(b.has("thermal_k")) +
                      int(b.has("populations"));
    if (forms != 1)
        throw SchemaError(b.line(),
                          "preparation: give exactly one of 'states', 'product_states', 'thermal_k', 'populations'");
    const int d = static_cast<int>(dimension(cfg.model));
    if (b.has("states")) {
        const YAML::Node n = b.get("states");
        if (n.IsScalar() && n.Scalar() == "all") {
            cfg.preparation = AllStates{};
        } else {
            if (!n.IsSequence()) throw SchemaError(line_of(n), "'states' must be 'all' or a list of eigenstate indices");
            StateList sl;
            for (const auto& e : n) {
                const int k = Block::as_int(e, "states");
                if (k < 0 || k >= d)
                    throw SchemaError(line_of(e), "state index " + std::to_string(k) + " outside 0.." + std::to_string(d - 1));
                sl.indices.push_back(k);
            }
            if (sl.indices.empty()) throw SchemaError(line_of(n), "'states' must not be empty");
            cfg.preparation = sl;
        }
    } else if (b.has("product_states")) {
        const YAML::Node n = b.get("product_states");
        if (!n.IsSequence() || n.size() == 0)
            throw SchemaError(line_of(n), "'product_states' must be a non-empty list of m-value lists");
        ProductStates ps;
        for (const auto& e : n) {
            std::vector<double> m = Block::as_list(e, "product_states");
            if (m.size() != cfg.factors.size())
                throw SchemaError(line_of(e), "product state needs one m value per spin factor (" +
                                                  std::to_string(cfg.factors.size()) + ")");
            for (std::size_t f = 0; f < m.size(); ++f) {
                const double s = cfg.factors[f].value();
                const double j = s - m[f];
                if (std::abs(j - std::round(j)) > 1e-9 || j < -1e-9 || j > 2 * s + 1e-9)
                    throw SchemaError(line_of(e), "m value out of range for spin factor " + std::to_string(f));
            }
            ps.m_values.push_back(std::move(m));
        }
        cfg.preparation = ps;
    } else if (b.has("thermal_k")) {
        const YAML::Node n = b.get("thermal_k");
        ThermalState th;
        if (n.IsScalar() && (n.Scalar() == "inf" || n.Scalar() == ".inf")) th.kelvin = INFINITY;
        else th.kelvin = Block::as_number(n, "thermal_k");
        if (!(th.kelvin > 0.0)) throw SchemaError(line_of(n), "'thermal_k' must be > 0");
        cfg.preparation = th;
    } else {
        const YAML::Node n = b.get("populations");
        ExplicitPopulations ep{Block::as_list(n, "populations")};
        if (static_cast<int>(ep.weights.size()) != d)
            throw SchemaError(line_of(n), "'populations' needs " + std::to_string(d) + " entries");
        double sum = 0.0;
        for (double w : ep.weights) {
            if (w < 0.0) throw SchemaError(line_of(n), "'populations' entries must be >= 0");
            sum += w;
        }
        if (!(sum > 0.0)) throw SchemaError(line_of(n), "'populations' must not sum to zero");
        cfg.preparation = ep;
    }
    b.finish();
}

inline TaskKind task_kind(const YAML::Node& n) {
    const std::string k = Block::as_text(n, "kind");
    for (TaskKind t : {TaskKind::spectrum, TaskKind::field_sweep, TaskKind::shifts, TaskKind::sw_check, TaskKind::qnd,
                       TaskKind::optimize})
        if (k == task_name(t)) return t;
    throw SchemaError(line_of(n), "task: unknown kind '" + k + "' (spectrum, field-sweep, shifts, sw-check, qnd, optimize)");
}

inline void parse_task(const YAML::Node& node, ScenarioConfig& cfg) {
    Block b(node, "task");
    const YAML::Node kind = b.get("kind");
    cfg.task = task_kind(kind);
    cfg.task_line = line_of(kind);
    switch (cfg.task) {
    case TaskKind::spectrum:
        cfg.omega_start = b.number("omega_start_ghz");
        cfg.omega_stop = b.number("omega_stop_ghz");
        cfg.omega_points = b.integer("points");
        cfg.refine_peaks = b.flag_or("refine_peaks", false);
        cfg.peak_step = b.number_or("peak_step_ghz", 0.0);
        if (cfg.omega_points < 1) throw SchemaError(b.line(), "task: points must be >= 1");
        if (!(cfg.omega_stop >= cfg.omega_start)) throw SchemaError(b.line(), "task: omega_stop_ghz must be >= omega_start_ghz");
        if (cfg.refine_peaks && !(cfg.peak_step > 0.0))
            throw SchemaError(b.line(), "task: refine_peaks needs peak_step_ghz > 0");
        break;
    case TaskKind::shifts:
        if (b.has("at_omega_ghz")) cfg.at_omega = b.number("at_omega_ghz");
        break;
    case TaskKind::sw_check:
        cfg.n_max = b.integer_or("n_max", kDefaultPhotonCutoff);
        if (cfg.n_max < 2) throw SchemaError(b.line(), "task: n_max must be >= 2");
        [[fallthrough]];
    case TaskKind::field_sweep:
        if (!cfg.sweep) throw SchemaError(cfg.task_line, std::string("task ") + task_name(cfg.task) + " needs field.sweep");
        break;
    case TaskKind::qnd:
        break;
    case TaskKind::optimize: {
        const YAML::Node dirs = b.get("directions");
        if (!dirs.IsSequence() || dirs.size() == 0)
            throw SchemaError(line_of(dirs), "'directions' must be a non-empty list of 3-vectors");
        cfg.search.directions.clear();
        for (const auto& d : dirs) {
            const Eigen::Vector3d v = Block::as_triple(d, "directions");
            if (!(v.norm() > 0.0)) throw SchemaError(line_of(d), "search direction must be nonzero");
            cfg.search.directions.push_back(v.normalized());
        }
        cfg.search.b_min = b.number("b_min_t");
        cfg.search.b_max = b.number("b_max_t");
        cfg.search.b_step = b.number("b_step_t");
        cfg.search.refine_iterations = b.integer_or("refine_iterations", 30);
        if (!(cfg.search.b_step > 0.0)) throw SchemaError(b.line(), "task: b_step_t must be > 0");
        if (!(cfg.search.b_max >= cfg.search.b_min) || cfg.search.b_min < 0.0)
            throw SchemaError(b.line(), "task: need 0 <= b_min_t <= b_max_t");
        if (cfg.search.refine_iterations < 0) throw SchemaError(b.line(), "task: refine_iterations must be >= 0");
        break;
    }
    }
    b.finish();
    const bool needs_field = cfg.task == TaskKind::spectrum || cfg.task == TaskKind::shifts || cfg.task == TaskKind::qnd;
    if (needs_field && !cfg.field)
        throw SchemaError(cfg.task_line, std::string("task ") + task_name(cfg.task) + " needs a static field in the field block");
    if (cfg.task == TaskKind::field_sweep && std::holds_alternative<ProductStates>(cfg.preparation))
        throw SchemaError(cfg.task_line, "task field-sweep takes 'states', 'thermal_k' or 'populations' preparations");
}

inline void parse_output(const YAML::Node& node, ScenarioConfig& cfg) {
    Block b(node, "output");
    cfg.output_prefix = b.text_or("prefix", cfg.output_prefix);
    cfg.svg = b.flag_or("svg", false);
    b.finish();
    if (cfg.output_prefix.empty() || cfg.output_prefix.find('/') != std::string::npos)
        throw SchemaError(b.line(), "output: prefix must be a non-empty file stem without '/'");
}

} // namespace scenario_detail

inline ScenarioConfig parse_scenario(const std::string& text) {
    using namespace scenario_detail;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw SchemaError(e.mark.line + 1, "YAML syntax error: " + e.msg);
    }
    if (!root.IsMap()) throw SchemaError(root ? line_of(root) : 1, "scenario must be a YAML mapping");
    Block top(root, "scenario");
    ScenarioConfig cfg;
    cfg.name = top.text("name");
    cfg.description = top.text_or("description", "");
    cfg.output_prefix = cfg.name;
    parse_model(top.get("model"), cfg);
    parse_cavity(top.get("cavity"), cfg);
    parse_lineshape(top.get("lineshape"), cfg);
    parse_coupling(top.get("coupling"), cfg);
    parse_field(top.get("field"), cfg);
    if (YAML::Node p = top.maybe("preparation")) parse_preparation(p, cfg);
    parse_task(top.get("task"), cfg);
    if (YAML::Node o = top.maybe("output")) parse_output(o, cfg);
    top.finish();
    return cfg;
}

inline ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

// Index into the Kronecker product basis for one m value per factor.
inline Eigen::Index product_basis_index(const std::vector<HalfInt>& factors, const std::vector<double>& m) {
    if (m.size() != factors.size()) throw std::invalid_argument("product_basis_index: one m value per factor");
    Eigen::Index idx = 0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const long j = std::lround(factors[f].value() - m[f]);
        if (j < 0 || j >= factors[f].dim()) throw std::invalid_argument("product_basis_index: m out of range");
        idx = idx * factors[f].dim() + j;
    }
    return idx;
}

struct ResolvedPreparation {
    int label;   // eigenstate index, or -1 for a mixed preparation
    PreparationSpec spec;
};

inline std::vector<ResolvedPreparation> resolve_preparations(const ScenarioConfig& cfg, const EigenSystem& es) {
    std::vector<ResolvedPreparation> out;
    std::visit(
        [&](const auto& req) {
            using T = std::decay_t<decltype(req)>;
            if constexpr (std::is_same_v<T, AllStates>) {
                for (int k = 0; k < es.dim(); ++k) out.push_back({k, PureState{k}});
            } else if constexpr (std::is_same_v<T, StateList>) {
                for (int k : req.indices) out.push_back({k, PureState{k}});
            } else if constexpr (std::is_same_v<T, ProductStates>) {
                for (const auto& m : req.m_values) {
                    const int k = dominant_eigenstate(es, product_basis_index(cfg.factors, m));
                    out.push_back({k, PureState{k}});
                }
            } else {
                out.push_back({-1, req});
            }
        },
        cfg.preparation);
    return out;
}

} // namespace qudit
