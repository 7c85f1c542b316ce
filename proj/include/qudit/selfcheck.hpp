// selfcheck.hpp: Invariant suite run by `qudit_readout selfcheck`.

#pragma once

#include "qudit/bundled.hpp"
#include "qudit/dispersive.hpp"
#include "qudit/inout.hpp"
#include "qudit/io.hpp"
#include "qudit/models.hpp"
#include "qudit/runner.hpp"
#include "qudit/scenario.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace qudit {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
    double seconds{0.0};
};

namespace selfcheck_detail {

struct Case {
    std::string name;
    ModelConfig model;
    CouplingVector coupling;
    CavityParams cavity;
};

// One representative of every model kind, single-molecule couplings.
inline std::vector<Case> reference_cases() {
    return {
        {"toy", toy_s1_config(2.87), CouplingVector::electronic_only(9.6e-3, 0.0, 0.0), {2.6899, 4e-5, 4e-5}},
        {"gdw30", gdw30_config(), CouplingVector::from_rms_field({0.0, 1e-3, 0.0}), {5.0, 1e-6, 1e-6}},
        {"ceer", ceer_config(), CouplingVector::from_rms_field({1e-3, 0.0, 0.0}), {2.45, 1e-4, 1e-4}},
        {"yb", yb_trensal_config(), [] {
             CouplingVector c = CouplingVector::electronic_only(0.02, 0.0, 0.0);
             c.nuclear = c.electronic * (units::mu_N / units::mu_B);
             return c;
         }(), {6.0, 5e-7, 5e-7}},
    };
}

inline FieldVector random_field(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {scale * u(rng), scale * u(rng), scale * u(rng)};
}

inline double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

inline std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline CheckResult hermiticity() {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (const Case& c : reference_cases()) {
        for (int k = 0; k < 5; ++k) {
            const OperatorMatrix h = hamiltonian(c.model, random_field(rng, 0.2));
            const OperatorMatrix v = coupling_operator(c.model, c.coupling);
            const SpectralModel sm = make_spectral_model(h, v);
            if (!is_hermitian(h.matrix()) || !is_hermitian(v.matrix()) || !is_hermitian(sm.lambda, 1e-10))
                return {"hermiticity", false, c.name + ": non-Hermitian operator"};
            ++checked;
        }
    }
    return {"hermiticity", true, std::to_string(checked) + " H, V, Lambda triples"};
}

inline CheckResult n_scaling() {
    std::mt19937_64 rng(12);
    double worst = 0.0;
    for (const Case& c : reference_cases()) {
        const OperatorMatrix h = hamiltonian(c.model, random_field(rng, 0.1));
        const double n = 1e6;
        const SpectralModel a =
            make_spectral_model(h, coupling_operator(c.model, c.coupling), PureState{0}, n, 1e-3);
        const SpectralModel b =
            make_spectral_model(h, coupling_operator(c.model, c.coupling.scaled(std::sqrt(n))), PureState{0}, 1.0, 1e-3);
        for (double w : linspace(c.cavity.omega - 0.05, c.cavity.omega + 0.05, 201))
            worst = std::max(worst, rel_diff(transmission_amplitude(w, c.cavity, a), transmission_amplitude(w, c.cavity, b)));
    }
    return {"N-scaling (N, Lambda) = (1, sqrt(N) Lambda)", worst < 1e-12, "max relative difference " + io::num(worst)};
}

inline CheckResult phase_gauge() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * units::pi);
    double worst = 0.0;
    for (const Case& c : reference_cases()) {
        const OperatorMatrix h = hamiltonian(c.model, random_field(rng, 0.1));
        const OperatorMatrix v = coupling_operator(c.model, c.coupling);
        SpectralModel sm = make_spectral_model(h, v, PureState{0}, 1.0, 1e-3);
        SpectralModel gauged = sm;
        for (Eigen::Index k = 0; k < sm.dim(); ++k) gauged.eigen.vectors.col(k) *= std::polar(1.0, ph(rng));
        gauged.lambda = gauged.eigen.vectors.adjoint() * v.matrix() * gauged.eigen.vectors;
        const double scale = std::max(1e-300, sm.lambda.cwiseAbs2().maxCoeff());
        worst = std::max(worst, (sm.lambda.cwiseAbs2() - gauged.lambda.cwiseAbs2()).cwiseAbs().maxCoeff() / scale);
        const double w = c.cavity.omega + 1e-3;
        worst = std::max(worst, rel_diff(transmission_amplitude(w, c.cavity, sm), transmission_amplitude(w, c.cavity, gauged)));
    }
    return {"phase-gauge invariance of |Lambda|^2", worst < 1e-12, "max relative change " + io::num(worst)};
}

inline CheckResult passivity() {
    std::mt19937_64 rng(14);
    double worst = 0.0;
    for (const Case& c : reference_cases()) {
        for (double eta : {0.0, 1e-4, 1e-2}) {
            const OperatorMatrix h = hamiltonian(c.model, random_field(rng, 0.1));
            const SpectralModel sm =
                make_spectral_model(h, coupling_operator(c.model, c.coupling.scaled(10.0)), PureState{0}, 1.0, eta);
            const double bound = c.cavity.bare_peak();
            for (double w : linspace(c.cavity.omega - 0.02, c.cavity.omega + 0.02, 4001)) {
                double t = 0.0;
                try {
                    t = std::abs(transmission_amplitude(w, c.cavity, sm));
                } catch (const SingularEvaluation&) {
                    continue;
                }
                worst = std::max(worst, t / bound - 1.0);
            }
        }
    }
    return {"ground-state passivity |t_c| <= 2 sqrt(g1 g2) / g", worst <= 1e-12,
            "max excess over bound " + io::num(std::max(0.0, worst))};
}

inline CheckResult s2_scaling() {
    std::mt19937_64 rng(15);
    double worst = 0.0;
    const double s = 3.7;
    for (const Case& c : reference_cases()) {
        const OperatorMatrix h = hamiltonian(c.model, random_field(rng, 0.1));
        const SpectralModel a = make_spectral_model(h, coupling_operator(c.model, c.coupling));
        const SpectralModel b = make_spectral_model(h, coupling_operator(c.model, c.coupling.scaled(s)));
        for (int k = 0; k < a.dim(); ++k) {
            worst = std::max(worst, rel_diff(s * s * dispersive_shift(k, a, c.cavity), dispersive_shift(k, b, c.cavity)));
            worst = std::max(worst, rel_diff(s * s * dispersive_shift(k, a, c.cavity, c.cavity.omega + 1e-3),
                                             dispersive_shift(k, b, c.cavity, c.cavity.omega + 1e-3)));
        }
        const EffectiveModel ea = effective_hamiltonian(a, c.cavity, EffectiveMode::full);
        const EffectiveModel eb = effective_hamiltonian(b, c.cavity, EffectiveMode::full);
        auto block = [&](const Matrix& x, const Matrix& y) {
            const double m = std::max(1e-300, y.cwiseAbs().maxCoeff());
            worst = std::max(worst, (s * s * x - y).cwiseAbs().maxCoeff() / m);
        };
        block(ea.static_block, eb.static_block);
        block(ea.number_block, eb.number_block);
        block(ea.create2_block, eb.create2_block);
        block(ea.annihilate2_block, eb.annihilate2_block);
        block(qnd_phi(a, c.cavity), qnd_phi(b, c.cavity));
    }
    return {"s^2 scaling of second-order quantities", worst < 1e-12, "max relative deviation " + io::num(worst)};
}

inline CheckResult csv_determinism() {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / ("qudit_selfcheck_" + std::to_string(std::random_device{}()));
    const ScenarioConfig cfg = parse_scenario(std::string(find_bundled("toy-nv")->yaml));
    std::ostringstream sink;
    std::vector<std::string> first, second;
    try {
        first = run_scenario(cfg, (base / "a").string(), sink).files;
        second = run_scenario(cfg, (base / "b").string(), sink).files;
    } catch (...) {
        fs::remove_all(base);
        throw;
    }
    bool same = first.size() == second.size() && !first.empty();
    for (std::size_t k = 0; same && k < first.size(); ++k) same = slurp(first[k]) == slurp(second[k]);
    fs::remove_all(base);
    return {"CSV determinism", same, std::to_string(first.size()) + " files compared byte-for-byte"};
}

} // namespace selfcheck_detail

inline std::vector<CheckResult> run_selfcheck() {
    using namespace selfcheck_detail;
    const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
        {"hermiticity", hermiticity},
        {"N-scaling", n_scaling},
        {"phase gauge", phase_gauge},
        {"passivity", passivity},
        {"s^2 scaling", s2_scaling},
        {"CSV determinism", csv_determinism},
    };
    std::vector<CheckResult> out;
    for (const auto& [name, fn] : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {name, false, std::string("exception: ") + e.what()};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(r);
    }
    return out;
}

} // namespace qudit
