// inout.hpp: Cavity transmission from the input-output relations, the
// state-dependent dispersive shifts, spectra and fixed-frequency field sweeps.

#pragma once

#include "qudit/eigenbasis.hpp"
#include "qudit/errors.hpp"
#include "qudit/models.hpp"
#include "qudit/operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qudit {

struct CavityParams {
    double omega{1.0};    // cavity frequency, GHz
    double gamma1{0.0};   // port loss rates, GHz
    double gamma2{0.0};

    double gamma() const noexcept { return gamma1 + gamma2; }
    // Peak transmission of the bare cavity, 2 sqrt(g1 g2) / g.
    double bare_peak() const { return 2.0 * std::sqrt(gamma1 * gamma2) / gamma(); }

    void validate() const {
        if (!(omega > 0.0)) throw std::invalid_argument("CavityParams: omega must be > 0");
        if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0)) throw std::invalid_argument("CavityParams: loss rates must be >= 0");
        if (!(gamma() > 0.0)) throw std::invalid_argument("CavityParams: total loss gamma1 + gamma2 must be > 0");
    }
};

inline constexpr double kSingularTol = 1e-12;   // GHz

// t_c(w) = i sqrt(g1 g2) / (Omega - w - i g/2 + W sum_{a1 != a2} p_{a1a2} |Lambda_{a1a2}|^2 / (w + E_{a1a2} + i eta))
// with p_{a1a2} = p_a1 - p_a2, E_{a1a2} = E_a1 - E_a2 and W the ensemble weight.
inline cplx transmission_amplitude(double omega, const CavityParams& cav, const SpectralModel& sm) {
    cav.validate();
    sm.validate();
    if (!std::isfinite(omega)) throw std::invalid_argument("transmission_amplitude: omega must be finite");
    const Eigen::Index d = sm.dim();
    cplx self = 0.0;
    for (Eigen::Index a1 = 0; a1 < d; ++a1) {
        for (Eigen::Index a2 = 0; a2 < d; ++a2) {
            const double dp = sm.populations(a1) - sm.populations(a2);
            if (a1 == a2 || dp == 0.0) continue;
            const double l2 = std::norm(sm.lambda(a1, a2));
            if (l2 == 0.0) continue;
            const double x = omega + sm.eigen.gap(a1, a2);
            if (sm.eta == 0.0 && std::abs(x) < kSingularTol)
                throw SingularEvaluation("transmission_amplitude: eta = 0 on the spin resonance of pair (" +
                                         std::to_string(a1) + "," + std::to_string(a2) + ")");
            self += dp * l2 / cplx(x, sm.eta);
        }
    }
    const cplx den = cplx(cav.omega - omega, -0.5 * cav.gamma()) + sm.ensemble_weight() * self;
    if (std::abs(den) == 0.0) throw SingularEvaluation("transmission_amplitude: vanishing denominator");
    return cplx(0.0, std::sqrt(cav.gamma1 * cav.gamma2)) / den;
}

// Shift of the cavity resonance for the molecule in eigenstate beta.
// Without at_omega: eta -> 0 form 2W sum_a |Lambda_ab|^2 E_ab / (Omega^2 - E_ab^2).
// With at_omega:    W sum_a 2 |Lambda_ab|^2 E_ab / ((w + i eta)^2 - E_ab^2).
// Here E_ab = E_a - E_beta. The imaginary part is the spin-induced broadening.
inline cplx dispersive_shift(int beta, const SpectralModel& sm, const CavityParams& cav,
                             std::optional<double> at_omega = std::nullopt) {
    cav.validate();
    sm.validate();
    const Eigen::Index d = sm.dim();
    if (beta < 0 || beta >= d) throw std::invalid_argument("dispersive_shift: state index out of range");
    const double w = sm.ensemble_weight();
    cplx acc = 0.0;
    for (Eigen::Index a = 0; a < d; ++a) {
        if (a == beta) continue;
        const double l2 = std::norm(sm.lambda(a, beta));
        const double e = sm.eigen.gap(a, beta);
        if (l2 == 0.0 || e == 0.0) continue;
        if (!at_omega) {
            if (std::abs(std::abs(e) - cav.omega) < kSingularTol)
                throw SingularEvaluation("dispersive_shift: transition (" + std::to_string(a) + "," +
                                         std::to_string(beta) + ") resonant with the cavity");
            acc += 2.0 * l2 * e / (cav.omega * cav.omega - e * e);
        } else {
            const double om = *at_omega;
            if (sm.eta == 0.0 && std::abs(std::abs(e) - std::abs(om)) < kSingularTol)
                throw SingularEvaluation("dispersive_shift: eta = 0 on the resonance of transition (" +
                                         std::to_string(a) + "," + std::to_string(beta) + ")");
            const cplx z(om, sm.eta);
            acc += 2.0 * l2 * e / (z * z - e * e);
        }
    }
    return w * acc;
}

struct GuardViolation {
    int alpha;
    int beta;
    double coupling;   // sqrt(W) |Lambda_ab|
    double detuning;   // ||E_ab| - Omega|
};

// Pairs feeding the shift of beta with sqrt(W)|Lambda| >= ||E| - Omega|.
inline std::vector<GuardViolation> dispersive_guard(int beta, const SpectralModel& sm, const CavityParams& cav) {
    std::vector<GuardViolation> out;
    const double sw = std::sqrt(sm.ensemble_weight());
    for (Eigen::Index a = 0; a < sm.dim(); ++a) {
        if (a == beta) continue;
        const double c = sw * std::abs(sm.lambda(a, beta));
        if (c == 0.0) continue;
        const double det = std::abs(std::abs(sm.eigen.gap(a, beta)) - cav.omega);
        if (c >= det) out.push_back({static_cast<int>(a), beta, c, det});
    }
    return out;
}

struct ShiftTable {
    std::vector<cplx> shifts;              // GHz
    std::vector<bool> flagged;             // dispersive condition violated for that state
    std::vector<GuardViolation> violations;

    bool all_dispersive() const { return violations.empty(); }
};

inline ShiftTable shift_table(const SpectralModel& sm, const CavityParams& cav,
                              std::optional<double> at_omega = std::nullopt) {
    ShiftTable t;
    for (int b = 0; b < sm.dim(); ++b) {
        t.shifts.push_back(dispersive_shift(b, sm, cav, at_omega));
        auto v = dispersive_guard(b, sm, cav);
        t.flagged.push_back(!v.empty());
        t.violations.insert(t.violations.end(), v.begin(), v.end());
    }
    return t;
}

struct TransmissionTrace {
    std::vector<double> omega;   // GHz
    std::vector<cplx> t;
    std::vector<double> abs_t;
    std::vector<double> phase;   // rad, continuously unwrapped

    std::size_t size() const noexcept { return omega.size(); }
};

inline double wrap_to_pi(double x) {
    x = std::remainder(x, 2.0 * units::pi);   // [-pi, pi]
    return x;
}

inline TransmissionTrace transmission_spectrum(const std::vector<double>& grid, const CavityParams& cav,
                                               const SpectralModel& sm) {
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] >= grid[k - 1])) throw std::invalid_argument("transmission_spectrum: grid must be sorted ascending");
    TransmissionTrace tr;
    tr.omega = grid;
    tr.t.reserve(grid.size());
    tr.abs_t.reserve(grid.size());
    tr.phase.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const cplx t = transmission_amplitude(grid[k], cav, sm);
        tr.t.push_back(t);
        tr.abs_t.push_back(std::abs(t));
        const double raw = std::arg(t);
        tr.phase.push_back(k == 0 ? raw : tr.phase.back() + wrap_to_pi(raw - std::arg(tr.t[k - 1])));
    }
    return tr;
}

inline std::vector<double> linspace(double start, double stop, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = start;
        return out;
    }
    for (std::size_t k = 0; k < n; ++k)
        out[k] = start + (stop - start) * static_cast<double>(k) / static_cast<double>(n - 1);
    return out;
}

struct Peak {
    double omega{0.0};
    double height{0.0};
    std::size_t index{0};
};

// Argmax of |t| with a parabola through the neighbouring samples.
inline Peak find_peak(const TransmissionTrace& tr) {
    if (tr.size() == 0) throw std::invalid_argument("find_peak: empty trace");
    std::size_t k = 0;
    for (std::size_t i = 1; i < tr.size(); ++i)
        if (tr.abs_t[i] > tr.abs_t[k]) k = i;
    Peak p{tr.omega[k], tr.abs_t[k], k};
    if (k == 0 || k + 1 == tr.size()) return p;
    const double x0 = tr.omega[k - 1], x1 = tr.omega[k], x2 = tr.omega[k + 1];
    const double y0 = tr.abs_t[k - 1], y1 = tr.abs_t[k], y2 = tr.abs_t[k + 1];
    const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
    const double curv = (d12 - d01) / (x2 - x0);
    if (!(curv < 0.0)) return p;
    // vertex of y = y1 + b (x - x1) + curv (x - x1)^2 through the three samples
    const double b = d01 + curv * (x1 - x0);
    const double dx = -b / (2.0 * curv);
    if (std::abs(dx) > std::max(x1 - x0, x2 - x1)) return p;
    p.omega = x1 + dx;
    p.height = y1 + b * dx + curv * dx * dx;
    return p;
}

struct PeakProfile {
    double omega{0.0};
    double height{0.0};
    double fwhm{0.0};   // GHz; left and right half-maximum crossings located by bisection
};

// Peak of |t_c| inside [lo, hi]: coarse scan at `step`, golden-section refinement
// in the bracketing cells, then half-maximum crossings walked outward and bisected.
// Resolves lines much narrower than the scan step as long as the step is below
// the spacing between neighbouring peaks and not far above the linewidth.
inline PeakProfile measure_peak(double lo, double hi, double step, const CavityParams& cav, const SpectralModel& sm) {
    if (!(hi > lo) || !(step > 0.0)) throw std::invalid_argument("measure_peak: need lo < hi and step > 0");
    auto f = [&](double w) { return std::abs(transmission_amplitude(w, cav, sm)); };
    const std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
    const std::vector<double> grid = linspace(lo, hi, n);
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = f(grid[i]);
        if (y > best) {
            best = y;
            k = i;
        }
    }
    double a = grid[k == 0 ? 0 : k - 1], b = grid[k + 1 < n ? k + 1 : n - 1];
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = f(x2);
        }
    }
    PeakProfile p;
    p.omega = f1 >= f2 ? x1 : x2;
    p.height = std::max(f1, f2);
    if (best > p.height) {
        p.omega = grid[k];
        p.height = best;
    }
    const double half = 0.5 * p.height;
    auto crossing = [&](double dir) {
        double inner = p.omega, d = std::max(1e-12, 1e-3 * step);
        double outer = p.omega + dir * d;
        while (f(outer) > half) {
            inner = outer;
            d *= 2.0;
            outer = p.omega + dir * d;
            if (d > 1e3 * (hi - lo)) throw NumericalError("measure_peak: no half-maximum crossing");
        }
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (inner + outer);
            (f(mid) > half ? inner : outer) = mid;
        }
        return 0.5 * (inner + outer);
    };
    p.fwhm = crossing(+1.0) - crossing(-1.0);
    return p;
}

// Phase-sign truth table for S = 1: signs of arg t_c at center -/+ delta.
//   (+,+) -> M = -1,  (+,-) -> M = +1,  (-,-) -> M = 0.
inline int classify_s1_phase(int left_sign, int right_sign) {
    if ((left_sign != 1 && left_sign != -1) || (right_sign != 1 && right_sign != -1))
        throw std::invalid_argument("classify_s1_phase: signs must be +1 or -1");
    if (left_sign > 0 && right_sign > 0) return -1;
    if (left_sign > 0 && right_sign < 0) return +1;
    if (left_sign < 0 && right_sign < 0) return 0;
    throw UnclassifiableState("classify_s1_phase: sign pattern (-,+) is outside the truth table");
}

inline int phase_sign(cplx t) { return std::arg(t) > 0.0 ? 1 : -1; }

// Signs of the transmission phase at center - delta and center + delta.
inline std::pair<int, int> phase_probe_signs(double center, double delta, const CavityParams& cav,
                                             const SpectralModel& sm) {
    return {phase_sign(transmission_amplitude(center - delta, cav, sm)),
            phase_sign(transmission_amplitude(center + delta, cav, sm))};
}

// ---------------------------------------------------------------------------
// Model-level helpers

struct Lineshape {
    double eta{0.0};            // GHz
    double n_molecules{1.0};
};

inline SpectralModel build_spectral_model(const ModelConfig& model, const FieldVector& field,
                                          const CouplingVector& lam, const Lineshape& ls,
                                          const PreparationSpec& prep = PureState{0}) {
    return make_spectral_model(hamiltonian(model, field), coupling_operator(model, lam), prep, ls.n_molecules, ls.eta);
}

struct FieldSweep {
    std::vector<double> b;                      // field magnitudes, T
    std::vector<std::vector<double>> abs_t;     // [preparation][field]
};

// |t_c(Omega)| versus field magnitude along a fixed direction, one curve per
// preparation (all pure eigenstates when preps is empty). The model, its
// eigenbasis and Lambda are rebuilt at every field value.
inline FieldSweep field_sweep_fixed_frequency(const std::vector<double>& b_grid, const Eigen::Vector3d& direction,
                                              const CavityParams& cav, const ModelConfig& model,
                                              const CouplingVector& lam, const Lineshape& ls,
                                              std::vector<PreparationSpec> preps = {}) {
    cav.validate();
    if (preps.empty())
        for (int b = 0; b < dimension(model); ++b) preps.push_back(PureState{b});
    FieldSweep out;
    out.b = b_grid;
    out.abs_t.assign(preps.size(), std::vector<double>(b_grid.size(), 0.0));
    const OperatorMatrix v = coupling_operator(model, lam);
    for (std::size_t k = 0; k < b_grid.size(); ++k) {
        SpectralModel sm = make_spectral_model(hamiltonian(model, FieldVector::from(b_grid[k] * direction)), v,
                                               PureState{0}, ls.n_molecules, ls.eta);
        for (std::size_t j = 0; j < preps.size(); ++j) {
            sm.populations = populations(sm.eigen, preps[j]);
            out.abs_t[j][k] = std::abs(transmission_amplitude(cav.omega, cav, sm));
        }
    }
    return out;
}

} // namespace qudit
