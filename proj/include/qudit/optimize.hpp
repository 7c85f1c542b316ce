// optimize.hpp: Field working point that maximizes the smallest separation
// between state-dependent cavity shifts, subject to the dispersive guard.
//
// The search is a deterministic grid over field magnitude (anchored at
// multiples of the step, so enlarging the range only adds points) for each
// candidate direction, followed by a golden-section refinement inside every
// grid cell. The reported optimum is the best feasible evaluation seen.

#pragma once

#include "qudit/eigenbasis.hpp"
#include "qudit/inout.hpp"
#include "qudit/models.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qudit {

struct SearchSpace {
    std::vector<Eigen::Vector3d> directions{Eigen::Vector3d::UnitZ()};   // normalized internally
    double b_min{0.0};    // T
    double b_max{0.1};    // T
    double b_step{1e-3};  // T
    int refine_iterations{30};
};

struct PointEvaluation {
    FieldVector field;
    double magnitude{0.0};
    std::vector<cplx> shifts;
    double objective{-1.0};   // min_{i<j} |Re shift_i - Re shift_j|, GHz
    bool guard_ok{false};
    bool degenerate{false};
    bool singular{false};

    bool feasible() const { return guard_ok && !degenerate && !singular && objective > 0.0; }
};

struct WorkingPointResult {
    bool feasible{false};
    FieldVector field;
    double magnitude{0.0};
    Eigen::Vector3d direction{Eigen::Vector3d::UnitZ()};
    std::vector<cplx> shifts;
    double objective{0.0};
    bool guard_ok{false};
    int evaluations{0};
    std::vector<std::string> diagnostics;
};

inline double min_pairwise_separation(const std::vector<cplx>& shifts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < shifts.size(); ++i)
        for (std::size_t j = i + 1; j < shifts.size(); ++j)
            best = std::min(best, std::abs(shifts[i].real() - shifts[j].real()));
    return shifts.size() < 2 ? 0.0 : best;
}

inline PointEvaluation evaluate_working_point(const ModelConfig& model, const OperatorMatrix& v,
                                              const CavityParams& cav, const Lineshape& ls,
                                              const Eigen::Vector3d& unit_dir, double magnitude) {
    PointEvaluation ev;
    ev.magnitude = magnitude;
    ev.field = FieldVector::from(magnitude * unit_dir);
    SpectralModel sm = make_spectral_model(hamiltonian(model, ev.field), v, PureState{0}, ls.n_molecules, ls.eta);
    ev.degenerate = !degenerate_pairs(sm.eigen).empty();
    ev.guard_ok = true;
    try {
        for (int b = 0; b < sm.dim(); ++b) {
            ev.shifts.push_back(dispersive_shift(b, sm, cav));
            if (!dispersive_guard(b, sm, cav).empty()) ev.guard_ok = false;
        }
    } catch (const SingularEvaluation&) {
        ev.singular = true;
        ev.guard_ok = false;
        ev.shifts.clear();
    }
    ev.objective = ev.singular ? -1.0 : min_pairwise_separation(ev.shifts);
    return ev;
}

inline WorkingPointResult optimize_working_point(const ModelConfig& model, const CavityParams& cav,
                                                 const CouplingVector& lam, const Lineshape& ls,
                                                 const SearchSpace& space) {
    cav.validate();
    if (!(space.b_step > 0.0)) throw std::invalid_argument("optimize_working_point: b_step must be > 0");
    if (!(space.b_max >= space.b_min)) throw std::invalid_argument("optimize_working_point: empty magnitude range");
    if (space.directions.empty()) throw std::invalid_argument("optimize_working_point: no search directions");

    const OperatorMatrix v = coupling_operator(model, lam);
    WorkingPointResult res;
    PointEvaluation best;
    bool have_best = false;
    int n_guard = 0, n_degenerate = 0, n_singular = 0, n_zero = 0;

    auto consider = [&](const PointEvaluation& ev, const Eigen::Vector3d& dir) {
        ++res.evaluations;
        if (ev.singular) ++n_singular;
        else if (ev.degenerate) ++n_degenerate;
        else if (!ev.guard_ok) ++n_guard;
        else if (!(ev.objective > 0.0)) ++n_zero;
        if (ev.feasible() && (!have_best || ev.objective > best.objective)) {
            best = ev;
            have_best = true;
            res.direction = dir;
        }
    };
    auto score = [](const PointEvaluation& ev) { return ev.feasible() ? ev.objective : -1.0; };

    const long k_lo = static_cast<long>(std::ceil(space.b_min / space.b_step - 1e-9));
    const long k_hi = static_cast<long>(std::floor(space.b_max / space.b_step + 1e-9));
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);

    for (const Eigen::Vector3d& raw_dir : space.directions) {
        if (!(raw_dir.norm() > 0.0)) throw std::invalid_argument("optimize_working_point: zero direction vector");
        const Eigen::Vector3d dir = raw_dir.normalized();
        auto eval = [&](double b) { return evaluate_working_point(model, v, cav, ls, dir, b); };

        std::vector<PointEvaluation> coarse;
        for (long k = k_lo; k <= k_hi; ++k) {
            coarse.push_back(eval(static_cast<double>(k) * space.b_step));
            consider(coarse.back(), dir);
        }
        for (std::size_t c = 0; c + 1 < coarse.size(); ++c) {
            double lo = coarse[c].magnitude, hi = coarse[c + 1].magnitude;
            double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
            PointEvaluation e1 = eval(x1), e2 = eval(x2);
            consider(e1, dir);
            consider(e2, dir);
            for (int it = 0; it < space.refine_iterations; ++it) {
                if (score(e1) >= score(e2)) {
                    hi = x2;
                    x2 = x1;
                    e2 = e1;
                    x1 = hi - golden * (hi - lo);
                    e1 = eval(x1);
                    consider(e1, dir);
                } else {
                    lo = x1;
                    x1 = x2;
                    e1 = e2;
                    x2 = lo + golden * (hi - lo);
                    e2 = eval(x2);
                    consider(e2, dir);
                }
            }
        }
    }

    if (have_best) {
        res.feasible = true;
        res.field = best.field;
        res.magnitude = best.magnitude;
        res.shifts = best.shifts;
        res.objective = best.objective;
        res.guard_ok = best.guard_ok;
    }
    if (res.evaluations == 0) res.diagnostics.push_back("no grid point inside the magnitude range");
    if (n_degenerate > 0)
        res.diagnostics.push_back("degenerate spin levels at " + std::to_string(n_degenerate) + " of " +
                                  std::to_string(res.evaluations) + " evaluated fields");
    if (n_guard > 0)
        res.diagnostics.push_back("dispersive guard violated at " + std::to_string(n_guard) + " evaluated fields");
    if (n_singular > 0)
        res.diagnostics.push_back("exact cavity resonance at " + std::to_string(n_singular) + " evaluated fields");
    if (n_zero > 0)
        res.diagnostics.push_back("coinciding shifts at " + std::to_string(n_zero) + " evaluated fields");
    return res;
}

} // namespace qudit
