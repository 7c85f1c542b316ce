// oracle_ed.hpp: Exact diagonalization of spin ⊗ truncated photon mode.
//
// H = H_S ⊗ 1 + 1 ⊗ Omega a†a + V ⊗ (a† + a), spin factor first, photon
// states |0>..|n_max>. This is the independent reference for the
// perturbative shifts and the effective Hamiltonian; it only shares the
// spin Hamiltonian and coupling operator with them.

#pragma once

#include "qudit/eigenbasis.hpp"
#include "qudit/errors.hpp"
#include "qudit/inout.hpp"
#include "qudit/models.hpp"
#include "qudit/operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qudit {

inline constexpr double kOverlapThreshold = 0.7;
inline constexpr double kCutoffDriftTol = 1e-10;   // GHz
inline constexpr int kDefaultPhotonCutoff = 8;

// Truncated annihilation operator on |0>..|n_max>.
inline Matrix annihilation(int n_max) {
    Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Matrix number_operator(int n_max) {
    Matrix n = Matrix::Zero(n_max + 1, n_max + 1);
    for (int k = 0; k <= n_max; ++k) n(k, k) = k;
    return n;
}

struct FullSystem {
    int spin_dim{0};
    int n_max{0};
    Matrix hamiltonian;
    EigenSystem spin;      // eigenbasis of H_S, used to label bare states
    EigenSystem dressed;   // eigenbasis of the full Hamiltonian

    int dim() const noexcept { return spin_dim * (n_max + 1); }
};

inline FullSystem build_full_hamiltonian(const OperatorMatrix& h_spin, const OperatorMatrix& v,
                                         const CavityParams& cav, int n_max) {
    if (n_max < 1) throw std::invalid_argument("build_full_hamiltonian: n_max must be >= 1");
    if (h_spin.dim() != v.dim()) throw std::invalid_argument("build_full_hamiltonian: H_S and V dimensions differ");
    cav.validate();
    FullSystem fs;
    fs.spin_dim = static_cast<int>(h_spin.dim());
    fs.n_max = n_max;
    const Matrix a = annihilation(n_max);
    const Matrix id_ph = identity(n_max + 1);
    fs.hamiltonian = kron(h_spin.matrix(), id_ph) + cav.omega * kron(identity(fs.spin_dim), number_operator(n_max)) +
                     kron(v.matrix(), a + a.adjoint());
    fs.spin = diagonalize(h_spin);
    fs.dressed = diagonalize(fs.hamiltonian);
    return fs;
}

inline FullSystem build_full_hamiltonian(const ModelConfig& model, const FieldVector& field, const CavityParams& cav,
                                         const CouplingVector& lam, int n_max) {
    return build_full_hamiltonian(hamiltonian(model, field), coupling_operator(model, lam), cav, n_max);
}

struct DressedLevel {
    double energy{0.0};
    double overlap{0.0};   // |<dressed|beta, n>|^2
    int index{0};
};

// Dressed level adiabatically connected to |beta> ⊗ |n>, by maximum overlap.
inline DressedLevel dressed_level(const FullSystem& fs, int beta, int n) {
    if (beta < 0 || beta >= fs.spin_dim || n < 0 || n > fs.n_max)
        throw std::invalid_argument("dressed_level: state label out of range");
    const Vector bare = kron(fs.spin.vectors.col(beta), Matrix::Identity(fs.n_max + 1, fs.n_max + 1).col(n));
    const Eigen::VectorXd ov = (fs.dressed.vectors.adjoint() * bare).cwiseAbs2();
    Eigen::Index k = 0;
    const double best = ov.maxCoeff(&k);
    return {fs.dressed.energies(k), best, static_cast<int>(k)};
}

// E(beta, n=1) - E(beta, n=0): the cavity transition frequency seen by state beta.
inline double ed_cavity_frequency(const FullSystem& fs, int beta) {
    const DressedLevel l0 = dressed_level(fs, beta, 0);
    const DressedLevel l1 = dressed_level(fs, beta, 1);
    const double worst = std::min(l0.overlap, l1.overlap);
    if (worst < kOverlapThreshold || l0.index == l1.index)
        throw NonDispersive("ed_cavity_frequency: state " + std::to_string(beta) +
                            " has no unambiguous dressed partner (max overlap " + std::to_string(worst) + ")");
    return l1.energy - l0.energy;
}

struct CutoffRow {
    int n_max{0};
    double drift{std::numeric_limits<double>::quiet_NaN()};   // vs previous cutoff, GHz
    bool converged{false};
};

struct CutoffReport {
    std::vector<CutoffRow> rows;
    bool certified() const { return !rows.empty() && rows.back().converged; }
};

// Drift of the lowest 2d dressed levels between successive cutoffs.
inline CutoffReport cutoff_report(const OperatorMatrix& h_spin, const OperatorMatrix& v, const CavityParams& cav,
                                  const std::vector<int>& n_max_list) {
    for (std::size_t k = 1; k < n_max_list.size(); ++k)
        if (n_max_list[k] <= n_max_list[k - 1]) throw std::invalid_argument("cutoff_report: cutoffs must ascend");
    CutoffReport rep;
    const Eigen::Index keep = 2 * h_spin.dim();
    Eigen::VectorXd prev;
    for (int n_max : n_max_list) {
        const FullSystem fs = build_full_hamiltonian(h_spin, v, cav, n_max);
        const Eigen::Index m = std::min<Eigen::Index>(keep, fs.dressed.dim());
        Eigen::VectorXd low = fs.dressed.energies.head(m);
        CutoffRow row;
        row.n_max = n_max;
        if (prev.size() > 0) {
            const Eigen::Index c = std::min(prev.size(), low.size());
            row.drift = (low.head(c) - prev.head(c)).cwiseAbs().maxCoeff();
            row.converged = row.drift < kCutoffDriftTol;
        }
        rep.rows.push_back(row);
        prev = std::move(low);
    }
    return rep;
}

} // namespace qudit
