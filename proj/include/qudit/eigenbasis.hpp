// eigenbasis.hpp: Deterministic diagonalization, the coupling tensor in the
// eigenbasis, and state populations.

#pragma once

#include "qudit/errors.hpp"
#include "qudit/operator.hpp"
#include "qudit/spin.hpp"
#include "qudit/units.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace qudit {

// Ascending energies (GHz) and unitary eigenvectors (columns). In each column
// the largest-magnitude entry (first one on ties) is real and non-negative.
struct EigenSystem {
    Eigen::VectorXd energies;
    Matrix vectors;

    Eigen::Index dim() const noexcept { return energies.size(); }
    // E_a - E_b
    double gap(Eigen::Index a, Eigen::Index b) const { return energies(a) - energies(b); }
};

inline constexpr double kDegeneracyTol = 1e-9;   // GHz

namespace detail {

inline void fix_phases(Matrix& u) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        Eigen::Index best = 0;
        double best_mag = -1.0;
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            const double mag = std::abs(u(r, c));
            if (mag > best_mag + 1e-12) {
                best_mag = mag;
                best = r;
            }
        }
        if (best_mag > 0.0) u.col(c) *= std::conj(u(best, c)) / best_mag;
        u(best, c) = cplx(std::abs(u(best, c)), 0.0);
    }
}

} // namespace detail

inline EigenSystem diagonalize(const Matrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0)
        throw std::invalid_argument("diagonalize: Hamiltonian must be square and non-empty");
    if (!is_hermitian(h)) throw std::invalid_argument("diagonalize: Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalError("diagonalize: eigensolver did not converge");
    EigenSystem es;
    es.energies = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
    detail::fix_phases(es.vectors);
    return es;
}

inline EigenSystem diagonalize(const OperatorMatrix& h) { return diagonalize(h.matrix()); }

// Index pairs (i < j) with |E_i - E_j| below tol.
inline std::vector<std::pair<int, int>> degenerate_pairs(const EigenSystem& es, double tol = kDegeneracyTol) {
    std::vector<std::pair<int, int>> out;
    for (Eigen::Index i = 0; i < es.dim(); ++i)
        for (Eigen::Index j = i + 1; j < es.dim(); ++j)
            if (std::abs(es.gap(j, i)) < tol) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return out;
}

// Lambda = U† V U, i.e. Lambda(a, b) = <a|V|b>.
inline Matrix lambda_tensor(const EigenSystem& es, const Matrix& v) {
    if (v.rows() != es.dim() || v.cols() != es.dim())
        throw std::invalid_argument("lambda_tensor: coupling operator dimension does not match the eigensystem");
    if (!is_hermitian(v)) throw std::invalid_argument("lambda_tensor: coupling operator is not Hermitian");
    Matrix lam = es.vectors.adjoint() * v * es.vectors;
    // Symmetrize away rounding so downstream Hermiticity checks are exact.
    return 0.5 * (lam + lam.adjoint());
}

inline Matrix lambda_tensor(const EigenSystem& es, const OperatorMatrix& v) { return lambda_tensor(es, v.matrix()); }

// Giant-spin coupling tensor written out in the |S, M> basis for a diagonal
// g-tensor:
//   Lambda_{a1 a2} = lz gz sum_M M c_{a1,M} c*_{a2,M}
//                  + sum_M gamma_M (lx gx - i ly gy)/2 c_{a1,M+1} c*_{a2,M}
//                  + sum_M gamma_M (lx gx + i ly gy)/2 c_{a1,M} c*_{a2,M+1}
// with gamma_M = sqrt(S(S+1) - M(M+1)) and c_{a,M} = <a|M>.
inline Matrix lambda_giant_spin_explicit(const EigenSystem& es, HalfInt s, const Eigen::Matrix3d& g,
                                         const Eigen::Vector3d& lam) {
    if (es.dim() != s.dim())
        throw std::invalid_argument("lambda_giant_spin_explicit: eigensystem dimension does not match 2s+1");
    const Eigen::Matrix3d off = g - Eigen::Matrix3d(g.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() != 0.0)
        throw UnsupportedOperator("lambda_giant_spin_explicit: g-tensor is not diagonal; use lambda_tensor");

    const int d = s.dim();
    const double sv = s.value();
    const double lzgz = lam.z() * g(2, 2);
    const cplx up = 0.5 * cplx(lam.x() * g(0, 0), -lam.y() * g(1, 1));     // S+ weight
    const cplx down = 0.5 * cplx(lam.x() * g(0, 0), lam.y() * g(1, 1));    // S- weight
    // c(a, M) = <a|M> = conj(U(j, a)), j = s - M.
    auto c = [&](Eigen::Index a, int j) { return std::conj(es.vectors(j, a)); };

    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index a1 = 0; a1 < d; ++a1) {
        for (Eigen::Index a2 = 0; a2 < d; ++a2) {
            cplx acc = 0.0;
            for (int j = 0; j < d; ++j) {
                const double m = s.m_of(j);
                acc += lzgz * m * c(a1, j) * std::conj(c(a2, j));
                if (j > 0) {   // M + 1 sits at j - 1
                    const double gam = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
                    acc += gam * up * c(a1, j - 1) * std::conj(c(a2, j));
                    acc += gam * down * c(a1, j) * std::conj(c(a2, j - 1));
                }
            }
            out(a1, a2) = acc;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Populations

struct PureState {
    int index{0};
};
struct ThermalState {
    double kelvin{0.0};   // +inf gives the uniform mixture
};
struct ExplicitPopulations {
    std::vector<double> weights;
};
using PreparationSpec = std::variant<PureState, ThermalState, ExplicitPopulations>;

inline Eigen::VectorXd populations(const EigenSystem& es, const PreparationSpec& spec) {
    const Eigen::Index d = es.dim();
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    if (const auto* pure = std::get_if<PureState>(&spec)) {
        if (pure->index < 0 || pure->index >= d)
            throw std::invalid_argument("populations: pure state index out of range");
        p(pure->index) = 1.0;
    } else if (const auto* th = std::get_if<ThermalState>(&spec)) {
        if (!(th->kelvin > 0.0)) throw std::invalid_argument("populations: temperature must be positive");
        if (std::isinf(th->kelvin)) {
            p.setConstant(1.0 / static_cast<double>(d));
        } else {
            const double kt = units::kelvin_to_ghz(th->kelvin);
            const double e0 = es.energies.minCoeff();
            for (Eigen::Index a = 0; a < d; ++a) p(a) = std::exp(-(es.energies(a) - e0) / kt);
            p /= p.sum();
        }
    } else {
        const auto& w = std::get<ExplicitPopulations>(spec).weights;
        if (static_cast<Eigen::Index>(w.size()) != d)
            throw std::invalid_argument("populations: explicit list length does not match dimension");
        double sum = 0.0;
        for (double x : w) {
            if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("populations: negative or non-finite weight");
            sum += x;
        }
        if (!(sum > 0.0)) throw std::invalid_argument("populations: weights sum to zero");
        for (Eigen::Index a = 0; a < d; ++a) p(a) = w[a] / sum;
    }
    return p;
}

// Everything the input-output formulas need about the spin ensemble.
struct SpectralModel {
    EigenSystem eigen;
    Matrix lambda;                        // single-molecule coupling tensor, GHz
    Eigen::VectorXd populations;
    double n_molecules{1.0};              // identical molecules
    double eta{0.0};                      // spin broadening, GHz
    std::vector<double> coupling_scales;  // optional per-molecule factors; replaces n_molecules

    Eigen::Index dim() const noexcept { return eigen.dim(); }

    // Sum_i |scale_i|^2, or N for identical molecules.
    double ensemble_weight() const {
        if (coupling_scales.empty()) return n_molecules;
        double w = 0.0;
        for (double s : coupling_scales) w += s * s;
        return w;
    }

    void validate() const {
        const Eigen::Index d = eigen.dim();
        if (lambda.rows() != d || lambda.cols() != d || populations.size() != d)
            throw std::invalid_argument("SpectralModel: inconsistent dimensions");
        if (!(eta >= 0.0)) throw std::invalid_argument("SpectralModel: eta must be >= 0");
        if (!(n_molecules >= 1.0)) throw std::invalid_argument("SpectralModel: N must be >= 1");
    }

    SpectralModel with_populations(Eigen::VectorXd p) const {
        SpectralModel out = *this;
        out.populations = std::move(p);
        return out;
    }
};

inline SpectralModel make_spectral_model(const OperatorMatrix& h, const OperatorMatrix& v,
                                         const PreparationSpec& prep = PureState{0}, double n_molecules = 1.0,
                                         double eta = 0.0) {
    SpectralModel sm;
    sm.eigen = diagonalize(h);
    sm.lambda = lambda_tensor(sm.eigen, v);
    sm.populations = populations(sm.eigen, prep);
    sm.n_molecules = n_molecules;
    sm.eta = eta;
    sm.validate();
    return sm;
}

// Eigenstate with the largest weight on a given bare basis vector.
inline int dominant_eigenstate(const EigenSystem& es, Eigen::Index basis_index) {
    if (basis_index < 0 || basis_index >= es.dim())
        throw std::invalid_argument("dominant_eigenstate: basis index out of range");
    Eigen::Index best = 0;
    es.vectors.row(basis_index).cwiseAbs2().maxCoeff(&best);
    return static_cast<int>(best);
}

} // namespace qudit
