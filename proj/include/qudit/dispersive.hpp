// dispersive.hpp: Schrieffer-Wolff generator, second-order effective
// Hamiltonian, QND commutator and the S = 1 working point.
//
// Everything here works with the single-molecule coupling tensor
// SpectralModel::lambda; the ensemble weight only enters the transmission
// and shift formulas of inout.hpp.
//
// Hubbard operators X^{ab} = |a><b| live in the eigenbasis of H_S. With
// E_ab = E_a - E_b the generator is
//   S = sum_{ab} (Gamma+_{ab} a† + Gamma-_{ab} a) X^{ab},
//   Gamma±_{ab} = Lambda_ab / (E_ab ± Omega),
// which solves [H_0, S] = H_I, so that e^S H e^-S = H_0 + [S, H_I]/2 + O(Lambda^3).

#pragma once

#include "qudit/eigenbasis.hpp"
#include "qudit/errors.hpp"
#include "qudit/inout.hpp"
#include "qudit/oracle_ed.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace qudit {

inline constexpr double kResonanceTol = 1e-9;   // GHz

enum class ResonancePolicy {
    raise,     // throw ResonantDenominator
    exclude,   // drop the coupling of resonant pairs and report them
};

struct SWGenerator {
    Matrix gamma_plus;    // coefficient of a† X^{ab}
    Matrix gamma_minus;   // coefficient of a X^{ab}
    std::vector<std::pair<int, int>> excluded;
};

namespace detail {

// Copy of Lambda with couplings of resonant pairs removed (policy exclude) or
// an exception naming the first resonant pair (policy raise).
inline Matrix screened_lambda(const SpectralModel& sm, const CavityParams& cav, ResonancePolicy policy,
                              std::vector<std::pair<int, int>>& excluded) {
    Matrix lam = sm.lambda;
    const Eigen::Index d = sm.dim();
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            if (lam(a, b) == cplx(0.0)) continue;
            const double e = sm.eigen.gap(a, b);
            if (std::min(std::abs(e - cav.omega), std::abs(e + cav.omega)) >= kResonanceTol) continue;
            if (policy == ResonancePolicy::raise)
                throw ResonantDenominator("Schrieffer-Wolff denominator vanishes for pair (" + std::to_string(a) + "," +
                                              std::to_string(b) + ")",
                                          static_cast<int>(a), static_cast<int>(b));
            lam(a, b) = 0.0;
            if (a <= b) excluded.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return lam;
}

} // namespace detail

inline SWGenerator sw_generator(const SpectralModel& sm, const CavityParams& cav,
                                ResonancePolicy policy = ResonancePolicy::raise) {
    cav.validate();
    SWGenerator gen;
    const Matrix lam = detail::screened_lambda(sm, cav, policy, gen.excluded);
    const Eigen::Index d = sm.dim();
    gen.gamma_plus = Matrix::Zero(d, d);
    gen.gamma_minus = Matrix::Zero(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            if (lam(a, b) == cplx(0.0)) continue;
            const double e = sm.eigen.gap(a, b);
            gen.gamma_plus(a, b) = lam(a, b) / (e + cav.omega);
            gen.gamma_minus(a, b) = lam(a, b) / (e - cav.omega);
        }
    }
    return gen;
}

enum class EffectiveMode { diagonal, full };

// Second-order effective Hamiltonian in the eigenbasis of H_S:
//   H_eff = sum_a E_a X^{aa} + Omega a†a
//         + sum_{b1 b2} [ K0 + K1 a†a + K2+ (a†)^2 + K2- a^2 ]_{b1 b2} X^{b1 b2}
// Diagonal mode keeps only K0 and K1 on the diagonal: the Lamb shifts
// eps_a = K0_aa and the photon pulls chi_a = K1_aa.
struct EffectiveModel {
    EffectiveMode mode{EffectiveMode::diagonal};
    double omega{0.0};
    Eigen::VectorXd energies;
    Eigen::VectorXd lamb_shift;   // eps_a, GHz
    Eigen::VectorXd pull;         // chi_a, GHz
    Matrix static_block;          // K0
    Matrix number_block;          // K1, the effective spin-photon interaction
    Matrix create2_block;         // K2+, coefficient of (a†)^2
    Matrix annihilate2_block;     // K2-, coefficient of a^2
    std::vector<std::pair<int, int>> excluded;

    Eigen::Index dim() const noexcept { return energies.size(); }

    // Energy of |a> ⊗ |n> in diagonal mode.
    double level(int a, int n) const { return energies(a) + lamb_shift(a) + n * (omega + pull(a)); }

    // Matrix on (spin eigenbasis) ⊗ |0..n_max>.
    Matrix reconstruct(int n_max) const {
        if (n_max < 0) throw std::invalid_argument("EffectiveModel::reconstruct: n_max must be >= 0");
        const Matrix num = number_operator(n_max);
        const Matrix a = annihilation(n_max);
        const Matrix id_ph = identity(n_max + 1);
        Matrix h = kron(Matrix(energies.cast<cplx>().asDiagonal()), id_ph) + omega * kron(identity(dim()), num);
        if (mode == EffectiveMode::diagonal) {
            h += kron(Matrix(lamb_shift.cast<cplx>().asDiagonal()), id_ph);
            h += kron(Matrix(pull.cast<cplx>().asDiagonal()), num);
        } else {
            const Matrix ad = a.adjoint();
            h += kron(static_block, id_ph) + kron(number_block, num) + kron(create2_block, ad * ad) +
                 kron(annihilate2_block, a * a);
        }
        return h;
    }
};

inline EffectiveModel effective_hamiltonian(const SpectralModel& sm, const CavityParams& cav, EffectiveMode mode,
                                            ResonancePolicy policy = ResonancePolicy::raise) {
    cav.validate();
    EffectiveModel em;
    em.mode = mode;
    em.omega = cav.omega;
    em.energies = sm.eigen.energies;
    const Matrix lam = detail::screened_lambda(sm, cav, policy, em.excluded);
    const Eigen::Index d = sm.dim();
    const double om = cav.omega;

    auto inv_minus = [om](double e) { return 1.0 / (e - om); };
    auto inv_plus = [om](double e) { return 1.0 / (e + om); };
    auto pull_kernel = [om](double e) { return e / (e * e - om * om); };

    em.static_block = Matrix::Zero(d, d);
    em.number_block = Matrix::Zero(d, d);
    em.create2_block = Matrix::Zero(d, d);
    em.annihilate2_block = Matrix::Zero(d, d);
    for (Eigen::Index b1 = 0; b1 < d; ++b1) {
        for (Eigen::Index b2 = 0; b2 < d; ++b2) {
            if (mode == EffectiveMode::diagonal && b1 != b2) continue;
            cplx k0 = 0.0, k1 = 0.0, kp = 0.0, km = 0.0;
            for (Eigen::Index a = 0; a < d; ++a) {
                const cplx ll = lam(b1, a) * lam(a, b2);
                if (ll == cplx(0.0)) continue;
                const double e1 = sm.eigen.gap(b1, a), e2 = sm.eigen.gap(b2, a);
                k0 += 0.5 * ll * (inv_minus(e1) + inv_minus(e2));
                k1 += ll * (pull_kernel(e1) + pull_kernel(e2));
                kp += 0.5 * ll * (inv_plus(e1) + inv_minus(e2));
                km += 0.5 * ll * (inv_minus(e1) + inv_plus(e2));
            }
            em.static_block(b1, b2) = k0;
            em.number_block(b1, b2) = k1;
            em.create2_block(b1, b2) = kp;
            em.annihilate2_block(b1, b2) = km;
        }
    }
    em.lamb_shift = em.static_block.diagonal().real();
    em.pull = em.number_block.diagonal().real();
    if (mode == EffectiveMode::diagonal) {
        em.static_block = Matrix(em.lamb_shift.cast<cplx>().asDiagonal());
        em.number_block = Matrix(em.pull.cast<cplx>().asDiagonal());
        em.create2_block.setZero();
        em.annihilate2_block.setZero();
    }
    return em;
}

// ---------------------------------------------------------------------------
// QND diagnostics

// Phi_{b1 b2} = sum_a Lambda_{b1 a} Lambda_{a b2} (E_{b1 a}/(E_{b1 a}^2 - Omega^2) + E_{b2 a}/(E_{b2 a}^2 - Omega^2))
inline Matrix qnd_phi(const SpectralModel& sm, const CavityParams& cav) {
    const Eigen::Index d = sm.dim();
    const double om2 = cav.omega * cav.omega;
    Matrix phi = Matrix::Zero(d, d);
    for (Eigen::Index b1 = 0; b1 < d; ++b1)
        for (Eigen::Index b2 = 0; b2 < d; ++b2)
            for (Eigen::Index a = 0; a < d; ++a) {
                const double e1 = sm.eigen.gap(b1, a), e2 = sm.eigen.gap(b2, a);
                phi(b1, b2) += sm.lambda(b1, a) * sm.lambda(a, b2) * (e1 / (e1 * e1 - om2) + e2 / (e2 * e2 - om2));
            }
    return phi;
}

struct QNDReport {
    Matrix commutator;   // sum E_{b1 b2} Phi_{b1 b2} X^{b1 b2}, eigenbasis
    Matrix direct;       // [H_S, V~] evaluated as a lab-basis matrix product, eigenbasis
    Matrix phi;
    double norm{0.0};         // Frobenius norm of the commutator, GHz^2
    double normalized{0.0};   // norm / sum |Lambda|^2
    double mismatch{0.0};     // max |commutator - direct|
};

inline constexpr double kQndIdentityTol = 1e-12;

inline QNDReport qnd_commutator(const SpectralModel& sm, const CavityParams& cav) {
    const EffectiveModel full = effective_hamiltonian(sm, cav, EffectiveMode::full);
    QNDReport rep;
    rep.phi = qnd_phi(sm, cav);
    const Eigen::Index d = sm.dim();
    rep.commutator = Matrix::Zero(d, d);
    for (Eigen::Index b1 = 0; b1 < d; ++b1)
        for (Eigen::Index b2 = 0; b2 < d; ++b2) rep.commutator(b1, b2) = sm.eigen.gap(b1, b2) * rep.phi(b1, b2);

    const Matrix& u = sm.eigen.vectors;
    const Matrix h_lab = u * sm.eigen.energies.cast<cplx>().asDiagonal() * u.adjoint();
    const Matrix v_lab = u * full.number_block * u.adjoint();
    rep.direct = u.adjoint() * (h_lab * v_lab - v_lab * h_lab) * u;

    rep.norm = rep.commutator.norm();
    const double lam2 = sm.lambda.squaredNorm();
    rep.normalized = lam2 > 0.0 ? rep.norm / lam2 : 0.0;
    rep.mismatch = d > 0 ? (rep.commutator - rep.direct).cwiseAbs().maxCoeff() : 0.0;
    const double scale = std::max(1.0, sm.eigen.energies.cwiseAbs().maxCoeff() * full.number_block.cwiseAbs().maxCoeff());
    if (rep.mismatch > kQndIdentityTol * scale)
        throw NumericalError("qnd_commutator: Phi formula and direct commutator disagree by " +
                             std::to_string(rep.mismatch));
    return rep;
}

// Field splitting xi_z = sqrt(D^2 - Omega^2) that cancels the QND-violating
// term of the uniaxial S = 1 model.
inline double qnd_working_point_s1(double d, double omega) {
    if (d < omega)
        throw NoWorkingPoint("qnd_working_point_s1: D < Omega leaves no real working point");
    return std::sqrt(d * d - omega * omega);
}

// ---------------------------------------------------------------------------
// Effective model against exact diagonalization

struct SwEdRow {
    FieldVector field;
    double discrepancy{0.0};   // max |E_ED - E_eff| over |a, n <= 1>, GHz
    double min_overlap{1.0};
    bool dispersive{true};
};

inline SwEdRow sw_vs_ed_point(const OperatorMatrix& h_spin, const OperatorMatrix& v, const CavityParams& cav,
                              int n_max) {
    SwEdRow row;
    const SpectralModel sm = make_spectral_model(h_spin, v);
    const EffectiveModel em = effective_hamiltonian(sm, cav, EffectiveMode::diagonal, ResonancePolicy::exclude);
    if (!em.excluded.empty()) row.dispersive = false;
    for (int b = 0; b < sm.dim(); ++b)
        if (!dispersive_guard(b, sm, cav).empty()) row.dispersive = false;
    const FullSystem fs = build_full_hamiltonian(h_spin, v, cav, n_max);
    for (int b = 0; b < sm.dim(); ++b) {
        for (int n = 0; n <= 1; ++n) {
            const DressedLevel lvl = dressed_level(fs, b, n);
            row.min_overlap = std::min(row.min_overlap, lvl.overlap);
            row.discrepancy = std::max(row.discrepancy, std::abs(lvl.energy - em.level(b, n)));
        }
    }
    if (row.min_overlap < kOverlapThreshold) row.dispersive = false;
    return row;
}

inline std::vector<SwEdRow> sw_vs_ed_compare(const ModelConfig& model, const CavityParams& cav,
                                             const CouplingVector& lam, int n_max,
                                             const std::vector<FieldVector>& field_grid) {
    const OperatorMatrix v = coupling_operator(model, lam);
    std::vector<SwEdRow> out;
    out.reserve(field_grid.size());
    for (const FieldVector& b : field_grid) {
        SwEdRow row = sw_vs_ed_point(hamiltonian(model, b), v, cav, n_max);
        row.field = b;
        out.push_back(row);
    }
    return out;
}

} // namespace qudit
