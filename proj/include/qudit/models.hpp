// models.hpp: Spin Hamiltonians of the supported molecule kinds and their
// cavity-coupling operators, as dense matrices in a fixed product basis.
//
// Basis conventions:
//   * each spin factor uses descending M (see spin.hpp);
//   * dimers are ordered ion 1 ⊗ ion 2;
//   * electronuclear systems are ordered electron ⊗ nucleus.
// Energies are in GHz, fields in tesla, coupling constants in GHz.

#pragma once

#include "qudit/operator.hpp"
#include "qudit/spin.hpp"
#include "qudit/units.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <array>
#include <map>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace qudit {

struct FieldVector {
    double bx{0.0}, by{0.0}, bz{0.0};   // T

    Eigen::Vector3d vec() const { return {bx, by, bz}; }
    static FieldVector from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
    FieldVector scaled(double f) const { return {bx * f, by * f, bz * f}; }
};

// Coupling constants lambda = mu * B_rms, in GHz. The nuclear triple is only
// read by electronuclear models.
struct CouplingVector {
    Eigen::Vector3d electronic{Eigen::Vector3d::Zero()};
    Eigen::Vector3d nuclear{Eigen::Vector3d::Zero()};

    static CouplingVector electronic_only(double lx, double ly, double lz) {
        CouplingVector c;
        c.electronic = {lx, ly, lz};
        return c;
    }
    // lambda_S = mu_B B_rms and lambda_I = mu_N B_rms for a zero-point field B_rms (T).
    static CouplingVector from_rms_field(const Eigen::Vector3d& b_rms) {
        CouplingVector c;
        c.electronic = units::mu_B * b_rms;
        c.nuclear = units::mu_N * b_rms;
        return c;
    }
    CouplingVector scaled(double f) const {
        CouplingVector c;
        c.electronic = f * electronic;
        c.nuclear = f * nuclear;
        return c;
    }
};

// Single effective spin with Stevens anisotropy and a general g-tensor:
//   H = sum B_k^q O_k^q + dz2 Sz^2 + sum raw + zeeman_sign mu_B B.g.S
struct GiantSpinConfig {
    HalfInt s{HalfInt::from_twice(1)};
    std::map<std::pair<int, int>, double> stevens;   // (k,q) -> B_k^q in GHz
    double dz2{0.0};                                 // coefficient of bare Sz^2, GHz
    std::vector<OperatorMatrix> raw_terms;           // caller-built terms, e.g. rank 4 and 6
    Eigen::Matrix3d g{2.0 * Eigen::Matrix3d::Identity()};
    int zeeman_sign{+1};
};

// Two spins with diagonal local g-tensors; ion 2 is rotated by theta in the x-z plane.
struct DimerConfig {
    HalfInt s1{HalfInt::from_twice(1)}, s2{HalfInt::from_twice(1)};
    Eigen::Vector3d g1_diag{Eigen::Vector3d::Ones()}, g2_diag{Eigen::Vector3d::Ones()};
    double theta{0.0};   // rad
    double j12{0.0};     // GHz
    double gj1{1.0}, gj2{1.0};
    int zeeman_sign{-1};
};

// Electronic spin S with axial g-tensor, hyperfine-coupled to nuclear spin I.
struct ElectroNuclearConfig {
    HalfInt s{HalfInt::from_twice(1)}, i{HalfInt::from_twice(5)};
    double g_perp{2.0}, g_par{2.0};
    double g_i{0.0};
    double a_par{0.0}, a_perp{0.0};   // GHz
    double p{0.0};                    // GHz
    int zeeman_sign{+1};
};

using ModelConfig = std::variant<GiantSpinConfig, DimerConfig, ElectroNuclearConfig>;

namespace detail {

inline void check_sign(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("zeeman_sign must be +1 or -1");
}

inline void check_finite(const FieldVector& b) {
    if (!std::isfinite(b.bx) || !std::isfinite(b.by) || !std::isfinite(b.bz))
        throw std::invalid_argument("FieldVector: components must be finite");
}

// sum_ij a_i g_ij S_j
inline Matrix contract(const Eigen::Vector3d& a, const Eigen::Matrix3d& g, const SpinOps& sp) {
    const Eigen::Vector3d w = g.transpose() * a;
    return w.x() * sp.sx + w.y() * sp.sy + w.z() * sp.sz;
}

// Components of g.S as operators.
inline std::array<Matrix, 3> g_times_s(const Eigen::Matrix3d& g, const SpinOps& sp) {
    std::array<Matrix, 3> out;
    for (int r = 0; r < 3; ++r) out[r] = g(r, 0) * sp.sx + g(r, 1) * sp.sy + g(r, 2) * sp.sz;
    return out;
}

} // namespace detail

// Rotation in the x-z plane applied to ion 2: g2 -> R diag(g2) R^T with
// R = [[cos, 0, sin], [0, 1, 0], [-sin, 0, cos]].
inline Eigen::Matrix3d rotated_g_tensor(const Eigen::Vector3d& g_diag, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix3d r;
    r << c, 0, s,
         0, 1, 0,
        -s, 0, c;
    return r * g_diag.asDiagonal() * r.transpose();
}

inline void validate(const GiantSpinConfig& cfg) {
    detail::check_sign(cfg.zeeman_sign);
    if (!cfg.g.allFinite()) throw std::invalid_argument("GiantSpinConfig: g must be finite");
    for (const auto& raw : cfg.raw_terms) {
        if (raw.dim() != cfg.s.dim())
            throw std::invalid_argument("GiantSpinConfig: raw term dimension does not match 2s+1");
        if (!raw.is_hermitian()) throw std::invalid_argument("GiantSpinConfig: raw terms must be Hermitian");
    }
}

inline void validate(const DimerConfig& cfg) {
    detail::check_sign(cfg.zeeman_sign);
    if (!(cfg.theta >= 0.0 && cfg.theta < units::pi))
        throw std::invalid_argument("DimerConfig: theta must lie in [0, pi)");
    if (!std::isfinite(cfg.j12)) throw std::invalid_argument("DimerConfig: j12 must be finite");
    if (cfg.gj1 == 0.0 || cfg.gj2 == 0.0) throw std::invalid_argument("DimerConfig: Lande factors must be nonzero");
}

inline void validate(const ElectroNuclearConfig& cfg) {
    detail::check_sign(cfg.zeeman_sign);
    for (double v : {cfg.g_perp, cfg.g_par, cfg.g_i, cfg.a_par, cfg.a_perp, cfg.p})
        if (!std::isfinite(v)) throw std::invalid_argument("ElectroNuclearConfig: parameters must be finite");
}

inline Eigen::Index dimension(const ModelConfig& model) {
    return std::visit(
        [](const auto& cfg) -> Eigen::Index {
            using T = std::decay_t<decltype(cfg)>;
            if constexpr (std::is_same_v<T, GiantSpinConfig>) return cfg.s.dim();
            else if constexpr (std::is_same_v<T, DimerConfig>) return cfg.s1.dim() * cfg.s2.dim();
            else return cfg.s.dim() * cfg.i.dim();
        },
        model);
}

inline OperatorMatrix giant_spin_hamiltonian(const GiantSpinConfig& cfg, const FieldVector& b) {
    validate(cfg);
    detail::check_finite(b);
    const SpinOps sp = spin_matrices(cfg.s);
    Matrix h = Matrix::Zero(sp.dim(), sp.dim());
    for (const auto& [kq, coeff] : cfg.stevens) {
        if (coeff == 0.0) continue;
        h += coeff * stevens_operator(kq.first, kq.second, cfg.s).matrix();
    }
    if (cfg.dz2 != 0.0) h += cfg.dz2 * sp.sz * sp.sz;
    for (const auto& raw : cfg.raw_terms) h += raw.matrix();
    h += (cfg.zeeman_sign * units::mu_B) * detail::contract(b.vec(), cfg.g, sp);
    return OperatorMatrix::hermitian(std::move(h));
}

inline OperatorMatrix dimer_hamiltonian(const DimerConfig& cfg, const FieldVector& b) {
    validate(cfg);
    detail::check_finite(b);
    const SpinOps sp1 = spin_matrices(cfg.s1), sp2 = spin_matrices(cfg.s2);
    const Matrix id1 = identity(sp1.dim()), id2 = identity(sp2.dim());
    const Eigen::Matrix3d g1 = cfg.g1_diag.asDiagonal();
    const Eigen::Matrix3d g2 = rotated_g_tensor(cfg.g2_diag, cfg.theta);

    Matrix h = (cfg.zeeman_sign * units::mu_B) *
               (kron(detail::contract(b.vec(), g1, sp1), id2) + kron(id1, detail::contract(b.vec(), g2, sp2)));

    const auto gs1 = detail::g_times_s(g1, sp1);
    const auto gs2 = detail::g_times_s(g2, sp2);
    const double j = cfg.j12 / (cfg.gj1 * cfg.gj2);
    for (int k = 0; k < 3; ++k) h -= j * kron(gs1[k], gs2[k]);
    return OperatorMatrix::hermitian(std::move(h));
}

inline OperatorMatrix electronuclear_hamiltonian(const ElectroNuclearConfig& cfg, const FieldVector& b) {
    validate(cfg);
    detail::check_finite(b);
    const SpinOps se = spin_matrices(cfg.s), si = spin_matrices(cfg.i);
    const Matrix ide = identity(se.dim()), idi = identity(si.dim());
    const Eigen::Matrix3d g = Eigen::Vector3d(cfg.g_perp, cfg.g_perp, cfg.g_par).asDiagonal();

    Matrix h = (cfg.zeeman_sign * units::mu_B) * kron(detail::contract(b.vec(), g, se), idi);
    h += (units::mu_N * cfg.g_i) * kron(ide, b.bx * si.sx + b.by * si.sy + b.bz * si.sz);
    h += cfg.p * kron(ide, si.sz * si.sz);
    h += cfg.a_par * kron(se.sz, si.sz);
    h += cfg.a_perp * (kron(se.sx, si.sx) + kron(se.sy, si.sy));
    return OperatorMatrix::hermitian(std::move(h));
}

inline OperatorMatrix hamiltonian(const ModelConfig& model, const FieldVector& b) {
    return std::visit(
        [&](const auto& cfg) {
            using T = std::decay_t<decltype(cfg)>;
            if constexpr (std::is_same_v<T, GiantSpinConfig>) return giant_spin_hamiltonian(cfg, b);
            else if constexpr (std::is_same_v<T, DimerConfig>) return dimer_hamiltonian(cfg, b);
            else return electronuclear_hamiltonian(cfg, b);
        },
        model);
}

// Spin part V of the interaction (a† + a) V.
//   giant spin:     V = lambda.g.S
//   dimer:          V = sum_i lambda.g_i.S_i   (g_2 rotated)
//   electronuclear: V = lambda_S.g_S.S + g_I lambda_I.I
inline OperatorMatrix coupling_operator(const ModelConfig& model, const CouplingVector& lam) {
    if (!lam.electronic.allFinite() || !lam.nuclear.allFinite())
        throw std::invalid_argument("CouplingVector: components must be finite");
    return std::visit(
        [&](const auto& cfg) {
            validate(cfg);
            using T = std::decay_t<decltype(cfg)>;
            Matrix v;
            if constexpr (std::is_same_v<T, GiantSpinConfig>) {
                v = detail::contract(lam.electronic, cfg.g, spin_matrices(cfg.s));
            } else if constexpr (std::is_same_v<T, DimerConfig>) {
                const SpinOps sp1 = spin_matrices(cfg.s1), sp2 = spin_matrices(cfg.s2);
                const Eigen::Matrix3d g1 = cfg.g1_diag.asDiagonal();
                const Eigen::Matrix3d g2 = rotated_g_tensor(cfg.g2_diag, cfg.theta);
                v = kron(detail::contract(lam.electronic, g1, sp1), identity(sp2.dim())) +
                    kron(identity(sp1.dim()), detail::contract(lam.electronic, g2, sp2));
            } else {
                const SpinOps se = spin_matrices(cfg.s), si = spin_matrices(cfg.i);
                const Eigen::Matrix3d g = Eigen::Vector3d(cfg.g_perp, cfg.g_perp, cfg.g_par).asDiagonal();
                const Eigen::Matrix3d gi = cfg.g_i * Eigen::Matrix3d::Identity();
                v = kron(detail::contract(lam.electronic, g, se), identity(si.dim())) +
                    kron(identity(se.dim()), detail::contract(lam.nuclear, gi, si));
            }
            return OperatorMatrix::hermitian(std::move(v));
        },
        model);
}

// ---------------------------------------------------------------------------
// Named molecules. Parameter values are the published fits.

// S = 1 with uniaxial anisotropy D Sz^2 (no constant offset, so E_0 = 0).
inline GiantSpinConfig toy_s1_config(double d_ghz, const Eigen::Vector3d& g_diag = Eigen::Vector3d(2.0, 2.0, 2.0)) {
    GiantSpinConfig cfg;
    cfg.s = HalfInt::from_twice(2);
    cfg.dz2 = d_ghz;
    cfg.g = g_diag.asDiagonal();
    cfg.zeeman_sign = +1;
    return cfg;
}

// GdW30: S = 7/2, H = (D/3) O2^0 + E O2^2 - mu_B g B.S.
inline GiantSpinConfig gdw30_config(double d_ghz = 1.281, double e_ghz = 0.294, double g = 2.0) {
    GiantSpinConfig cfg;
    cfg.s = HalfInt::from_twice(7);
    cfg.stevens[{2, 0}] = d_ghz / 3.0;
    cfg.stevens[{2, 2}] = e_ghz;
    cfg.g = g * Eigen::Matrix3d::Identity();
    cfg.zeeman_sign = -1;
    return cfg;
}

// [CeEr]: Er (ion 1) and Ce (ion 2) effective spins 1/2, Ce axis at 70 degrees.
inline DimerConfig ceer_config() {
    DimerConfig cfg;
    cfg.s1 = cfg.s2 = HalfInt::from_twice(1);
    cfg.g1_diag = {1.8, 3.7, 10.0};
    cfg.g2_diag = {1.0, 1.75, 2.67};
    cfg.theta = units::degrees(70.0);
    cfg.j12 = units::kelvin_to_ghz(-0.015);
    cfg.gj1 = 6.0 / 5.0;
    cfg.gj2 = 6.0 / 7.0;
    cfg.zeeman_sign = -1;
    return cfg;
}

// 173Yb-trensal: S = 1/2 doublet with I = 5/2.
inline ElectroNuclearConfig yb_trensal_config() {
    ElectroNuclearConfig cfg;
    cfg.s = HalfInt::from_twice(1);
    cfg.i = HalfInt::from_twice(5);
    cfg.g_perp = 2.935;
    cfg.g_par = 4.225;
    cfg.g_i = -0.02592;
    cfg.a_par = -0.897;
    cfg.a_perp = -0.615;
    cfg.p = -0.066;
    cfg.zeeman_sign = +1;
    return cfg;
}

} // namespace qudit
