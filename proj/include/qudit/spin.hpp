// spin.hpp: Spin matrices and Stevens operators in the descending-M basis.
//
// Basis index j corresponds to M = s - j, so Sz = diag(s, s-1, ..., -s).

#pragma once

#include "qudit/errors.hpp"
#include "qudit/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qudit {

// Non-negative half-integer stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int twice) {
        if (twice < 0) throw std::invalid_argument("HalfInt: spin must be non-negative");
        HalfInt h;
        h.twice_ = twice;
        return h;
    }
    static HalfInt from_double(double s) {
        const double twice = 2.0 * s;
        const double rounded = std::round(twice);
        if (!std::isfinite(s) || std::abs(twice - rounded) > 1e-12 || rounded < 0)
            throw std::invalid_argument("spin quantum number must be a non-negative half-integer, got " +
                                        std::to_string(s));
        return from_twice(static_cast<int>(rounded));
    }

    constexpr int twice() const noexcept { return twice_; }
    constexpr double value() const noexcept { return 0.5 * twice_; }
    constexpr int dim() const noexcept { return twice_ + 1; }
    // M value of basis index j.
    constexpr double m_of(int j) const noexcept { return value() - j; }

    friend constexpr bool operator==(HalfInt, HalfInt) = default;

private:
    int twice_{0};
};

struct SpinOps {
    HalfInt s;
    Matrix sx, sy, sz, splus, sminus;

    Eigen::Index dim() const noexcept { return sz.rows(); }
};

inline SpinOps spin_matrices(HalfInt s) {
    const int d = s.dim();
    const double sv = s.value();
    SpinOps ops;
    ops.s = s;
    ops.sz = Matrix::Zero(d, d);
    ops.splus = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const double m = s.m_of(j);
        ops.sz(j, j) = m;
        // S+|M> = sqrt(s(s+1) - M(M+1)) |M+1>, and |M+1> sits at index j-1.
        if (j > 0) ops.splus(j - 1, j) = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
    }
    ops.sminus = ops.splus.adjoint();
    ops.sx = 0.5 * (ops.splus + ops.sminus);
    ops.sy = cplx(0.0, -0.5) * (ops.splus - ops.sminus);
    return ops;
}

inline SpinOps spin_matrices(double s) { return spin_matrices(HalfInt::from_double(s)); }

// Built-in Stevens operators: k = 2, q in {-2, -1, 0, 1, 2}.
//   O2^0  = 3 Sz^2 - s(s+1)       O2^2  = Sx^2 - Sy^2
//   O2^1  = Sz Sx + Sx Sz         O2^-1 = Sz Sy + Sy Sz
//   O2^-2 = Sx Sy + Sy Sx
// Higher ranks have no agreed normalization here; supply them as raw matrices.
inline OperatorMatrix stevens_operator(int k, int q, HalfInt s) {
    if (k < 0 || std::abs(q) > k)
        throw std::invalid_argument("stevens_operator: need |q| <= k, got k=" + std::to_string(k) +
                                    " q=" + std::to_string(q));
    if (k > s.twice())
        throw std::invalid_argument("stevens_operator: rank k=" + std::to_string(k) + " exceeds 2s=" +
                                    std::to_string(s.twice()));
    if (k != 2)
        throw UnsupportedOperator("stevens_operator: no built-in O_" + std::to_string(k) + "^" +
                                  std::to_string(q) + "; pass it as a raw Hermitian matrix");

    const SpinOps sp = spin_matrices(s);
    const double ss = s.value() * (s.value() + 1.0);
    Matrix o;
    switch (q) {
        case 0: o = 3.0 * sp.sz * sp.sz - ss * identity(sp.dim()); break;
        case 2: o = sp.sx * sp.sx - sp.sy * sp.sy; break;
        case 1: o = sp.sz * sp.sx + sp.sx * sp.sz; break;
        case -1: o = sp.sz * sp.sy + sp.sy * sp.sz; break;
        case -2: o = sp.sx * sp.sy + sp.sy * sp.sx; break;
        default: break;
    }
    return OperatorMatrix::hermitian(std::move(o));
}

} // namespace qudit
