// Shared fixtures for the unit tests: seeded generators and reference models.

#pragma once

#include "qudit/inout.hpp"
#include "qudit/models.hpp"

#include <random>

namespace qudit::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline FieldVector random_field(std::mt19937_64& g, double scale) {
    return {uniform(g, -scale, scale), uniform(g, -scale, scale), uniform(g, -scale, scale)};
}

inline Matrix random_hermitian(std::mt19937_64& g, Eigen::Index d, double scale = 1.0) {
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cplx(uniform(g, -scale, scale), uniform(g, -scale, scale));
    return 0.5 * (m + m.adjoint());
}

// Random diagonal-g giant spin with rank-2 anisotropy and a random field.
inline GiantSpinConfig random_giant_spin(std::mt19937_64& g, HalfInt s) {
    GiantSpinConfig cfg;
    cfg.s = s;
    if (s.twice() >= 2) {
        cfg.stevens[{2, 0}] = uniform(g, -1.0, 1.0);
        cfg.stevens[{2, 2}] = uniform(g, -0.3, 0.3);
    }
    cfg.g = Eigen::Vector3d(uniform(g, 1.5, 2.5), uniform(g, 1.5, 2.5), uniform(g, 1.5, 2.5)).asDiagonal();
    cfg.zeeman_sign = g() % 2 ? 1 : -1;
    return cfg;
}

inline CouplingVector yb_coupling() {
    CouplingVector c = CouplingVector::electronic_only(0.02, 0.0, 0.0);
    c.nuclear = c.electronic * (units::mu_N / units::mu_B);
    return c;
}

} // namespace qudit::testing
