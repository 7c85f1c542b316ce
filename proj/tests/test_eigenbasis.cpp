#include "qudit/eigenbasis.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace qudit;
using namespace qudit::testing;

TEST(Diagonalize, ReconstructsAndFixesPhases) {
    auto g = rng(3);
    for (int d : {2, 3, 5, 8, 12}) {
        const Matrix h = random_hermitian(g, d);
        const EigenSystem es = diagonalize(h);
        const Matrix back = es.vectors * es.energies.cast<cplx>().asDiagonal() * es.vectors.adjoint();
        EXPECT_LT((back - h).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((es.vectors.adjoint() * es.vectors - identity(d)).cwiseAbs().maxCoeff(), 1e-12);
        for (int k = 1; k < d; ++k) EXPECT_LE(es.energies(k - 1), es.energies(k));
        for (int c = 0; c < d; ++c) {
            Eigen::Index r = 0;
            es.vectors.col(c).cwiseAbs().maxCoeff(&r);
            EXPECT_EQ(es.vectors(r, c).imag(), 0.0);
            EXPECT_GT(es.vectors(r, c).real(), 0.0);
        }
    }
}

TEST(Diagonalize, RejectsNonHermitian) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(diagonalize(m), std::invalid_argument);
    EXPECT_THROW(diagonalize(Matrix()), std::invalid_argument);
}

TEST(Diagonalize, PhaseConventionIsStableUnderInputGauge) {
    // Same Hamiltonian fed twice: identical vectors, not just identical projectors.
    auto g = rng(4);
    const Matrix h = random_hermitian(g, 6);
    const EigenSystem a = diagonalize(h), b = diagonalize(Matrix(h));
    EXPECT_EQ((a.vectors - b.vectors).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Lambda, ElementsAreMatrixElements) {
    auto g = rng(5);
    const Matrix h = random_hermitian(g, 5), v = random_hermitian(g, 5);
    const EigenSystem es = diagonalize(h);
    const Matrix lam = lambda_tensor(es, v);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            const cplx direct = es.vectors.col(a).dot(v * es.vectors.col(b));   // <a|V|b>
            EXPECT_LT(std::abs(lam(a, b) - direct), 1e-12);
        }
    EXPECT_TRUE(is_hermitian(lam));
    EXPECT_THROW(lambda_tensor(es, Matrix::Identity(4, 4)), std::invalid_argument);
}

class LambdaCrossCheck : public ::testing::TestWithParam<int> {};

TEST_P(LambdaCrossCheck, ExplicitMSumEqualsMatrixProduct) {
    const HalfInt s = HalfInt::from_twice(GetParam());
    auto g = rng(100 + GetParam());
    for (int trial = 0; trial < 25; ++trial) {
        const GiantSpinConfig cfg = random_giant_spin(g, s);
        const Eigen::Vector3d lam(uniform(g, -0.05, 0.05), uniform(g, -0.05, 0.05), uniform(g, -0.05, 0.05));
        const EigenSystem es = diagonalize(giant_spin_hamiltonian(cfg, random_field(g, 0.2)));
        const Matrix a = lambda_giant_spin_explicit(es, s, cfg.g, lam);
        const Matrix b = lambda_tensor(es, coupling_operator(cfg, CouplingVector::electronic_only(lam.x(), lam.y(), lam.z())));
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
    }
}

INSTANTIATE_TEST_SUITE_P(Spins, LambdaCrossCheck, ::testing::Values(1, 2, 3, 7));

TEST(Lambda, ExplicitFormNeedsDiagonalG) {
    GiantSpinConfig cfg = toy_s1_config(2.87);
    const EigenSystem es = diagonalize(giant_spin_hamiltonian(cfg, {}));
    Eigen::Matrix3d g = cfg.g;
    g(0, 1) = g(1, 0) = 0.1;
    EXPECT_THROW(lambda_giant_spin_explicit(es, cfg.s, g, {0.01, 0.0, 0.0}), UnsupportedOperator);
}

TEST(Populations, PureThermalExplicit) {
    EigenSystem es;
    es.energies = Eigen::Vector3d(0.0, 1.0, 2.0);
    es.vectors = identity(3);
    EXPECT_DOUBLE_EQ(populations(es, PureState{1})(1), 1.0);
    const Eigen::VectorXd th = populations(es, ThermalState{1.0 / units::k_B});
    // kT = 1 GHz
    EXPECT_NEAR(th(1) / th(0), std::exp(-1.0), 1e-12);
    EXPECT_NEAR(th.sum(), 1.0, 1e-15);
    const Eigen::VectorXd uni = populations(es, ThermalState{INFINITY});
    EXPECT_DOUBLE_EQ(uni(2), 1.0 / 3.0);
    const Eigen::VectorXd ex = populations(es, ExplicitPopulations{{1.0, 1.0, 2.0}});
    EXPECT_DOUBLE_EQ(ex(2), 0.5);
    EXPECT_THROW(populations(es, PureState{3}), std::invalid_argument);
    EXPECT_THROW(populations(es, ThermalState{0.0}), std::invalid_argument);
    EXPECT_THROW(populations(es, ExplicitPopulations{{1.0, -1.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(populations(es, ExplicitPopulations{{1.0}}), std::invalid_argument);
}

TEST(Degeneracy, KramersPairsAtZeroField) {
    const EigenSystem es = diagonalize(giant_spin_hamiltonian(gdw30_config(), {}));
    EXPECT_EQ(degenerate_pairs(es).size(), 4u);
    const EigenSystem split = diagonalize(giant_spin_hamiltonian(gdw30_config(), {0.0, 0.0, 0.1}));
    EXPECT_TRUE(degenerate_pairs(split).empty());
}

TEST(DominantEigenstate, PicksLargestWeight) {
    const EigenSystem es = diagonalize(giant_spin_hamiltonian(toy_s1_config(2.87), {0.0, 0.0, 0.01}));
    EXPECT_EQ(dominant_eigenstate(es, 1), 0);   // M = 0 is the ground state
    EXPECT_THROW(dominant_eigenstate(es, 3), std::invalid_argument);
}

TEST(SpectralModel, EnsembleWeight) {
    SpectralModel sm;
    sm.n_molecules = 7.0;
    EXPECT_DOUBLE_EQ(sm.ensemble_weight(), 7.0);
    sm.coupling_scales = {1.0, 0.5, 2.0};
    EXPECT_DOUBLE_EQ(sm.ensemble_weight(), 5.25);
}
