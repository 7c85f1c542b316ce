#include "qudit/spin.hpp"

#include <gtest/gtest.h>

using namespace qudit;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST(HalfInt, RoundTripsAndRejectsNonHalfIntegers) {
    EXPECT_EQ(HalfInt::from_double(3.5).twice(), 7);
    EXPECT_EQ(HalfInt::from_double(0.5).dim(), 2);
    EXPECT_DOUBLE_EQ(HalfInt::from_twice(5).m_of(0), 2.5);
    EXPECT_DOUBLE_EQ(HalfInt::from_twice(5).m_of(5), -2.5);
    EXPECT_THROW(HalfInt::from_double(0.3), std::invalid_argument);
    EXPECT_THROW(HalfInt::from_double(-1.0), std::invalid_argument);
    EXPECT_THROW(HalfInt::from_twice(-1), std::invalid_argument);
}

class SpinAlgebra : public ::testing::TestWithParam<int> {};

TEST_P(SpinAlgebra, CommutatorsAndCasimir) {
    const HalfInt s = HalfInt::from_twice(GetParam());
    const SpinOps sp = spin_matrices(s);
    const cplx i(0.0, 1.0);
    EXPECT_LT(max_abs(sp.sx * sp.sy - sp.sy * sp.sx - i * sp.sz), 1e-12);
    EXPECT_LT(max_abs(sp.sy * sp.sz - sp.sz * sp.sy - i * sp.sx), 1e-12);
    EXPECT_LT(max_abs(sp.sz * sp.sx - sp.sx * sp.sz - i * sp.sy), 1e-12);
    const Matrix casimir = sp.sx * sp.sx + sp.sy * sp.sy + sp.sz * sp.sz;
    const double ss = s.value() * (s.value() + 1.0);
    EXPECT_LT(max_abs(casimir - ss * identity(sp.dim())), 1e-12);
    EXPECT_TRUE(is_hermitian(sp.sx));
    EXPECT_TRUE(is_hermitian(sp.sy));
    // descending-M convention
    EXPECT_DOUBLE_EQ(sp.sz(0, 0).real(), s.value());
    EXPECT_DOUBLE_EQ(sp.sz(sp.dim() - 1, sp.dim() - 1).real(), -s.value());
}

INSTANTIATE_TEST_SUITE_P(Spins, SpinAlgebra, ::testing::Values(1, 2, 3, 4, 5, 7, 15));

TEST(Stevens, RankTwoDefinitions) {
    const HalfInt s = HalfInt::from_twice(7);
    const SpinOps sp = spin_matrices(s);
    const double ss = 3.5 * 4.5;
    EXPECT_LT(max_abs(stevens_operator(2, 0, s).matrix() - (3.0 * sp.sz * sp.sz - ss * identity(8))), 1e-12);
    // O2^2 = (S+^2 + S-^2) / 2
    EXPECT_LT(max_abs(stevens_operator(2, 2, s).matrix() - 0.5 * (sp.splus * sp.splus + sp.sminus * sp.sminus)), 1e-12);
    for (int q = -2; q <= 2; ++q) EXPECT_TRUE(stevens_operator(2, q, s).is_hermitian());
    // traceless
    for (int q = -2; q <= 2; ++q) EXPECT_LT(std::abs(stevens_operator(2, q, s).matrix().trace()), 1e-12);
}

TEST(Stevens, Errors) {
    const HalfInt s = HalfInt::from_twice(7);
    EXPECT_THROW(stevens_operator(4, 0, s), UnsupportedOperator);
    EXPECT_THROW(stevens_operator(6, 3, s), UnsupportedOperator);
    EXPECT_THROW(stevens_operator(2, 3, s), std::invalid_argument);
    EXPECT_THROW(stevens_operator(2, 0, HalfInt::from_twice(1)), std::invalid_argument);
}

TEST(OperatorMatrix, HermitianFlagIsChecked) {
    Matrix m(2, 2);
    m << 1.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 1.0;
    EXPECT_THROW(OperatorMatrix::hermitian(m), std::invalid_argument);
    EXPECT_NO_THROW(OperatorMatrix::general(m));
    EXPECT_THROW(OperatorMatrix::general(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST(Kron, OrderingIsFirstFactorSlow) {
    const SpinOps a = spin_matrices(0.5), b = spin_matrices(1.0);
    const Matrix k = kron(a.sz, identity(3));
    // first factor index changes every 3 rows
    EXPECT_DOUBLE_EQ(k(0, 0).real(), 0.5);
    EXPECT_DOUBLE_EQ(k(2, 2).real(), 0.5);
    EXPECT_DOUBLE_EQ(k(3, 3).real(), -0.5);
    EXPECT_EQ(kron(a.sx, b.sx).rows(), 6);
}
