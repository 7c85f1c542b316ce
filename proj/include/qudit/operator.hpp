// operator.hpp: Dense operator carrier and small linear-algebra helpers.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

namespace qudit {

using cplx   = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;

// max |A - A†|, the Hermiticity defect.
inline double hermitian_defect(const Matrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

// Hermitian up to kHermitianTol, relative to the largest entry once that exceeds 1.
inline bool is_hermitian(const Matrix& a, double tol = kHermitianTol) {
    if (a.rows() != a.cols()) return false;
    if (a.size() == 0) return true;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return hermitian_defect(a) < tol * scale;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

// Square complex matrix with a Hermiticity flag checked at construction.
class OperatorMatrix {
public:
    OperatorMatrix() = default;

    OperatorMatrix(Matrix entries, bool hermitian) : entries_(std::move(entries)), hermitian_(hermitian) {
        if (entries_.rows() != entries_.cols())
            throw std::invalid_argument("OperatorMatrix: matrix must be square");
        if (hermitian_ && !qudit::is_hermitian(entries_))
            throw std::invalid_argument("OperatorMatrix: flagged Hermitian but |A - A^dagger| exceeds tolerance");
    }

    static OperatorMatrix hermitian(Matrix entries) { return {std::move(entries), true}; }
    static OperatorMatrix general(Matrix entries) { return {std::move(entries), false}; }

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    bool is_hermitian() const noexcept { return hermitian_; }
    const Matrix& matrix() const noexcept { return entries_; }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

private:
    Matrix entries_;
    bool hermitian_{false};
};

} // namespace qudit
