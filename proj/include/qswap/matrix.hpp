// matrix.hpp — dense complex matrix aliases and small structural checks

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qswap {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default tolerances used across the toolkit.
inline constexpr double kStructuralTol = 1e-10;  // hermiticity / trace / unitarity
inline constexpr double kOracleTol = 1e-9;       // oracle comparisons
inline constexpr double kUnitNormTol = 1e-12;    // pure-state norm

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline bool is_hermitian(const Matrix& m, double tol = kStructuralTol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol;
}

inline bool is_unitary(const Matrix& u, double tol = kStructuralTol) {
    if (u.rows() != u.cols()) return false;
    return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) <= tol;
}

// |i⟩ in dimension d
inline Vector basis_ket(int d, int i) {
    if (d <= 0) throw std::invalid_argument("basis_ket: dimension must be positive");
    if (i < 0 || i >= d) throw std::out_of_range("basis_ket: index out of range");
    Vector v = Vector::Zero(d);
    v(i) = 1.0;
    return v;
}

inline Matrix outer(const Vector& a, const Vector& b) { return a * b.adjoint(); }

// |psi⟩⟨psi|
inline Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

}  // namespace qswap
