// linalg.hpp — tensor-product primitives and the Hermitian eigendecomposition
//
// Subsystem convention, fixed repo-wide: a bipartite index decomposes as
// i = i_a * d_b + i_b, i.e. the first tensor factor (subsystem A) is the
// slowest-varying index.

#pragma once

#include "qswap/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>
#include <string>

namespace qswap {

enum class Subsystem { A, B };

inline Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

// SWAP operator on d ⊗ d: V(|i⟩⊗|j⟩) = |j⟩⊗|i⟩. Hermitian involutive
// permutation; equals d times the partial transpose (over either factor) of
// the projector onto the maximally entangled state.
inline Matrix swap_operator(int d) {
    if (d < 1) throw std::invalid_argument("swap_operator: d must be >= 1");
    Matrix v = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            v(j * d + i, i * d + j) = 1.0;
        }
    }
    return v;
}

namespace detail {
inline void check_bipartite(const Matrix& m, int d_a, int d_b, const char* who) {
    if (d_a < 1 || d_b < 1) {
        throw std::invalid_argument(std::string(who) + ": subsystem dimensions must be >= 1");
    }
    const auto n = static_cast<Eigen::Index>(d_a) * d_b;
    if (m.rows() != n || m.cols() != n) {
        throw std::invalid_argument(std::string(who) + ": matrix is not (d_a*d_b) x (d_a*d_b)");
    }
}
}  // namespace detail

// Transpose applied to one tensor factor only; involutive.
inline Matrix partial_transpose(const Matrix& m, int d_a, int d_b, Subsystem which) {
    detail::check_bipartite(m, d_a, d_b, "partial_transpose");
    Matrix out(m.rows(), m.cols());
    for (int ia = 0; ia < d_a; ++ia) {
        for (int ib = 0; ib < d_b; ++ib) {
            for (int ja = 0; ja < d_a; ++ja) {
                for (int jb = 0; jb < d_b; ++jb) {
                    const int row = ia * d_b + ib;
                    const int col = ja * d_b + jb;
                    if (which == Subsystem::B) {
                        out(ia * d_b + jb, ja * d_b + ib) = m(row, col);
                    } else {
                        out(ja * d_b + ib, ia * d_b + jb) = m(row, col);
                    }
                }
            }
        }
    }
    return out;
}

// Trace over the discarded factor; keep selects the surviving subsystem.
// The total trace is preserved.
inline Matrix partial_trace(const Matrix& m, int d_a, int d_b, Subsystem keep) {
    detail::check_bipartite(m, d_a, d_b, "partial_trace");
    if (keep == Subsystem::A) {
        Matrix out = Matrix::Zero(d_a, d_a);
        for (int ia = 0; ia < d_a; ++ia) {
            for (int ja = 0; ja < d_a; ++ja) {
                Cx sum = 0.0;
                for (int b = 0; b < d_b; ++b) {
                    sum += m(ia * d_b + b, ja * d_b + b);
                }
                out(ia, ja) = sum;
            }
        }
        return out;
    }
    Matrix out = Matrix::Zero(d_b, d_b);
    for (int ib = 0; ib < d_b; ++ib) {
        for (int jb = 0; jb < d_b; ++jb) {
            Cx sum = 0.0;
            for (int a = 0; a < d_a; ++a) {
                sum += m(a * d_b + ib, a * d_b + jb);
            }
            out(ib, jb) = sum;
        }
    }
    return out;
}

struct EigResult {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // orthonormal columns, vectors.col(i) pairs with values(i)
};

// Exact eigendecomposition of a Hermitian matrix; the oracle behind every
// spectral claim in the toolkit. Deterministic for a given input.
inline EigResult eig_hermitian(const Matrix& m, double tol = kStructuralTol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("eig_hermitian: matrix must be square and nonempty");
    }
    if (!is_hermitian(m, tol)) {
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed");
    }
    return EigResult{es.eigenvalues(), es.eigenvectors()};
}

// (1/2) * sum of |eigenvalues| of the (hermitized) difference.
inline double trace_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    const Matrix h = 0.5 * ((a - b) + (a - b).adjoint());
    const EigResult eig = eig_hermitian(h, 1e-6);
    return 0.5 * eig.values.cwiseAbs().sum();
}

}  // namespace qswap
