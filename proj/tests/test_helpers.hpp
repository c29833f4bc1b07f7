// Shared helpers for the test suite. The oracle functions here are written
// independently of the library code paths they check: index-formula loops
// instead of library kron/partial ops, explicit sums instead of trace calls.

#pragma once

#include "qswap/qswap.hpp"

#include <vector>

namespace qswap::test {

// Kronecker product straight from the index formula
// (A ⊗ B)[d_b*i + k, d_b*j + l] = A[i,j] * B[k,l].
inline Matrix kron_oracle(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(b.rows() * i + k, b.cols() * j + l) = a(i, j) * b(k, l);
    return out;
}

// tr(X Y) by explicit double sum.
inline Cx product_trace_oracle(const Matrix& x, const Matrix& y) {
    Cx sum = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            sum += x(i, j) * y(j, i);
    return sum;
}

// ⟨psi|M|psi⟩ by explicit loops.
inline Cx sandwich_oracle(const Vector& psi, const Matrix& m) {
    Cx sum = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            sum += std::conj(psi(i)) * m(i, j) * psi(j);
    return sum;
}

// Trace over subsystem B by explicit index loops (keeps A).
inline Matrix ptrace_b_oracle(const Matrix& m, int d_a, int d_b) {
    Matrix out = Matrix::Zero(d_a, d_a);
    for (int ia = 0; ia < d_a; ++ia)
        for (int ja = 0; ja < d_a; ++ja)
            for (int b = 0; b < d_b; ++b)
                out(ia, ja) += m(ia * d_b + b, ja * d_b + b);
    return out;
}

inline DensityOperator random_density_seeded(int d, std::uint64_t seed) {
    RandomStream rs(seed);
    return random_density(d, rs);
}

}  // namespace qswap::test
