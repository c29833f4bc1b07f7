// observables.hpp — expectation values of Hermitian observables via state encoding
//
// A known observable A is encoded as the state rho_A' = (gamma I + A)/tr(gamma I + A)
// with gamma chosen so the numerator is positive. One overlap measurement
// v = tr(rho_A' rho_b) then inverts to
//
//   ⟨A⟩ = v tr(A) + gamma (v d - 1)
//
// exactly, for any gamma that makes the embedding valid.

#pragma once

#include "qswap/interferometer.hpp"

#include <cmath>

namespace qswap {

struct Observable {
    int dim = 0;
    Matrix matrix;
};

inline Observable make_observable(const Matrix& m, double tol = kStructuralTol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("make_observable: matrix must be square and nonempty");
    }
    if (!all_finite(m)) throw std::invalid_argument("make_observable: entries must be finite");
    if (!is_hermitian(m, tol)) {
        throw std::invalid_argument("make_observable: matrix is not Hermitian");
    }
    return Observable{static_cast<int>(m.rows()), m};
}

struct Embedding {
    double gamma = 0.0;
    double trace_a_prime = 0.0;  // tr A + gamma d, strictly positive
    DensityOperator rho_a_prime;
};

// gamma = 0 when A is positive definite; otherwise gamma lifts the spectrum by
// -lambda_min plus a small pad (1e-6 * max|A|) so the shifted operator keeps a
// strictly positive trace even when A <= 0 (e.g. A proportional to -I, where
// the unpadded shift would vanish identically).
inline Embedding embed_observable(const Observable& a) {
    const double scale = max_abs(a.matrix);
    if (scale == 0.0) {
        throw std::invalid_argument("embed_observable: zero observable has no embedding");
    }
    const int d = a.dim;
    const double lam_min = eig_hermitian(a.matrix).values(0);
    double gamma = 0.0;
    if (lam_min <= 0.0) gamma = -lam_min + 1e-6 * scale;
    const Matrix a_prime = gamma * Matrix::Identity(d, d) + a.matrix;
    const double trace_a_prime = a_prime.trace().real();
    if (!(trace_a_prime > 0.0)) {
        throw std::logic_error("embed_observable: shifted observable lost positivity");
    }
    Embedding emb;
    emb.gamma = gamma;
    emb.trace_a_prime = trace_a_prime;
    emb.rho_a_prime = validate_density(a_prime / trace_a_prime);
    return emb;
}

struct ExpectationEstimate {
    double value = 0.0;
    double stderr_value = 0.0;  // (tr A + gamma d) * stderr of the visibility
    double gamma = 0.0;
    VisibilityEstimate visibility;
};

inline ExpectationEstimate expectation(const Observable& a, const DensityOperator& rho_b,
                                       long long shots, std::uint64_t seed) {
    if (a.dim != rho_b.dim) throw std::invalid_argument("expectation: dimension mismatch");
    const Embedding emb = embed_observable(a);
    const VisibilityEstimate vis = overlap(emb.rho_a_prime, rho_b, shots, seed);
    ExpectationEstimate est;
    est.value = vis.v * emb.trace_a_prime - emb.gamma;
    est.stderr_value = emb.trace_a_prime * 2.0 * vis.stderr_p0;  // stderr(v) = 2 stderr(p0)
    est.gamma = emb.gamma;
    est.visibility = vis;
    return est;
}

}  // namespace qswap
