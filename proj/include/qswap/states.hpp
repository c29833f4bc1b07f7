// states.hpp — pure states, density operators, and state validation

#pragma once

#include "qswap/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qswap {

struct PureState {
    Vector amplitudes;

    int dim() const { return static_cast<int>(amplitudes.size()); }
};

// Accepts only unit-norm amplitude vectors (within tol).
inline PureState make_pure(Vector amplitudes, double tol = kUnitNormTol) {
    if (amplitudes.size() == 0) throw std::invalid_argument("make_pure: empty amplitude vector");
    if (!amplitudes.allFinite()) throw std::invalid_argument("make_pure: amplitudes must be finite");
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > tol) {
        throw std::invalid_argument("make_pure: state is not normalized, |norm - 1| = " +
                                    std::to_string(std::abs(norm - 1.0)));
    }
    return PureState{std::move(amplitudes)};
}

inline PureState normalized_pure(Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !amplitudes.allFinite()) {
        throw std::invalid_argument("normalized_pure: amplitudes must be finite and nonzero");
    }
    amplitudes /= norm;
    return PureState{std::move(amplitudes)};
}

// Maximally entangled state on d ⊗ d: amplitude 1/sqrt(d) on every |i⟩⊗|i⟩.
inline PureState max_entangled_state(int d) {
    if (d < 1) throw std::invalid_argument("max_entangled_state: d must be >= 1");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) v(i * d + i) = amp;
    return PureState{std::move(v)};
}

struct DensityOperator {
    int dim = 0;
    Matrix matrix;
};

enum class DensityViolation { hermiticity, trace, positivity };

inline const char* to_string(DensityViolation v) {
    switch (v) {
        case DensityViolation::hermiticity: return "hermiticity";
        case DensityViolation::trace: return "trace";
        case DensityViolation::positivity: return "positivity";
    }
    return "unknown";
}

// Structured rejection: names the violated state invariant and its magnitude
// (max |M - M^dag| entry, the actual trace, or the most negative eigenvalue).
class DensityError : public std::invalid_argument {
  public:
    DensityError(DensityViolation violation, double magnitude, const std::string& message)
        : std::invalid_argument(message), violation(violation), magnitude(magnitude) {}

    DensityViolation violation;
    double magnitude;
};

inline DensityOperator validate_density(const Matrix& m, double tol = kStructuralTol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("validate_density: matrix must be square and nonempty");
    }
    if (!all_finite(m)) {
        throw std::invalid_argument("validate_density: entries must be finite");
    }
    const double herm = max_abs(m - m.adjoint());
    if (herm > tol) {
        throw DensityError(DensityViolation::hermiticity, herm,
                           "validate_density: not Hermitian, max |M - M^dag| = " + std::to_string(herm));
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        throw DensityError(DensityViolation::trace, tr,
                           "validate_density: trace = " + std::to_string(tr));
    }
    const EigResult eig = eig_hermitian(m, tol);
    const double lam_min = eig.values(0);
    if (lam_min < -tol) {
        throw DensityError(DensityViolation::positivity, lam_min,
                           "validate_density: negative eigenvalue " + std::to_string(lam_min));
    }
    return DensityOperator{static_cast<int>(m.rows()), m};
}

inline DensityOperator pure_density(const PureState& psi) {
    return DensityOperator{psi.dim(), projector(psi.amplitudes)};
}

inline DensityOperator maximally_mixed(int d) {
    if (d < 1) throw std::invalid_argument("maximally_mixed: d must be >= 1");
    return DensityOperator{d, Matrix::Identity(d, d) / static_cast<double>(d)};
}

}  // namespace qswap
