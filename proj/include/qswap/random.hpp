// random.hpp — seeded generation of random quantum objects

#pragma once

#include "qswap/rng.hpp"
#include "qswap/states.hpp"

#include <Eigen/QR>

namespace qswap {

// Matrix of iid standard complex Gaussians.
inline Matrix random_ginibre(int rows, int cols, RandomStream& rs) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            g(i, j) = Cx(rs.normal(), rs.normal());
        }
    }
    return g;
}

// Haar-random pure state.
inline PureState random_pure(int d, RandomStream& rs) {
    if (d < 1) throw std::invalid_argument("random_pure: d must be >= 1");
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Cx(rs.normal(), rs.normal());
    return normalized_pure(std::move(v));
}

// Hilbert-Schmidt random density operator: G G^dag / tr(G G^dag).
inline DensityOperator random_density(int d, RandomStream& rs) {
    if (d < 1) throw std::invalid_argument("random_density: d must be >= 1");
    const Matrix g = random_ginibre(d, d, rs);
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint());
    return DensityOperator{d, std::move(m)};
}

// Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases
// absorbed into Q.
inline Matrix random_unitary(int d, RandomStream& rs) {
    if (d < 1) throw std::invalid_argument("random_unitary: d must be >= 1");
    const Matrix g = random_ginibre(d, d, rs);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const Cx rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : Cx(1.0, 0.0);
    }
    return q;
}

}  // namespace qswap
