// channels.hpp — quantum channels, their bipartite (Choi) states, and the
// capacity/distillability criteria built on extremal eigenvalues
//
// Kraus form is the ground-truth channel carrier; the Choi state is derived
// from it by sending the second half of a maximally entangled pair through
// the channel. Labeling, fixed repo-wide: subsystem A is the untouched half
// (first tensor factor), subsystem B the channel output. With that
// convention the channel action is recovered from the Choi state as
//
//   L(rho) = d * tr_A[(rho^T ⊗ I) rho_choi]
//
// which the tests pin against direct Kraus application.

#pragma once

#include "qswap/random.hpp"
#include "qswap/spectral.hpp"
#include "qswap/tomography.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace qswap {

struct KrausChannel {
    int dim = 0;
    std::vector<Matrix> kraus_ops;
};

// Checks shape and the trace-preservation condition sum K^dag K = I.
inline KrausChannel make_kraus_channel(int dim, std::vector<Matrix> ops, double tol = kStructuralTol) {
    if (dim < 1) throw std::invalid_argument("make_kraus_channel: dim must be >= 1");
    if (ops.empty()) throw std::invalid_argument("make_kraus_channel: needs at least one Kraus operator");
    Matrix completeness = Matrix::Zero(dim, dim);
    for (const Matrix& k : ops) {
        if (k.rows() != dim || k.cols() != dim) {
            throw std::invalid_argument("make_kraus_channel: Kraus operator has wrong shape");
        }
        if (!all_finite(k)) throw std::invalid_argument("make_kraus_channel: entries must be finite");
        completeness += k.adjoint() * k;
    }
    const double dev = max_abs(completeness - Matrix::Identity(dim, dim));
    if (dev > tol) {
        throw std::invalid_argument("make_kraus_channel: sum K^dag K deviates from identity by " +
                                    std::to_string(dev));
    }
    return KrausChannel{dim, std::move(ops)};
}

struct ChoiState {
    int dim = 0;           // single-system dimension d; the state lives on d^2
    DensityOperator state;
};

inline DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
    if (ch.dim != rho.dim) throw std::invalid_argument("apply_channel: dimension mismatch");
    Matrix out = Matrix::Zero(ch.dim, ch.dim);
    for (const Matrix& k : ch.kraus_ops) {
        out += k * rho.matrix * k.adjoint();
    }
    return validate_density(out);
}

// Max-abs deviation of the kept-side (A) marginal from I/d. Zero for every
// trace-preserving channel.
inline double choi_a_marginal_deviation(const ChoiState& c) {
    const Matrix marginal = partial_trace(c.state.matrix, c.dim, c.dim, Subsystem::A);
    return max_abs(marginal - Matrix::Identity(c.dim, c.dim) / static_cast<double>(c.dim));
}

// Bipartite state of the channel: the maximally entangled pair with the
// channel applied to the second half. A violated A-marginal signals a broken
// Kraus set, so it is asserted here.
inline ChoiState choi_state(const KrausChannel& ch) {
    const int d = ch.dim;
    const Matrix p_plus = projector(max_entangled_state(d).amplitudes);
    const Matrix eye = Matrix::Identity(d, d);
    Matrix out = Matrix::Zero(d * d, d * d);
    for (const Matrix& k : ch.kraus_ops) {
        const Matrix lifted = kron(eye, k);
        out += lifted * p_plus * lifted.adjoint();
    }
    ChoiState c{d, validate_density(out)};
    if (choi_a_marginal_deviation(c) > kOracleTol) {
        throw std::invalid_argument("choi_state: kept-side marginal is not maximally mixed");
    }
    return c;
}

// Channel action reconstructed from the Choi state. Valid Choi states give a
// physical output directly; estimates whose marginal drifted under shot noise
// yield an almost-physical matrix, which is clipped back to the state set.
inline DensityOperator apply_choi(const ChoiState& c, const DensityOperator& rho_in) {
    if (c.dim != rho_in.dim) throw std::invalid_argument("apply_choi: dimension mismatch");
    const int d = c.dim;
    const Matrix lifted = kron(rho_in.matrix.transpose(), Matrix::Identity(d, d));
    const Matrix out = static_cast<double>(d) *
                       partial_trace(lifted * c.state.matrix, d, d, Subsystem::B);
    try {
        return validate_density(out);
    } catch (const DensityError&) {
        return project_to_physical(0.5 * (out + out.adjoint()));
    }
}

// True when the channel-output marginal is also maximally mixed, i.e. the
// channel maps the maximally mixed state to itself.
inline bool is_bistochastic(const ChoiState& c, double tol = kOracleTol) {
    const Matrix marginal = partial_trace(c.state.matrix, c.dim, c.dim, Subsystem::B);
    return max_abs(marginal - Matrix::Identity(c.dim, c.dim) / static_cast<double>(c.dim)) <= tol;
}

struct CapacityVerdict {
    bool positive = false;
    double lambda_max = 0.0;
    bool inconclusive = false;  // sampled mode only: |lambda - 1/2| within 3 stderr
    ExtremalResult optimizer;
};

// A qubit channel can transmit quantum information with two-way classical
// assistance exactly when its Choi state has an eigenvalue above 1/2. The
// eigenvalue is estimated with the visibility optimizer, not the exact
// eigensolver.
inline CapacityVerdict two_way_capacity_positive(const ChoiState& c, const OptimizerConfig& cfg) {
    if (c.dim != 2) {
        throw std::invalid_argument("two_way_capacity_positive: qubit channels only");
    }
    ExtremalResult res = extremal_eigen(c.state, Extremum::max, cfg);
    CapacityVerdict verdict;
    verdict.lambda_max = res.eigenvalue_estimate;
    constexpr double kMargin = 1e-6;
    verdict.positive = verdict.lambda_max > 0.5 + kMargin;
    if (cfg.shots_per_eval > 0) {
        const double lam = verdict.lambda_max;
        const double stderr_v =
            std::sqrt(std::max(0.0, 1.0 - lam * lam) / static_cast<double>(cfg.shots_per_eval));
        verdict.inconclusive = std::abs(lam - 0.5) <= 3.0 * stderr_v;
    }
    verdict.optimizer = std::move(res);
    return verdict;
}

struct DistillabilityResult {
    bool distillable = false;
    double min_eig = 0.0;
};

// Two-way distillability of a two-qubit state: the state is distillable
// exactly when rho_A ⊗ I - rho_AB has a negative eigenvalue (exact
// eigensolver route).
inline DistillabilityResult distillability_operator_test(const DensityOperator& rho_ab) {
    if (rho_ab.dim != 4) {
        throw std::invalid_argument("distillability_operator_test: two-qubit states only");
    }
    const Matrix rho_a = partial_trace(rho_ab.matrix, 2, 2, Subsystem::A);
    const Matrix op = kron(rho_a, Matrix::Identity(2, 2)) - rho_ab.matrix;
    const double min_eig = eig_hermitian(op).values(0);
    return DistillabilityResult{min_eig < -1e-10, min_eig};
}

// ---- channel zoo --------------------------------------------------------

inline KrausChannel identity_channel(int d) {
    return make_kraus_channel(d, {Matrix::Identity(d, d)});
}

inline KrausChannel unitary_channel(const Matrix& u) {
    if (!is_unitary(u)) throw std::invalid_argument("unitary_channel: matrix is not unitary");
    return make_kraus_channel(static_cast<int>(u.rows()), {u});
}

// Qubit depolarizing channel: rho -> p rho + (1-p) I/2, via the Pauli twirl.
inline KrausChannel depolarizing_channel(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_channel: p must be in [0,1]");
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Cx(0, -1), Cx(0, 1), 0;
    z << 1, 0, 0, -1;
    const double w_id = std::sqrt(p + (1.0 - p) / 4.0);
    const double w_pauli = std::sqrt((1.0 - p) / 4.0);
    return make_kraus_channel(2, {w_id * Matrix::Identity(2, 2), w_pauli * x, w_pauli * y, w_pauli * z});
}

inline KrausChannel amplitude_damping_channel(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) {
        throw std::invalid_argument("amplitude_damping_channel: gamma must be in [0,1]");
    }
    Matrix k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    return make_kraus_channel(2, {k0, k1});
}

inline KrausChannel bit_flip_channel(double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("bit_flip_channel: q must be in [0,1]");
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return make_kraus_channel(2, {std::sqrt(1.0 - q) * Matrix::Identity(2, 2), std::sqrt(q) * x});
}

// Random channel with kraus_count operators: the column-orthonormal factor of
// a stacked Ginibre block gives an isometry whose d x d blocks are a valid
// Kraus set.
inline KrausChannel random_channel(int d, int kraus_count, RandomStream& rs) {
    if (d < 1 || kraus_count < 1) {
        throw std::invalid_argument("random_channel: d and kraus_count must be >= 1");
    }
    const Matrix g = random_ginibre(d * kraus_count, d, rs);
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix q = qr.householderQ() * Matrix::Identity(d * kraus_count, d);
    std::vector<Matrix> ops;
    ops.reserve(static_cast<std::size_t>(kraus_count));
    for (int i = 0; i < kraus_count; ++i) {
        ops.push_back(q.middleRows(i * d, d));
    }
    return make_kraus_channel(d, std::move(ops));
}

// ---- channel tomography --------------------------------------------------

struct ChannelTomographyReport {
    ChoiState choi;                     // measured bipartite state of the channel
    double a_marginal_deviation = 0.0;  // projection can perturb the kept-side marginal
    ReconstructionReport reconstruction;
};

// Estimates the channel's bipartite state with the state-tomography module on
// dimension d^2. The channel itself plays the oracle role, handing the
// procedure fresh copies of its Choi state.
inline ChannelTomographyReport channel_tomography(const KrausChannel& ch,
                                                  long long shots_per_probe, std::uint64_t seed) {
    const ChoiState truth = choi_state(ch);
    ReconstructionReport rep = run_tomography(truth.state, shots_per_probe, seed);
    ChoiState measured{ch.dim, rep.state};
    ChannelTomographyReport out;
    out.a_marginal_deviation = choi_a_marginal_deviation(measured);
    out.choi = std::move(measured);
    out.reconstruction = std::move(rep);
    return out;
}

}  // namespace qswap
