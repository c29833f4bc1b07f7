// interferometer.hpp — single-qubit interferometer with a controlled-U insertion
//
// Circuit: Hadamard on the control, controlled-U on the target register,
// phase shift phi on the |1⟩ control branch, Hadamard, measurement of the
// control in the computational basis. The target register enters in state
// rho and is never measured; only the binary control outcome is sampled.
//
//   Pr(|0⟩) = (1 + Re(e^{i phi} tr(rho U))) / 2
//
// Sign convention, fixed project-wide: the phase shifter multiplies the |1⟩
// branch by e^{+i phi}. Writing tr(rho U) = v e^{i alpha}, v is the fringe
// visibility and alpha the fringe shift.

#pragma once

#include "qswap/linalg.hpp"
#include "qswap/rng.hpp"
#include "qswap/states.hpp"

#include <cmath>
#include <cstdint>

namespace qswap {

enum class RunMode { exact, sampled };

struct InterferometerRun {
    Matrix u;             // unitary acting on the target register
    DensityOperator rho;  // target register state
    double phase_phi = 0.0;
    RunMode mode = RunMode::exact;
    long long shots = 0;  // required >= 1 in sampled mode
    std::uint64_t seed = 0;
};

struct VisibilityEstimate {
    double v = 0.0;      // fringe contrast 2*p0 - 1; equals the state overlap in SWAP usage
    double alpha = 0.0;  // fringe shift; populated only by the two-setting estimator
    double p0 = 0.0;     // probability (exact) or estimate (sampled) of control outcome |0⟩
    long long shots_used = 0;
    double stderr_p0 = 0.0;  // 0 exactly in exact mode, sqrt(p0(1-p0)/shots) otherwise
};

namespace detail {
inline constexpr std::uint64_t kRunStreamLabel = 0x696e746572666d72ULL;
inline constexpr std::uint64_t kRealQuadratureLabel = 0x7265616c70617274ULL;
inline constexpr std::uint64_t kImagQuadratureLabel = 0x696d616770617274ULL;
}  // namespace detail

inline double prob_zero_exact(const Matrix& u, const DensityOperator& rho, double phi) {
    if (u.rows() != rho.dim || u.cols() != rho.dim) {
        throw std::invalid_argument("prob_zero_exact: dimension mismatch between u and rho");
    }
    if (!is_unitary(u)) {
        throw std::invalid_argument("prob_zero_exact: u is not unitary");
    }
    const Cx z = (rho.matrix * u).trace();
    return 0.5 * (1.0 + (std::polar(1.0, phi) * z).real());
}

// One full run at a fixed phase setting. Exact mode reports the analytic
// Pr(|0⟩); sampled mode draws shots Bernoulli outcomes from a stream derived
// from the run seed. v = 2*p0 - 1 recovers the visibility when tr(rho U) is
// real, which holds in every SWAP-overlap usage.
inline VisibilityEstimate run(const InterferometerRun& r) {
    const double p0 = prob_zero_exact(r.u, r.rho, r.phase_phi);
    VisibilityEstimate est;
    if (r.mode == RunMode::exact) {
        est.p0 = p0;
        est.v = 2.0 * p0 - 1.0;
        return est;
    }
    if (r.shots < 1) throw std::invalid_argument("run: sampled mode requires shots >= 1");
    RandomStream rs(r.seed, detail::kRunStreamLabel);
    const long long zeros = rs.bernoulli_count(p0, r.shots);
    est.p0 = static_cast<double>(zeros) / static_cast<double>(r.shots);
    est.v = 2.0 * est.p0 - 1.0;
    est.shots_used = r.shots;
    est.stderr_p0 = std::sqrt(est.p0 * (1.0 - est.p0) / static_cast<double>(r.shots));
    return est;
}

struct TraceEstimate {
    double v = 0.0;      // |tr(rho U)|
    double alpha = 0.0;  // arg tr(rho U), in (-pi, pi]
};

// Recovers the complex tr(rho U) from the two fringe settings phi = 0 (real
// quadrature) and phi = -pi/2 (imaginary quadrature). shots is the budget per
// phase setting; shots = 0 selects exact mode.
inline TraceEstimate estimate_tr_rho_u(const Matrix& u, const DensityOperator& rho,
                                       long long shots, std::uint64_t seed) {
    InterferometerRun r;
    r.u = u;
    r.rho = rho;
    r.mode = shots > 0 ? RunMode::sampled : RunMode::exact;
    r.shots = shots;

    r.phase_phi = 0.0;
    r.seed = derive_stream(seed, detail::kRealQuadratureLabel);
    const double re = run(r).v;

    r.phase_phi = -M_PI / 2.0;
    r.seed = derive_stream(seed, detail::kImagQuadratureLabel);
    const double im = run(r).v;

    TraceEstimate est;
    est.v = std::hypot(re, im);
    est.alpha = std::atan2(im, re);
    if (est.alpha <= -M_PI) est.alpha += 2.0 * M_PI;
    return est;
}

// SWAP-test overlap: with U the SWAP operator and input rho_a ⊗ rho_b, the
// visibility at phi = 0 equals tr(rho_a rho_b). shots = 0 selects exact mode.
inline VisibilityEstimate overlap(const DensityOperator& rho_a, const DensityOperator& rho_b,
                                  long long shots, std::uint64_t seed) {
    if (rho_a.dim != rho_b.dim) throw std::invalid_argument("overlap: dimension mismatch");
    InterferometerRun r;
    r.u = swap_operator(rho_a.dim);
    r.rho = DensityOperator{rho_a.dim * rho_a.dim, kron(rho_a.matrix, rho_b.matrix)};
    r.phase_phi = 0.0;
    r.mode = shots > 0 ? RunMode::sampled : RunMode::exact;
    r.shots = shots;
    r.seed = seed;
    return run(r);
}

}  // namespace qswap
