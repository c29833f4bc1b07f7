// spectral.hpp — purity, Bloch length, and extremal eigenvalue search
//
// The probe visibility v_psi = ⟨psi|rho|psi⟩ is a convex combination of the
// eigenvalues of rho, extremized exactly at the extremal eigenvectors, so
// extremal eigenvalues are found by ascent/descent of the Rayleigh quotient
// over the unit sphere. The optimizer works on the raw complex sphere with
// renormalization after each step rather than an explicit angle chart, which
// has the same stationary points and no coordinate singularities.

#pragma once

#include "qswap/interferometer.hpp"
#include "qswap/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qswap {

struct OptimizerConfig {
    int max_iters = 2000;
    double step_size = 0.5;
    double grad_tol = 1e-8;
    double value_tol = 1e-12;
    int restarts = 5;
    std::uint64_t seed = 0;
    long long shots_per_eval = 0;  // 0 = exact evaluations
};

enum class Extremum { min, max };

struct ExtremalResult {
    Extremum which = Extremum::max;
    double eigenvalue_estimate = 0.0;
    PureState eigenvector_estimate;
    int iterations_used = 0;  // summed over restarts
    int restarts_used = 0;
    bool converged = false;  // convergence of the winning restart
    std::vector<double> visibility_trace;  // per-iteration visibility of the winning restart
};

// Purity tr(rho^2) as the overlap of a state with itself (the interferometer
// consumes two copies per shot). shots = 0 selects exact mode.
inline double purity(const DensityOperator& rho, long long shots = 0, std::uint64_t seed = 0) {
    return overlap(rho, rho, shots, seed).v;
}

struct BlochLength {
    double length = 0.0;
    bool clamped = false;  // set when sampling noise pushed the purity below 1/2
};

// Qubit Bloch-vector length |r| = sqrt(2v - 1) from a purity estimate v. The
// direction is not recoverable from purity alone. Estimates slightly below
// 1/2 (allowance 0.05) clamp to zero; values outside the allowance are
// rejected as inconsistent.
inline BlochLength bloch_length(double v) {
    constexpr double kNoiseAllowance = 0.05;
    if (v < 0.5 - kNoiseAllowance) {
        throw std::domain_error("bloch_length: purity below 1/2 beyond the noise allowance");
    }
    if (v > 1.0 + kNoiseAllowance) {
        throw std::domain_error("bloch_length: purity above 1 beyond the noise allowance");
    }
    if (v < 0.5) return {0.0, true};
    return {std::sqrt(2.0 * v - 1.0), false};
}

// v_psi = ⟨psi|rho|psi⟩, the quantity the optimizer scans.
inline double visibility_at(const PureState& psi, const DensityOperator& rho,
                            long long shots = 0, std::uint64_t seed = 0) {
    return overlap(pure_density(psi), rho, shots, seed).v;
}

namespace detail {

inline double rayleigh(const Matrix& m, const Vector& psi) {
    return psi.dot(m * psi).real();
}

// Orthonormal complex basis of the orthogonal complement of psi, built by
// Gram-Schmidt over the standard basis. Each element b contributes the two
// real tangent directions b and i*b, for 2(d-1) in total.
inline std::vector<Vector> complement_basis(const Vector& psi) {
    const int d = static_cast<int>(psi.size());
    std::vector<Vector> basis;
    basis.reserve(static_cast<std::size_t>(d) - 1);
    for (int i = 0; i < d && static_cast<int>(basis.size()) < d - 1; ++i) {
        Vector cand = basis_ket(d, i);
        cand -= psi * psi.dot(cand);
        for (const Vector& b : basis) cand -= b * b.dot(cand);
        const double norm = cand.norm();
        if (norm > 1e-8) basis.push_back(cand / norm);
    }
    return basis;
}

struct RestartOutcome {
    Vector psi;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

inline RestartOutcome optimize_restart(const DensityOperator& rho, Extremum which,
                                       const OptimizerConfig& cfg, std::uint64_t restart_seed) {
    const double direction = which == Extremum::max ? 1.0 : -1.0;
    const bool sampled = cfg.shots_per_eval > 0;
    constexpr double kFdStep = 0.05;  // finite-difference arc step, sampled mode

    RandomStream start_rs(restart_seed, std::uint64_t{0});
    RestartOutcome out;
    out.psi = random_pure(rho.dim, start_rs).amplitudes;

    auto evaluate = [&](const Vector& psi, std::uint64_t label) {
        if (!sampled) return rayleigh(rho.matrix, psi);
        return visibility_at(PureState{psi}, rho, cfg.shots_per_eval,
                             derive_stream(restart_seed, label));
    };

    std::uint64_t eval_label = 1;
    out.value = evaluate(out.psi, eval_label++);
    out.trace.push_back(out.value);

    for (int it = 0; it < cfg.max_iters; ++it) {
        Vector grad;
        if (!sampled) {
            grad = rho.matrix * out.psi - out.value * out.psi;
        } else {
            // Central differences along the tangent directions; both sides of
            // each pair share one stream (common random numbers) so the shot
            // noise largely cancels in the difference.
            const std::vector<Vector> basis = complement_basis(out.psi);
            grad = Vector::Zero(rho.dim);
            for (const Vector& b : basis) {
                for (const Cx phase : {Cx(1.0, 0.0), Cx(0.0, 1.0)}) {
                    const Vector dir = phase * b;
                    const std::uint64_t label = eval_label++;
                    const Vector plus = (out.psi + kFdStep * dir).normalized();
                    const Vector minus = (out.psi - kFdStep * dir).normalized();
                    const double vp = evaluate(plus, label);
                    const double vm = evaluate(minus, label);
                    grad += dir * ((vp - vm) / (2.0 * kFdStep));
                }
            }
        }

        out.iterations = it + 1;
        if (grad.norm() <= cfg.grad_tol) {
            out.converged = true;
            break;
        }

        out.psi = (out.psi + direction * cfg.step_size * grad).normalized();
        const double next = evaluate(out.psi, eval_label++);
        out.trace.push_back(next);
        const double change = std::abs(next - out.value);
        out.value = next;
        if (change <= cfg.value_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace detail

// Extremal eigenvalue/eigenvector search by projected gradient on the
// Rayleigh quotient (exact mode) or its finite-difference surrogate over the
// 2(d-1) tangent directions (sampled mode). Runs cfg.restarts independent
// seeded starts and returns the best. converged = false means the best
// restart hit max_iters without meeting grad_tol or value_tol; the
// best-so-far estimate is still returned.
inline ExtremalResult extremal_eigen(const DensityOperator& rho, Extremum which,
                                     const OptimizerConfig& cfg) {
    if (cfg.max_iters < 1 || cfg.restarts < 1) {
        throw std::invalid_argument("extremal_eigen: max_iters and restarts must be >= 1");
    }
    if (!(cfg.step_size > 0.0)) {
        throw std::invalid_argument("extremal_eigen: step_size must be positive");
    }

    ExtremalResult result;
    result.which = which;
    result.restarts_used = cfg.restarts;

    bool have_best = false;
    for (int r = 0; r < cfg.restarts; ++r) {
        detail::RestartOutcome out =
            detail::optimize_restart(rho, which, cfg, derive_stream(cfg.seed, static_cast<std::uint64_t>(r)));
        result.iterations_used += out.iterations;
        const bool better = !have_best || (which == Extremum::max
                                               ? out.value > result.eigenvalue_estimate
                                               : out.value < result.eigenvalue_estimate);
        if (better) {
            result.eigenvalue_estimate = out.value;
            result.eigenvector_estimate = PureState{std::move(out.psi)};
            result.converged = out.converged;
            result.visibility_trace = std::move(out.trace);
            have_best = true;
        }
    }
    // Density-operator eigenvalues live in [0,1]; shot noise may overshoot.
    if (cfg.shots_per_eval > 0) {
        result.eigenvalue_estimate = std::clamp(result.eigenvalue_estimate, 0.0, 1.0);
    }
    return result;
}

// Separability indicator for a two-qubit state with a maximally mixed
// marginal: such states are separable exactly when no eigenvalue exceeds 1/2.
// Requires at least one marginal within 1e-6 of I/2.
inline bool max_mixed_subsystem_separability_check(const DensityOperator& rho,
                                                   const OptimizerConfig& cfg) {
    if (rho.dim != 4) {
        throw std::invalid_argument("max_mixed_subsystem_separability_check: two-qubit states only");
    }
    const Matrix half = Matrix::Identity(2, 2) * 0.5;
    const double dev_a = max_abs(partial_trace(rho.matrix, 2, 2, Subsystem::A) - half);
    const double dev_b = max_abs(partial_trace(rho.matrix, 2, 2, Subsystem::B) - half);
    if (std::min(dev_a, dev_b) > 1e-6) {
        throw std::invalid_argument(
            "max_mixed_subsystem_separability_check: no subsystem is maximally mixed");
    }
    const ExtremalResult res = extremal_eigen(rho, Extremum::max, cfg);
    double tol_eig = 1e-6;
    if (cfg.shots_per_eval > 0) {
        const double lam = res.eigenvalue_estimate;
        tol_eig += 3.0 * std::sqrt(std::max(0.0, 1.0 - lam * lam) /
                                   static_cast<double>(cfg.shots_per_eval));
    }
    return res.eigenvalue_estimate <= 0.5 + tol_eig;
}

}  // namespace qswap
