// tomography.hpp — state reconstruction from overlap measurements
//
// A d x d density operator is pinned down by d^2 probe overlaps
// v = ⟨psi|rho|psi⟩: the d basis states |n⟩ read the diagonal, and the pairs
// (|n⟩+|k⟩)/sqrt(2), (|n⟩+i|k⟩)/sqrt(2) read the off-diagonal parts via
//
//   v_re(n,k) = (rho_nn + rho_kk)/2 + Re rho_nk
//   v_im(n,k) = (rho_nn + rho_kk)/2 - Im rho_nk
//
// with rho_nk = ⟨n|rho|k⟩. Note the minus sign on the imaginary inversion;
// it falls out of expanding ⟨psi|rho|psi⟩ for psi = (|n⟩+i|k⟩)/sqrt(2) and is
// checked against a brute-force oracle in the tests.

#pragma once

#include "qswap/interferometer.hpp"

#include <cmath>
#include <vector>

namespace qswap {

enum class ProbeKind { diagonal, real_offdiag, imag_offdiag };

struct ProbeSpec {
    ProbeKind kind = ProbeKind::diagonal;
    int n = 0;
    int k = 0;  // unused for diagonal probes
};

struct TomographySchedule {
    int dim = 0;
    std::vector<ProbeSpec> probes;
    long long shots_per_probe = 0;  // 0 = exact
};

struct ReconstructionReport {
    TomographySchedule schedule;
    std::vector<double> per_probe_visibilities;
    Matrix raw_hermitian;   // pre-projection estimate; trace may drift under noise
    DensityOperator state;  // physical state after spectrum clipping
    long long total_shots = 0;
};

inline PureState probe_state(const ProbeSpec& p, int d) {
    if (p.n < 0 || p.n >= d) throw std::out_of_range("probe_state: n out of range");
    if (p.kind == ProbeKind::diagonal) {
        return PureState{basis_ket(d, p.n)};
    }
    if (p.k <= p.n || p.k >= d) throw std::out_of_range("probe_state: requires n < k < d");
    Vector v = Vector::Zero(d);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    v(p.n) = inv_sqrt2;
    v(p.k) = p.kind == ProbeKind::real_offdiag ? Cx(inv_sqrt2, 0.0) : Cx(0.0, inv_sqrt2);
    return PureState{std::move(v)};
}

// Canonical order: diagonals ascending, then real pairs (n,k) lexicographic,
// then imaginary pairs lexicographic, for d + d(d-1)/2 + d(d-1)/2 = d^2 probes.
inline TomographySchedule default_schedule(int d, long long shots_per_probe) {
    if (d < 2) throw std::invalid_argument("default_schedule: d must be >= 2");
    TomographySchedule s;
    s.dim = d;
    s.shots_per_probe = shots_per_probe;
    s.probes.reserve(static_cast<std::size_t>(d) * d);
    for (int n = 0; n < d; ++n) s.probes.push_back({ProbeKind::diagonal, n, 0});
    for (int n = 0; n < d; ++n)
        for (int k = n + 1; k < d; ++k) s.probes.push_back({ProbeKind::real_offdiag, n, k});
    for (int n = 0; n < d; ++n)
        for (int k = n + 1; k < d; ++k) s.probes.push_back({ProbeKind::imag_offdiag, n, k});
    return s;
}

inline double measure_probe(const ProbeSpec& p, const DensityOperator& rho_b,
                            long long shots, std::uint64_t seed) {
    return overlap(pure_density(probe_state(p, rho_b.dim)), rho_b, shots, seed).v;
}

// Nearest-physical projection under the clip-and-renormalize rule: negative
// eigenvalues clip to zero and the spectrum rescales to unit sum. Idempotent;
// valid density operators pass through unchanged.
inline DensityOperator project_to_physical(const Matrix& h) {
    const EigResult eig = eig_hermitian(h);
    Eigen::VectorXd lam = eig.values.cwiseMax(0.0);
    const double total = lam.sum();
    if (!(total > 0.0)) {
        throw std::invalid_argument("project_to_physical: no positive spectral weight");
    }
    lam /= total;
    Matrix m = eig.vectors * lam.asDiagonal() * eig.vectors.adjoint();
    m = 0.5 * (m + m.adjoint());
    return DensityOperator{static_cast<int>(m.rows()), std::move(m)};
}

// Inverts the probe visibilities into the raw Hermitian estimate, reusing the
// measured diagonals for the off-diagonal inversion, then projects.
inline ReconstructionReport reconstruct(const TomographySchedule& schedule,
                                        const std::vector<double>& visibilities) {
    const int d = schedule.dim;
    if (d < 2) throw std::invalid_argument("reconstruct: schedule dimension must be >= 2");
    if (visibilities.size() != schedule.probes.size()) {
        throw std::invalid_argument("reconstruct: visibility count does not match schedule");
    }

    Matrix raw = Matrix::Zero(d, d);
    std::vector<bool> have_diag(static_cast<std::size_t>(d), false);
    for (std::size_t i = 0; i < schedule.probes.size(); ++i) {
        const ProbeSpec& p = schedule.probes[i];
        if (p.kind == ProbeKind::diagonal) {
            raw(p.n, p.n) = visibilities[i];
            have_diag[static_cast<std::size_t>(p.n)] = true;
        }
    }
    for (int n = 0; n < d; ++n) {
        if (!have_diag[static_cast<std::size_t>(n)]) {
            throw std::invalid_argument("reconstruct: schedule is missing a diagonal probe");
        }
    }
    for (std::size_t i = 0; i < schedule.probes.size(); ++i) {
        const ProbeSpec& p = schedule.probes[i];
        if (p.kind == ProbeKind::diagonal) continue;
        const double mean_diag = 0.5 * (raw(p.n, p.n).real() + raw(p.k, p.k).real());
        const double deviation = visibilities[i] - mean_diag;
        if (p.kind == ProbeKind::real_offdiag) {
            raw(p.n, p.k) += deviation;
        } else {
            raw(p.n, p.k) += Cx(0.0, -deviation);
        }
    }
    for (int n = 0; n < d; ++n) {
        for (int k = n + 1; k < d; ++k) {
            raw(k, n) = std::conj(raw(n, k));
        }
    }

    ReconstructionReport rep;
    rep.schedule = schedule;
    rep.per_probe_visibilities = visibilities;
    rep.raw_hermitian = raw;
    rep.state = project_to_physical(raw);
    rep.total_shots = schedule.shots_per_probe > 0
                          ? schedule.shots_per_probe * static_cast<long long>(schedule.probes.size())
                          : 0;
    return rep;
}

// Full procedure: canonical schedule, one overlap measurement per probe with
// a per-probe derived stream, then inversion and projection. rho_b plays the
// role of the state source, handing the circuit a fresh copy per shot.
inline ReconstructionReport run_tomography(const DensityOperator& rho_b,
                                           long long shots_per_probe, std::uint64_t seed) {
    const TomographySchedule schedule = default_schedule(rho_b.dim, shots_per_probe);
    std::vector<double> vis(schedule.probes.size());
    for (std::size_t i = 0; i < schedule.probes.size(); ++i) {
        vis[i] = measure_probe(schedule.probes[i], rho_b, shots_per_probe,
                               derive_stream(seed, static_cast<std::uint64_t>(i)));
    }
    return reconstruct(schedule, vis);
}

}  // namespace qswap
