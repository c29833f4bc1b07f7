// Exact vs sampled SWAP-test overlap on a pair of random qubit states.

#include "qswap/qswap.hpp"

#include <cstdio>

int main() {
    using namespace qswap;

    RandomStream rs(2024);
    const DensityOperator a = random_density(2, rs);
    const DensityOperator b = random_density(2, rs);

    const double exact = overlap(a, b, 0, 0).v;
    std::printf("exact overlap tr(rho_a rho_b) = %.12f\n", exact);

    for (long long shots : {100LL, 10000LL, 1000000LL}) {
        const VisibilityEstimate est = overlap(a, b, shots, 7);
        std::printf("%8lld shots: v = %.6f  (stderr_p0 = %.6f, error = %+.6f)\n",
                    shots, est.v, est.stderr_p0, est.v - exact);
    }
    return 0;
}
