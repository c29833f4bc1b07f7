// Sweeps the depolarizing parameter and prints the two-way capacity verdict.
// The largest Choi eigenvalue is (1+3p)/4, so the verdict flips at p = 1/3.

#include "qswap/qswap.hpp"

#include <cstdio>

int main() {
    using namespace qswap;

    OptimizerConfig cfg;
    cfg.seed = 99;

    std::printf("%6s  %12s  %s\n", "p", "lambda_max", "Q_two_way > 0");
    for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        const ChoiState c = choi_state(depolarizing_channel(p));
        const CapacityVerdict verdict = two_way_capacity_positive(c, cfg);
        std::printf("%6.2f  %12.8f  %s\n", p, verdict.lambda_max,
                    verdict.positive ? "yes" : "no");
    }
    return 0;
}
