// Prints the ramp family's E_1 / omega_2 ratios, which approach the sharp
// symmetric-body constant 1/2 as delta shrinks.

#include <cstdio>

#include "cvxpoly/whitney.hpp"

using namespace cvxpoly;

int main() {
    std::printf("%8s %12s %12s %12s %12s\n", "delta", "E1", "omega2", "ratio", "1/2-delta/4");
    for (double delta : {0.5, 0.25, 0.1, 0.05}) {
        WitnessFunction w = ramp(delta, 1);
        WhitneyEstimate est = whitney_ratio(w, w.natural_body, 2, GridSpec(401));
        std::printf("%8.3f %12.8f %12.8f %12.8f %12.8f\n", delta, est.E, est.omega, est.ratio,
                    0.5 - delta / 4.0);
    }
    return 0;
}
