// Walkthrough: approximate a convex function by a quadratic, break the
// approximant's convexity on purpose, then repair it and print every link of
// the certified inequality chain.

#include <cstdio>

#include "cvxpoly/convexify.hpp"
#include "cvxpoly/expr.hpp"
#include "cvxpoly/whitney.hpp"

using namespace cvxpoly;

int main() {
    // A convex function on a triangle, far from quadratic.
    ConvexBody K = ConvexBody::simplex({{0.0, 0.0}, {4.0, 0.0}, {0.0, 4.0}});
    ScalarField f = make_field(
        2,
        [](std::span<const double> x) {
            return x[0] * x[0] + 2.0 * x[1] * x[1] + std::max(0.0, x[0] + x[1] - 3.0);
        },
        /*declared_convex=*/true);

    const GridSpec grid(41);
    ApproxSolution best = best_uniform(f, K, 2, grid);
    std::printf("grid E_2(f;K)            = %.6f\n", best.error);

    // Perturb toward a non-convex quadratic.
    Polynomial P = best.polynomial + parse_polynomial("0.8*x*y - 1.5*x^2", 2);
    double fp = 0.0;
    for (const auto& x : sample_grid(K, grid)) fp = std::max(fp, std::abs(f(x) - P.eval(x)));
    std::printf("perturbed |f-P| on K     = %.6f (convex: %s)\n", fp,
                is_convex_on(P, K, grid) ? "yes" : "no");

    PositionedRepair rep = convexify_quadratic_auto(f, P, K, grid);
    const RepairResult& r = rep.repair;
    std::printf("sandwich factor lambda   = %.6f\n", rep.lambda);
    std::printf("|f-P| on ball / on K     = %.6f / %.6f\n", r.e_ball, r.e_K);
    std::printf("|P-Q| on ball            = %.6f  (<= shift %.6f: %s)\n", r.pq_ball, r.shift,
                r.intermediate_ok ? "ok" : "VIOLATED");
    std::printf("|f-Q| on K               = %.6f  (<= bound %.6f: %s)\n", r.achieved, r.bound,
                r.bound_ok ? "ok" : "VIOLATED");
    std::printf("min eigenvalue of Q      = %.3e\n", r.min_eig_Q);
    std::printf("repaired Q is convex on the original K: %s\n",
                is_convex_on(rep.Q_original, K, grid) ? "yes" : "no");
    return r.intermediate_ok && r.bound_ok ? 0 : 1;
}
