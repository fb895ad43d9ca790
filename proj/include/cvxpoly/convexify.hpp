#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cvxpoly/approx.hpp"
#include "cvxpoly/errors.hpp"
#include "cvxpoly/geometry.hpp"
#include "cvxpoly/polynomials.hpp"
#include "cvxpoly/smoothness.hpp"

namespace cvxpoly {

// Safety inflation applied to the grid estimate of ||f-P|| on the inscribed
// ball before it is used as the constant shift; the grid sup can undershoot
// the true sup, and the inflation is carried through the reported bound.
inline constexpr double kShiftInflation = 1e-3;

// Eigenvalues in (-kCurvatureSnap, 0) count as zero curvature, not as
// something to repair.
inline constexpr double kCurvatureSnap = 1e-12;

struct RepairResult {
    Polynomial Q;              // convex quadratic repair of P
    double lambda = 1.0;       // sandwich factor of the positioned body
    double e_ball = 0.0;       // ||f-P|| over the unit-ball grid
    double e_K = 0.0;          // ||f-P|| over the K grid
    double shift = 0.0;        // e_ball * (1 + kShiftInflation), subtracted in Q
    double pq_ball = 0.0;      // ||P-Q|| over the unit-ball grid
    double bound = 0.0;        // 2 lambda^2 e_K (1 + kShiftInflation)
    double achieved = 0.0;     // ||f-Q|| over the K grid
    double min_eig_Q = 0.0;    // smallest eigenvalue of Q's quadratic form
    bool intermediate_ok = false;  // pq_ball <= shift + 1e-8
    bool bound_ok = false;         // achieved <= bound + 1e-8
};

namespace detail {

inline void require_canonical(const ConvexBody& K, double lambda) {
    try {
        verify_sandwich(K, lambda);
    } catch (const InternalError&) {
        throw PreconditionError("convexify_quadratic: body is not in canonical position");
    }
}

} // namespace detail

// Quadratic repair: split P into x'Mx + L(x), diagonalize M, clip the negative
// eigenvalues, and shift down by the (inflated) ball error of P. Q is convex
// by construction and satisfies ||f-Q||_K <= 2 lambda^2 ||f-P||_K up to the
// inflation and grid tolerances. K must be positioned with
// B_2^n subset K subset lambda B_2^n.
inline RepairResult convexify_quadratic(const ScalarField& f, const Polynomial& P,
                                        const ConvexBody& K, double lambda,
                                        const GridSpec& grid) {
    if (f.dim != K.dimension() || P.dim() != K.dimension())
        throw InputError("convexify_quadratic: dimension mismatch");
    if (P.effective_degree() > 2)
        throw InputError("convexify_quadratic: P must have degree <= 2");
    detail::require_canonical(K, lambda);
    if (!midpoint_convexity_ok(f, K, GridSpec(std::min(grid.resolution, 9))))
        throw PreconditionError("convexify_quadratic: convexity spot-check failed on f");

    const int n = K.dimension();
    const ConvexBody unit_ball = ConvexBody::ball(Vec(n, 0.0), 1.0);
    const auto ball_pts = sample_grid(unit_ball, grid);
    const auto k_pts = sample_grid(K, grid);

    RepairResult out;
    out.lambda = lambda;
    for (const auto& x : ball_pts) out.e_ball = std::max(out.e_ball, std::abs(f(x) - P.eval(x)));
    for (const auto& x : k_pts) out.e_K = std::max(out.e_K, std::abs(f(x) - P.eval(x)));
    out.shift = out.e_ball * (1.0 + kShiftInflation);

    auto parts = quadratic_parts(P);
    auto eig = symm_eig(parts.M);
    Matrix Dplus(n, n);
    for (int i = 0; i < n; ++i) {
        double d = eig.d[i];
        if (d > -kCurvatureSnap && d < 0.0) d = 0.0;
        Dplus(i, i) = std::max(d, 0.0);
    }
    Matrix Mplus = eig.O * Dplus * eig.O.transposed();
    Polynomial Q = from_quadratic(Mplus, parts.linear);
    const std::vector<int> zero_expo(n, 0);
    Q.set_coeff(zero_expo, Q.coeff(zero_expo) - out.shift);
    out.Q = Q;

    for (const auto& x : ball_pts)
        out.pq_ball = std::max(out.pq_ball, std::abs(P.eval(x) - Q.eval(x)));
    for (const auto& x : k_pts) out.achieved = std::max(out.achieved, std::abs(f(x) - Q.eval(x)));
    out.bound = 2.0 * lambda * lambda * out.e_K * (1.0 + kShiftInflation);
    out.min_eig_Q = symm_eig(Mplus).d.back();
    out.intermediate_ok = out.pq_ball <= out.shift + 1e-8;
    out.bound_ok = out.achieved <= out.bound + 1e-8;
    return out;
}

// Repair in original coordinates: positions K, pushes f and P through the map,
// repairs there, and pulls Q back (convexity is affine invariant).
struct PositionedRepair {
    RepairResult repair;    // in the positioned frame
    Polynomial Q_original;  // Q composed with the positioning map
    AffineMap map;
    double lambda = 1.0;
};

inline PositionedRepair convexify_quadratic_auto(const ScalarField& f, const Polynomial& P,
                                                 const ConvexBody& K, const GridSpec& grid) {
    PositionedBody pos = positioned(K);
    const AffineMap inv = pos.map.inverse();
    ScalarField f_pos = make_field(
        f.dim, [f, inv](std::span<const double> y) { return f(inv(y)); }, f.declared_convex);
    Polynomial P_pos = compose_affine(P, inv);
    PositionedRepair out;
    out.map = pos.map;
    out.lambda = pos.lambda;
    out.repair = convexify_quadratic(f_pos, P_pos, pos.body, pos.lambda, grid);
    out.Q_original = compose_affine(out.repair.Q, pos.map);
    return out;
}

// h = g + L ||x||^2 with L = max over the grid of half the Hessian spectral
// radius of g; h is convex on K (checked on the grid).
struct SmoothConvexification {
    Polynomial h;
    double L = 0.0;
};

inline SmoothConvexification convexify_smooth(const Polynomial& g, const ConvexBody& K,
                                              const GridSpec& grid) {
    if (g.dim() != K.dimension()) throw InputError("convexify_smooth: dimension mismatch");
    const int n = g.dim();
    double rho = 0.0;
    if (g.effective_degree() <= 2) {
        auto parts = quadratic_parts(g);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) parts.M(i, j) *= 2.0;
        auto eig = symm_eig(parts.M);
        rho = std::max(std::abs(eig.d.front()), std::abs(eig.d.back()));
    } else {
        for (const auto& x : sample_grid(K, grid)) {
            auto eig = symm_eig(hessian_at(g, x));
            rho = std::max({rho, std::abs(eig.d.front()), std::abs(eig.d.back())});
        }
    }
    SmoothConvexification out;
    out.L = 0.5 * rho;
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) M(i, i) = out.L;
    out.h = g.with_degree_bound(std::max(g.degree_bound(), 2)) +
            from_quadratic(M, Polynomial::constant(n, 0.0));
    if (hessian_min_eig_on(out.h, K, grid) < -1e-9)
        throw InternalError("convexify_smooth: grid convexity postcondition failed");
    return out;
}

} // namespace cvxpoly
