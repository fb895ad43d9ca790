#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvxpoly/errors.hpp"
#include "cvxpoly/geometry.hpp"
#include "cvxpoly/polynomials.hpp"
#include "cvxpoly/simplex_lp.hpp"
#include "cvxpoly/smoothness.hpp"

namespace cvxpoly {

// Best-approximation data on a grid: the minimax polynomial, the achieved
// grid error, the near-active points and the signed dual weights living on
// them (|w| sums to 1, sign matches the residual, and sum_i w_i s(x_i) = 0
// for every basis polynomial s).
struct ApproxSolution {
    Polynomial polynomial;
    double error = 0.0;
    std::vector<Point> active_points;
    Vec dual_weights;
};

namespace detail {

inline Matrix basis_values(const Basis& basis, const std::vector<Point>& pts) {
    const int N = basis.size();
    const int P = static_cast<int>(pts.size());
    const int n = basis.dim(), m = basis.degree_bound();
    Matrix phi(P, N);
    std::vector<double> pows(static_cast<std::size_t>(n) * (m + 1));
    for (int i = 0; i < P; ++i) {
        for (int a = 0; a < n; ++a) {
            pows[a * (m + 1)] = 1.0;
            for (int k = 1; k <= m; ++k) pows[a * (m + 1) + k] = pows[a * (m + 1) + k - 1] * pts[i][a];
        }
        for (int j = 0; j < N; ++j) {
            double t = 1.0;
            const auto& e = basis.indices()[j].exponents;
            for (int a = 0; a < n; ++a)
                if (e[a]) t *= pows[a * (m + 1) + e[a]];
            phi(i, j) = t;
        }
    }
    return phi;
}

inline int column_rank(Matrix A, double tol_rel = 1e-10) {
    const int P = A.rows(), N = A.cols();
    double scale = std::max(A.max_abs(), 1e-300);
    int rank = 0;
    for (int c = 0; c < N && rank < P; ++c) {
        int p = rank;
        for (int i = rank + 1; i < P; ++i)
            if (std::abs(A(i, c)) > std::abs(A(p, c))) p = i;
        if (std::abs(A(p, c)) < tol_rel * scale) continue;
        if (p != rank)
            for (int j = 0; j < N; ++j) std::swap(A(rank, j), A(p, j));
        for (int i = 0; i < P; ++i) {
            if (i == rank) continue;
            const double f = A(i, c) / A(rank, c);
            if (f == 0.0) continue;
            for (int j = c; j < N; ++j) A(i, j) -= f * A(rank, j);
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

// Discretized Chebyshev problem min_c max_i |f(x_i) - sum_j c_j phi_j(x_i)|,
// solved through its LP dual (columns (+-phi_i, 1), costs +-f_i, right-hand
// side e_{N+1}); the primal coefficients are the optimal simplex multipliers.
// The reported error is the recomputed grid residual maximum, a lower bound
// of the continuum E_m that grows under grid refinement.
inline ApproxSolution best_uniform(const ScalarField& f, const ConvexBody& K, int m,
                                   const GridSpec& grid) {
    if (m < 0) throw InputError("best_uniform: m must be >= 0");
    if (f.dim != K.dimension()) throw InputError("best_uniform: dimension mismatch");
    const auto pts = sample_grid(K, grid);
    const int P = static_cast<int>(pts.size());
    auto basis = Basis::get(K.dimension(), m);
    const int N = basis->size();
    if (P < N + 1)
        throw DegenerateGridError("best_uniform: grid must yield at least C(n+m,n)+1 points");
    Matrix phi = detail::basis_values(*basis, pts);
    if (detail::column_rank(phi) < N)
        throw DegenerateGridError("best_uniform: basis is rank-deficient on this grid");

    Vec fv(P);
    for (int i = 0; i < P; ++i) fv[i] = f(pts[i]);

    const int R = N + 1;
    Matrix A(R, 2 * P);
    Vec b(R, 0.0), cost(2 * P);
    b[N] = 1.0;
    for (int i = 0; i < P; ++i) {
        for (int j = 0; j < N; ++j) {
            A(j, i) = phi(i, j);
            A(j, P + i) = -phi(i, j);
        }
        A(N, i) = 1.0;
        A(N, P + i) = 1.0;
        cost[i] = fv[i];
        cost[P + i] = -fv[i];
    }
    LpResult lp = solve_lp(std::move(A), std::move(b), std::move(cost));
    if (lp.status != LpStatus::Optimal)
        throw InternalError("best_uniform: LP did not reach an optimum");

    ApproxSolution sol;
    sol.polynomial = Polynomial(K.dimension(), m);
    for (int j = 0; j < N; ++j) sol.polynomial.coefficients()[j] = lp.row_multipliers[j];

    Vec resid(P);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < P; ++i) {
        resid[i] = fv[i] - sol.polynomial.eval(pts[i]);
        err = std::max(err, std::abs(resid[i]));
        scale = std::max(scale, std::abs(fv[i]));
    }
    if (std::abs(err - lp.objective) > 1e-6 * (1.0 + scale))
        throw InternalError("best_uniform: residual maximum disagrees with LP optimum");
    sol.error = err;

    double wsum = 0.0;
    for (int i = 0; i < P; ++i) wsum += std::abs(lp.x[i] - lp.x[P + i]);
    for (int i = 0; i < P; ++i) {
        if (std::abs(resid[i]) >= err - 1e-7) {
            sol.active_points.push_back(pts[i]);
            const double w = lp.x[i] - lp.x[P + i];
            sol.dual_weights.push_back(wsum > 0 ? w / wsum : 0.0);
        }
    }
    return sol;
}

// Certificate of optimality in the style of the finite-point sufficient
// condition: positive multipliers (normalized to sum 1) making the signed
// residuals orthogonal to the whole polynomial space on the given points.
struct Certificate {
    std::vector<Point> points;
    Vec multipliers;
    std::vector<int> residual_signs;
    double orthogonality_residual = 0.0;
};

// Checks |f - R| attains the grid sup at every point (precondition), then
// searches positive multipliers with the orthogonality property over
// P_{m,n}. Returns nullopt when no strictly positive multipliers exist; that
// certifies nothing (it does not disprove optimality).
inline std::optional<Certificate> verify_certificate(const ScalarField& f, const Polynomial& R,
                                                     const ConvexBody& K,
                                                     const std::vector<Point>& points, int m,
                                                     const GridSpec& grid, double tol = 1e-9) {
    if (points.empty()) throw InputError("verify_certificate: no points");
    const auto pts = sample_grid(K, grid);
    double sup = 0.0;
    for (const auto& x : pts) sup = std::max(sup, std::abs(f(x) - R.eval(x)));
    const int r = static_cast<int>(points.size());
    Vec resid(r);
    for (int i = 0; i < r; ++i) {
        resid[i] = f(points[i]) - R.eval(points[i]);
        if (std::abs(std::abs(resid[i]) - sup) > tol)
            throw PreconditionError("verify_certificate: point does not attain the residual sup");
    }
    auto basis = Basis::get(K.dimension(), m);
    const int N = basis->size();
    Matrix phi = detail::basis_values(*basis, points);

    // max eps s.t. sum_i (eps + u_i) resid_i phi_k(x_i) = 0, sum (eps+u_i) = 1,
    // u >= 0, eps >= 0; strict feasibility iff eps* > 0.
    const int R_rows = N + 1;
    Matrix A(R_rows, r + 1);
    Vec b(R_rows, 0.0), cost(r + 1, 0.0);
    for (int k = 0; k < N; ++k) {
        double eps_coef = 0.0;
        for (int i = 0; i < r; ++i) {
            A(k, i) = resid[i] * phi(i, k);
            eps_coef += resid[i] * phi(i, k);
        }
        A(k, r) = eps_coef;
    }
    for (int i = 0; i < r; ++i) A(N, i) = 1.0;
    A(N, r) = r;
    b[N] = 1.0;
    cost[r] = 1.0;
    LpResult lp = solve_lp(std::move(A), std::move(b), std::move(cost));
    if (lp.status != LpStatus::Optimal || lp.objective <= 1e-9) return std::nullopt;

    Certificate cert;
    cert.points = points;
    cert.multipliers.resize(r);
    cert.residual_signs.resize(r);
    for (int i = 0; i < r; ++i) {
        cert.multipliers[i] = lp.x[i] + lp.objective;
        cert.residual_signs[i] = resid[i] >= 0 ? 1 : -1;
    }
    double worst = 0.0;
    for (int k = 0; k < N; ++k) {
        double s = 0.0;
        for (int i = 0; i < r; ++i) s += cert.multipliers[i] * resid[i] * phi(i, k);
        worst = std::max(worst, std::abs(s));
    }
    cert.orthogonality_residual = worst;
    return cert;
}

// Two-sided barycentric certificate for m = 1: weights a on the positive
// residual points and b on the negative ones, each summing to 1, with matching
// barycenters and value (sum a f(x) - sum b f(y))/2 equal to the error.
struct E1Certificate {
    bool ok = false;
    std::vector<Point> x, y;
    Vec a, b;
    std::vector<Point> raw_points;  // active points with nonzero duals
    Vec raw_weights;
    std::string message;
};

namespace detail {

// Carathéodory reduction: drops support points of the combined system
// (sum a = 1, sum b = 1, barycenters equal) until at most n + 2 remain.
inline bool caratheodory_prune(std::vector<Point>& xs, Vec& a, std::vector<Point>& ys, Vec& b,
                               int n) {
    auto support = [&] { return xs.size() + ys.size(); };
    int guard = 0;
    while (support() > static_cast<std::size_t>(n + 2)) {
        if (++guard > 64) return false;
        const int l = static_cast<int>(xs.size()), mm = static_cast<int>(ys.size());
        const int cols = l + mm, rows = n + 2;
        Matrix M(rows, cols);
        for (int i = 0; i < l; ++i) {
            M(0, i) = 1.0;
            for (int k = 0; k < n; ++k) M(2 + k, i) = xs[i][k];
        }
        for (int j = 0; j < mm; ++j) {
            M(1, l + j) = 1.0;
            for (int k = 0; k < n; ++k) M(2 + k, l + j) = -ys[j][k];
        }
        // Null vector by elimination.
        std::vector<int> pivot_of_row(rows, -1);
        Matrix E = M;
        int rank = 0;
        std::vector<char> pivot_col(cols, 0);
        for (int c = 0; c < cols && rank < rows; ++c) {
            int p = rank;
            for (int i = rank + 1; i < rows; ++i)
                if (std::abs(E(i, c)) > std::abs(E(p, c))) p = i;
            if (std::abs(E(p, c)) < 1e-11) continue;
            if (p != rank)
                for (int j = 0; j < cols; ++j) std::swap(E(rank, j), E(p, j));
            for (int i = 0; i < rows; ++i) {
                if (i == rank) continue;
                const double fct = E(i, c) / E(rank, c);
                for (int j = 0; j < cols; ++j) E(i, j) -= fct * E(rank, j);
            }
            pivot_of_row[rank] = c;
            pivot_col[c] = 1;
            ++rank;
        }
        int free_col = -1;
        for (int c = 0; c < cols; ++c)
            if (!pivot_col[c]) {
                free_col = c;
                break;
            }
        if (free_col < 0) return false;
        Vec nu(cols, 0.0);
        nu[free_col] = 1.0;
        for (int i = 0; i < rank; ++i) {
            const int c = pivot_of_row[i];
            nu[c] = -E(i, free_col) / E(i, c);
        }
        Vec w(cols);
        for (int i = 0; i < l; ++i) w[i] = a[i];
        for (int j = 0; j < mm; ++j) w[l + j] = b[j];
        double theta = 1e300;
        for (int c = 0; c < cols; ++c)
            if (nu[c] > 1e-14) theta = std::min(theta, w[c] / nu[c]);
        if (theta >= 1e300) {
            for (double& v : nu) v = -v;
            theta = 1e300;
            for (int c = 0; c < cols; ++c)
                if (nu[c] > 1e-14) theta = std::min(theta, w[c] / nu[c]);
            if (theta >= 1e300) return false;
        }
        std::vector<Point> nxs, nys;
        Vec na, nb;
        for (int c = 0; c < cols; ++c) {
            const double v = w[c] - theta * nu[c];
            if (v <= 1e-12) continue;
            if (c < l) {
                nxs.push_back(xs[c]);
                na.push_back(v);
            } else {
                nys.push_back(ys[c - l]);
                nb.push_back(v);
            }
        }
        if (nxs.empty() || nys.empty()) return false;
        if (nxs.size() + nys.size() >= xs.size() + ys.size()) return false;
        xs = std::move(nxs);
        a = std::move(na);
        ys = std::move(nys);
        b = std::move(nb);
    }
    return true;
}

} // namespace detail

inline E1Certificate e1_dual_certificate(const ApproxSolution& sol, const ScalarField& f,
                                         const ConvexBody& K) {
    if (sol.polynomial.degree_bound() != 1)
        throw InputError("e1_dual_certificate: solution must be for m = 1");
    const int n = K.dimension();
    E1Certificate cert;
    for (std::size_t i = 0; i < sol.active_points.size(); ++i)
        if (sol.dual_weights[i] != 0.0) {
            cert.raw_points.push_back(sol.active_points[i]);
            cert.raw_weights.push_back(sol.dual_weights[i]);
        }
    double scale = 1.0;
    for (const auto& p : sol.active_points) scale = std::max(scale, std::abs(f(p)));
    if (sol.error <= 1e-12 * scale) {
        const Point& p0 = sol.active_points.empty() ? Point(n, 0.0) : sol.active_points.front();
        cert.ok = true;
        cert.x = {p0};
        cert.y = {p0};
        cert.a = {1.0};
        cert.b = {1.0};
        return cert;
    }
    std::vector<Point> xs, ys;
    Vec a, b;
    double sp = 0.0, sn = 0.0;
    for (std::size_t i = 0; i < cert.raw_points.size(); ++i) {
        const double w = cert.raw_weights[i];
        if (w > 0) {
            xs.push_back(cert.raw_points[i]);
            a.push_back(w);
            sp += w;
        } else {
            ys.push_back(cert.raw_points[i]);
            b.push_back(-w);
            sn += -w;
        }
    }
    if (xs.empty() || ys.empty() || std::abs(sp - 0.5) > 1e-6 || std::abs(sn - 0.5) > 1e-6) {
        cert.message = "dual weights do not split into half/half groups";
        return cert;
    }
    for (double& v : a) v /= sp;
    for (double& v : b) v /= sn;
    if (!detail::caratheodory_prune(xs, a, ys, b, n)) {
        cert.message = "caratheodory pruning failed (rank-degenerate duals)";
        return cert;
    }
    double sa = 0.0, sb = 0.0;
    Vec bary_a(n, 0.0), bary_b(n, 0.0);
    double va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sa += a[i];
        va += a[i] * f(xs[i]);
        for (int k = 0; k < n; ++k) bary_a[k] += a[i] * xs[i][k];
    }
    for (std::size_t j = 0; j < ys.size(); ++j) {
        sb += b[j];
        vb += b[j] * f(ys[j]);
        for (int k = 0; k < n; ++k) bary_b[k] += b[j] * ys[j][k];
    }
    if (std::abs(sa - 1.0) > 1e-8 || std::abs(sb - 1.0) > 1e-8 ||
        norm2(bary_a - bary_b) > 1e-6 || std::abs(0.5 * (va - vb) - sol.error) > 1e-6) {
        cert.message = "pruned certificate failed verification";
        return cert;
    }
    cert.ok = true;
    cert.x = std::move(xs);
    cert.y = std::move(ys);
    cert.a = std::move(a);
    cert.b = std::move(b);
    return cert;
}

namespace detail {

// Upper concave envelope of the grid values at barycenter z:
// max sum y_i f_i s.t. sum y_i x_i = z, sum y_i = 1, y >= 0. Returns the value
// and the supporting tuple (points with y_i > 0, at most n+1 of them).
struct EnvelopeResult {
    bool feasible = false;
    double value = 0.0;
    std::vector<int> support;
    Vec weights;
};

inline EnvelopeResult concave_envelope_at(const std::vector<Point>& pts, const Vec& fv,
                                          std::span<const double> z) {
    const int P = static_cast<int>(pts.size());
    const int n = static_cast<int>(z.size());
    Matrix A(n + 1, P);
    Vec b(n + 1), cost(P);
    for (int i = 0; i < P; ++i) {
        for (int k = 0; k < n; ++k) A(k, i) = pts[i][k];
        A(n, i) = 1.0;
        cost[i] = fv[i];
    }
    for (int k = 0; k < n; ++k) b[k] = z[k];
    b[n] = 1.0;
    LpResult lp = solve_lp(std::move(A), std::move(b), std::move(cost));
    EnvelopeResult out;
    if (lp.status != LpStatus::Optimal) return out;
    out.feasible = true;
    out.value = lp.objective;
    for (int i = 0; i < P; ++i)
        if (lp.x[i] > 1e-12) {
            out.support.push_back(i);
            out.weights.push_back(lp.x[i]);
        }
    return out;
}

} // namespace detail

// E_1 of a convex function as half the maximal Jensen gap
// sum a_i f(x_i) - f(sum a_i x_i). The lattice stage maximizes the gap exactly
// over all grid-point tuples for a spread of barycenters (the gap is concave
// in the barycenter, so a coarse sweep plus local search suffices); compass
// refinement then moves the tuple points and weights continuously. Returns a
// lower bound of E_1(f;K).
inline double e1_convex(const ScalarField& f, const ConvexBody& K, const GridSpec& search) {
    if (!f.declared_convex) throw PreconditionError("e1_convex: field is not declared convex");
    if (!midpoint_convexity_ok(f, K, GridSpec(std::min(search.resolution, 9))))
        throw PreconditionError("e1_convex: convexity spot-check failed");
    const int n = K.dimension();
    const auto pts = sample_grid(K, search);
    const int P = static_cast<int>(pts.size());
    Vec fv(P);
    for (int i = 0; i < P; ++i) fv[i] = f(pts[i]);

    const int target_z = 300;
    const int stride = std::max(1, (P + target_z - 1) / target_z);
    double best_gap = 0.0;
    detail::EnvelopeResult best_env;
    Point best_z;
    for (int i = 0; i < P; i += stride) {
        auto env = detail::concave_envelope_at(pts, fv, pts[i]);
        if (!env.feasible) continue;
        const double gap = env.value - fv[i];
        if (gap > best_gap) {
            best_gap = gap;
            best_env = env;
            best_z = pts[i];
        }
    }
    if (!best_env.feasible) {
        // Flat function or degenerate sweep; the gap is zero.
        return 0.0;
    }

    // Local search on the barycenter, re-solving the envelope at each probe.
    {
        double step = 0.0;
        auto [lo, hi] = K.bounding_box();
        for (int k = 0; k < n; ++k) step = std::max(step, (hi[k] - lo[k]) / (search.resolution - 1));
        Point z = best_z;
        for (int iter = 0; iter < 60; ++iter) {
            bool moved = false;
            for (int c = 0; c < n; ++c) {
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    Point zz = z;
                    zz[c] += sgn * step;
                    if (!contains(K, zz, 0.0)) continue;
                    auto env = detail::concave_envelope_at(pts, fv, zz);
                    if (!env.feasible) continue;
                    const double gap = env.value - f(zz);
                    if (gap > best_gap + 1e-15) {
                        best_gap = gap;
                        best_env = env;
                        z = zz;
                        best_z = zz;
                        moved = true;
                    }
                }
            }
            if (!moved) {
                step *= 0.5;
                if (step < 1e-6) break;
            }
        }
    }

    // Compass polish of the supporting tuple: points and weights move
    // continuously; the barycenter stays feasible by convexity.
    std::vector<Point> xs;
    Vec w;
    for (std::size_t k = 0; k < best_env.support.size(); ++k) {
        xs.push_back(pts[best_env.support[k]]);
        w.push_back(best_env.weights[k]);
    }
    while (static_cast<int>(xs.size()) < n + 1) {
        xs.push_back(xs.back());
        w.push_back(0.0);
    }
    auto gap_of = [&](const std::vector<Point>& x, const Vec& wt) {
        Point bary(n, 0.0);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += wt[i] * f(x[i]);
            for (int k = 0; k < n; ++k) bary[k] += wt[i] * x[i][k];
        }
        return s - f(bary);
    };
    double cur = gap_of(xs, w);
    double step = 0.0;
    {
        auto [lo, hi] = K.bounding_box();
        for (int k = 0; k < n; ++k) step = std::max(step, (hi[k] - lo[k]) / (search.resolution - 1));
    }
    for (int iter = 0; iter < 200; ++iter) {
        double probe_best = cur;
        int kind = -1, pi = 0, pc = 0, pj = 0;
        double psign = 0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (int c = 0; c < n; ++c)
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    Point saved = xs[i];
                    xs[i][c] += sgn * step;
                    if (contains(K, xs[i], 1e-9)) {
                        const double v = gap_of(xs, w);
                        if (v > probe_best) {
                            probe_best = v;
                            kind = 0;
                            pi = static_cast<int>(i);
                            pc = c;
                            psign = sgn;
                        }
                    }
                    xs[i] = saved;
                }
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j) {
                if (i == j) continue;
                const double delta = std::min(step, w[j]);
                if (delta <= 0) continue;
                w[i] += delta;
                w[j] -= delta;
                const double v = gap_of(xs, w);
                if (v > probe_best) {
                    probe_best = v;
                    kind = 1;
                    pi = static_cast<int>(i);
                    pj = static_cast<int>(j);
                }
                w[i] -= delta;
                w[j] += delta;
            }
        if (kind == 0) {
            xs[pi][pc] += psign * step;
            cur = probe_best;
        } else if (kind == 1) {
            const double delta = std::min(step, w[pj]);
            w[pi] += delta;
            w[pj] -= delta;
            cur = probe_best;
        } else {
            step *= 0.5;
            if (step < 1e-6) break;
        }
    }
    best_gap = std::max(best_gap, cur);
    return 0.5 * best_gap;
}

// Linear approximant built from a supporting functional at the center of a
// symmetric body: p = l + ||f - l||/2 with l supporting f at 0.
struct SymmetricApproxReport {
    Polynomial p;
    double error = 0.0;          // max_grid |f - p|
    double half_g_norm = 0.0;    // ||f - l||_grid / 2
    double omega2 = 0.0;         // modulus(f, K, 2) on the same grid
    double support_correction = 0.0;
    bool halving_ok = false;     // error == half_g_norm
    bool bound_ok = false;       // error <= omega2 / 2 + tol
};

inline SymmetricApproxReport symmetric_linear_approx(const ScalarField& f, const ConvexBody& K,
                                                     const GridSpec& grid, double tol = 1e-6) {
    if (!K.symmetric()) throw PreconditionError("symmetric_linear_approx: body must be symmetric");
    const int n = K.dimension();
    const Vec origin(n, 0.0);
    if (!contains(K, origin, 0.0))
        throw PreconditionError("symmetric_linear_approx: origin must lie in the body");
    if (!midpoint_convexity_ok(f, K, GridSpec(std::min(grid.resolution, 9))))
        throw PreconditionError("symmetric_linear_approx: convexity spot-check failed");

    // Gradient at 0 by central differences; the constant term is then lowered
    // so that l <= f holds on the whole grid.
    const double h = 1e-5;
    Vec g(n);
    Vec xp(n, 0.0), xm(n, 0.0);
    for (int i = 0; i < n; ++i) {
        xp[i] = h;
        xm[i] = -h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
        xp[i] = 0.0;
        xm[i] = 0.0;
    }
    const double f0 = f(origin);
    Polynomial l(n, 1);
    l.set_coeff(std::vector<int>(n, 0), f0);
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        l.set_coeff(e, g[i]);
    }
    const auto pts = sample_grid(K, grid);
    double overshoot = 0.0;
    for (const auto& x : pts) overshoot = std::max(overshoot, l.eval(x) - f(x));
    const double corr = std::max(0.0, overshoot);
    if (corr > 0) l.set_coeff(std::vector<int>(n, 0), f0 - corr);

    double gmax = 0.0;
    for (const auto& x : pts) gmax = std::max(gmax, f(x) - l.eval(x));

    SymmetricApproxReport rep;
    rep.support_correction = corr;
    rep.half_g_norm = 0.5 * gmax;
    rep.p = l;
    rep.p.set_coeff(std::vector<int>(n, 0), l.coeff(std::vector<int>(n, 0)) + 0.5 * gmax);
    double err = 0.0;
    for (const auto& x : pts) err = std::max(err, std::abs(f(x) - rep.p.eval(x)));
    rep.error = err;
    rep.omega2 = modulus(f, K, 2, grid).value;
    rep.halving_ok = std::abs(rep.error - rep.half_g_norm) <= 1e-12 * (1.0 + gmax);
    rep.bound_ok = rep.error <= 0.5 * rep.omega2 + tol;
    return rep;
}

} // namespace cvxpoly
