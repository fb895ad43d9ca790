#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "cvxpoly/errors.hpp"
#include "cvxpoly/geometry.hpp"
#include "cvxpoly/polynomials.hpp"

namespace cvxpoly {

// Evaluation oracle x -> f(x). `declared_convex` is a promise that is
// spot-checked (midpoint inequality) where operations require it, not proven.
struct ScalarField {
    int dim = 0;
    std::function<double(std::span<const double>)> eval;
    bool declared_convex = false;
    std::function<Vec(std::span<const double>)> subgradient;  // optional

    double operator()(std::span<const double> x) const { return eval(x); }
};

inline ScalarField make_field(int dim, std::function<double(std::span<const double>)> f,
                              bool declared_convex = false) {
    return {dim, std::move(f), declared_convex, nullptr};
}

inline ScalarField to_field(const Polynomial& p, bool declared_convex = false) {
    return {p.dim(), [p](std::span<const double> x) { return p.eval(x); }, declared_convex, nullptr};
}

inline std::vector<double> binomial_row(int m) {
    std::vector<double> c(m + 1, 1.0);
    for (int j = 1; j <= m; ++j) c[j] = c[j - 1] * (m - j + 1) / j;
    return c;
}

// m-th forward difference sum_{j=0}^m (-1)^j C(m,j) f(x+jh), accumulated in
// order j = 0..m.
inline double finite_difference(const ScalarField& f, std::span<const double> x,
                                std::span<const double> h, int m) {
    if (m < 1) throw InputError("finite_difference: m must be >= 1");
    if (static_cast<int>(x.size()) != f.dim || h.size() != x.size())
        throw InputError("finite_difference: dimension mismatch");
    const auto binom = binomial_row(m);
    Vec node(x.begin(), x.end());
    double acc = 0.0;
    double sign = 1.0;
    for (int j = 0; j <= m; ++j) {
        if (j > 0)
            for (std::size_t a = 0; a < node.size(); ++a) node[a] = x[a] + j * h[a];
        acc += sign * binom[j] * f(node);
        sign = -sign;
    }
    return acc;
}

// Value of omega_m together with the maximizing pair. All chain nodes satisfy
// x + j h in K within the feasibility tolerance.
struct ModulusWitness {
    double value = 0.0;
    Vec x;
    Vec h;
    int m = 0;
};

struct ModulusOptions {
    // Compass refinement of the best lattice witness. With refine = false the
    // result is exactly the exhaustive maximum over lattice (x, h) pairs,
    // which several identities rely on.
    bool refine = true;
    double refine_step_min = 1e-6;
    int refine_max_iters = 200;
    double feasibility_tol = 1e-9;
};

// max |Delta_h^m(f;x)| over lattice pairs (x, x+h) with every chain node
// inside K, then optional pattern-search refinement. The sweep visits (x, h)
// lexicographically and keeps the first strict maximum, so ties resolve to the
// lexicographically smallest witness. The value is a certified lower bound of
// the continuum modulus.
inline ModulusWitness modulus(const ScalarField& f, const ConvexBody& K, int m,
                              const GridSpec& grid, const ModulusOptions& opts = {}) {
    if (m < 1) throw InputError("modulus: m must be >= 1");
    if (f.dim != K.dimension()) throw InputError("modulus: dimension mismatch");
    const Lattice lat = make_lattice(K, grid);
    if (lat.inside_idx.empty()) throw DegenerateGridError("modulus: no feasible lattice point");
    const int n = lat.dim;
    const auto binom = binomial_row(m);

    std::vector<std::int64_t> strides(n);
    std::int64_t s = 1;
    for (int a = n - 1; a >= 0; --a) {
        strides[a] = s;
        s *= lat.counts[a];
    }
    const std::int64_t total = lat.total();
    std::vector<double> vals(total, std::numeric_limits<double>::quiet_NaN());
    const std::size_t P = lat.inside_idx.size();
    std::vector<int> mix(P * n);  // multi-indices of inside points
    for (std::size_t p = 0; p < P; ++p) {
        std::int64_t flat = lat.inside_idx[p];
        Vec pt = lat.point(flat);
        vals[flat] = f(pt);
        for (int a = n - 1; a >= 0; --a) {
            mix[p * n + a] = static_cast<int>(flat % lat.counts[a]);
            flat /= lat.counts[a];
        }
    }

    double best = -1.0;
    std::size_t best_p = 0;
    std::vector<int> best_d(n, 0);
    std::vector<int> d(n), node(n);
    for (std::size_t pi = 0; pi < P; ++pi) {
        const int* ip = &mix[pi * n];
        const double v0 = vals[lat.inside_idx[pi]];
        for (std::size_t qi = 0; qi < P; ++qi) {
            const int* iq = &mix[qi * n];
            for (int a = 0; a < n; ++a) d[a] = iq[a] - ip[a];
            double acc = binom[0] * v0;
            double sign = -1.0;
            bool ok = true;
            for (int j = 1; j <= m && ok; ++j) {
                std::int64_t flat = 0;
                for (int a = 0; a < n; ++a) {
                    const int c = ip[a] + j * d[a];
                    if (c < 0 || c >= lat.counts[a]) {
                        ok = false;
                        break;
                    }
                    flat += c * strides[a];
                }
                if (!ok) break;
                const double v = vals[flat];
                if (std::isnan(v)) {
                    ok = false;
                    break;
                }
                acc += sign * binom[j] * v;
                sign = -sign;
            }
            if (!ok) continue;
            const double mag = std::abs(acc);
            if (mag > best) {
                best = mag;
                best_p = pi;
                best_d = d;
            }
        }
    }
    if (best < 0) throw DegenerateGridError("modulus: no feasible (x, h) chain");

    ModulusWitness w;
    w.m = m;
    w.x = lat.point(lat.inside_idx[best_p]);
    w.h.assign(n, 0.0);
    {
        const int* ip = &mix[best_p * n];
        for (int a = 0; a < n; ++a) {
            const int qa = ip[a] + best_d[a];
            w.h[a] = lat.coords[a][qa] - lat.coords[a][ip[a]];
        }
    }
    w.value = best;

    if (opts.refine) {
        auto feasible_value = [&](const Vec& x, const Vec& h) {
            Vec node_pt(n);
            for (int j = 0; j <= m; ++j) {
                for (int a = 0; a < n; ++a) node_pt[a] = x[a] + j * h[a];
                if (!contains(K, node_pt, opts.feasibility_tol)) return -1.0;
            }
            return std::abs(finite_difference(f, x, h, m));
        };
        Vec steps(2 * n);
        for (int a = 0; a < n; ++a) {
            const double sp = lat.counts[a] > 1 ? lat.coords[a][1] - lat.coords[a][0] : 1.0;
            steps[a] = steps[n + a] = sp;
        }
        Vec x = w.x, h = w.h;
        double cur = w.value;
        for (int iter = 0; iter < opts.refine_max_iters; ++iter) {
            double best_probe = cur;
            int best_c = -1, best_sign = 0;
            for (int c = 0; c < 2 * n; ++c) {
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    Vec xx = x, hh = h;
                    if (c < n)
                        xx[c] += sgn * steps[c];
                    else
                        hh[c - n] += sgn * steps[c];
                    const double v = feasible_value(xx, hh);
                    if (v > best_probe) {
                        best_probe = v;
                        best_c = c;
                        best_sign = sgn;
                    }
                }
            }
            if (best_c >= 0) {
                if (best_c < n)
                    x[best_c] += best_sign * steps[best_c];
                else
                    h[best_c - n] += best_sign * steps[best_c];
                cur = best_probe;
            } else {
                double mx = 0.0;
                for (double& st : steps) {
                    st *= 0.5;
                    mx = std::max(mx, st);
                }
                if (mx < opts.refine_step_min) break;
            }
        }
        if (cur > w.value) {
            w.value = cur;
            w.x = x;
            w.h = h;
        }
    }
    return w;
}

// Midpoint-inequality spot check on deterministically strided grid pairs.
// Returns true when no sampled pair violates convexity beyond tol.
inline bool midpoint_convexity_ok(const ScalarField& f, const ConvexBody& K, const GridSpec& grid,
                                  double tol = 1e-9, std::size_t max_pairs = 4096) {
    auto pts = sample_grid(K, grid);
    const std::size_t P = pts.size();
    const std::size_t stride = std::max<std::size_t>(1, P * P / std::max<std::size_t>(max_pairs, 1));
    Vec mid(f.dim);
    for (std::size_t k = 0; k < P * P; k += stride) {
        const auto& a = pts[k / P];
        const auto& b = pts[k % P];
        for (int i = 0; i < f.dim; ++i) mid[i] = 0.5 * (a[i] + b[i]);
        if (f(a) + f(b) - 2.0 * f(mid) < -tol) return false;
    }
    return true;
}

} // namespace cvxpoly
