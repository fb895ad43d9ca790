#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cvxpoly/errors.hpp"
#include "cvxpoly/linalg.hpp"
#include "cvxpoly/simplex_lp.hpp"

namespace cvxpoly {

using Point = Vec;

// Lattice descriptor. `resolution` is the point count along the longest
// bounding-box axis; shorter axes get the same spacing (at least 2 points),
// so a resolution-101 grid on [-1,1]x[0,1] is 101x51.
struct GridSpec {
    int resolution = 11;
    bool includes_boundary = true;

    GridSpec() = default;
    GridSpec(int res, bool boundary = true) : resolution(res), includes_boundary(boundary) {
        if (res < 2) throw InputError("GridSpec: resolution must be >= 2");
    }
};

struct AffineMap {
    Matrix matrix;  // invertible when used for positioning
    Vec offset;

    Vec operator()(std::span<const double> x) const {
        Vec y = matrix.apply(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += offset[i];
        return y;
    }

    AffineMap inverse() const {
        Matrix inv = cvxpoly::inverse(matrix);
        Vec b = inv.apply(offset);
        for (double& v : b) v = -v;
        return {inv, b};
    }

    static AffineMap identity(int n) { return {Matrix::identity(n), Vec(n, 0.0)}; }
};

enum class ShapeKind { Ball, Box, Simplex, Polytope };

// Outward half-space a.x <= offset with unit normal a.
struct Facet {
    Vec normal;
    double offset;
};

namespace detail {

// Unit vector orthogonal to the rows of D ((k) x n, k = n-1), via elimination.
inline Vec null_direction(const std::vector<Vec>& rows, int n) {
    Matrix A(static_cast<int>(rows.size()), n);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rows[i][j];
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < A.rows(); ++c) {
        int p = r;
        for (int i = r + 1; i < A.rows(); ++i)
            if (std::abs(A(i, c)) > std::abs(A(p, c))) p = i;
        if (std::abs(A(p, c)) < 1e-12) continue;
        if (p != r)
            for (int j = 0; j < n; ++j) std::swap(A(r, j), A(p, j));
        for (int i = 0; i < A.rows(); ++i) {
            if (i == r) continue;
            const double f = A(i, c) / A(r, c);
            for (int j = 0; j < n; ++j) A(i, j) -= f * A(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r != n - 1) return {};  // rank-deficient: no unique normal
    std::vector<char> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    int free_col = -1;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_col = c;
    Vec v(n, 0.0);
    v[free_col] = 1.0;
    for (int i = r - 1; i >= 0; --i) {
        const int c = pivot_col[i];
        v[c] = -A(i, free_col) / A(i, c);
    }
    const double nm = norm2(v);
    for (double& x : v) x /= nm;
    return v;
}

} // namespace detail

// A compact convex body: ball, axis-aligned box, simplex, or V-representation
// polytope. Validates nonempty interior on construction; facet half-spaces are
// precomputed for simplex/polytope membership and support queries.
class ConvexBody {
  public:
    static ConvexBody ball(Vec center, double radius) {
        if (radius <= 0) throw InputError("ball: radius must be positive");
        ConvexBody b;
        b.dim_ = static_cast<int>(center.size());
        if (b.dim_ < 1) throw InputError("ball: dimension must be positive");
        b.kind_ = ShapeKind::Ball;
        b.center_ = std::move(center);
        b.radius_ = radius;
        b.symmetric_ = norm2(b.center_) <= 1e-12;
        return b;
    }

    static ConvexBody box(Vec lower, Vec upper) {
        if (lower.size() != upper.size() || lower.empty())
            throw InputError("box: lower/upper dimension mismatch");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] < upper[i])) throw InputError("box: requires lower < upper componentwise");
        ConvexBody b;
        b.dim_ = static_cast<int>(lower.size());
        b.kind_ = ShapeKind::Box;
        b.lower_ = std::move(lower);
        b.upper_ = std::move(upper);
        b.symmetric_ = true;
        for (int i = 0; i < b.dim_; ++i)
            if (std::abs(b.lower_[i] + b.upper_[i]) > 1e-12) b.symmetric_ = false;
        return b;
    }

    static ConvexBody simplex(std::vector<Vec> vertices) {
        if (vertices.empty()) throw InputError("simplex: no vertices");
        const int n = static_cast<int>(vertices[0].size());
        if (static_cast<int>(vertices.size()) != n + 1)
            throw InputError("simplex: needs n+1 vertices in dimension n");
        Matrix E(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) E(j, i) = vertices[i + 1][j] - vertices[0][j];
        double scale = 0.0;
        for (const auto& v : vertices)
            for (double x : v) scale = std::max(scale, std::abs(x));
        scale = std::max(scale, 1.0);
        double det = determinant(E);
        if (std::abs(det) < 1e-10 * std::pow(scale, n))
            throw InputError("simplex: vertices are affinely dependent");
        ConvexBody b;
        b.dim_ = n;
        b.kind_ = ShapeKind::Simplex;
        b.vertices_ = std::move(vertices);
        b.build_simplex_facets();
        b.symmetric_ = b.vertex_set_symmetric();
        return b;
    }

    static ConvexBody polytope(std::vector<Vec> vertices) {
        if (vertices.empty()) throw InputError("polytope: no vertices");
        const int n = static_cast<int>(vertices[0].size());
        for (const auto& v : vertices)
            if (static_cast<int>(v.size()) != n) throw InputError("polytope: mixed vertex dimensions");
        ConvexBody b;
        b.dim_ = n;
        b.kind_ = ShapeKind::Polytope;
        b.vertices_ = std::move(vertices);
        b.dedupe_vertices();
        b.build_polytope_facets();
        if (b.facets_.empty()) throw InputError("polytope: empty interior (no facets found)");
        b.symmetric_ = b.vertex_set_symmetric();
        return b;
    }

    int dimension() const { return dim_; }
    ShapeKind kind() const { return kind_; }
    bool symmetric() const { return symmetric_; }

    const Vec& ball_center() const { return center_; }
    double ball_radius() const { return radius_; }
    const Vec& box_lower() const { return lower_; }
    const Vec& box_upper() const { return upper_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    std::pair<Vec, Vec> bounding_box() const {
        switch (kind_) {
            case ShapeKind::Ball: {
                Vec lo = center_, hi = center_;
                for (int i = 0; i < dim_; ++i) {
                    lo[i] -= radius_;
                    hi[i] += radius_;
                }
                return {lo, hi};
            }
            case ShapeKind::Box:
                return {lower_, upper_};
            default: {
                Vec lo = vertices_[0], hi = vertices_[0];
                for (const auto& v : vertices_)
                    for (int i = 0; i < dim_; ++i) {
                        lo[i] = std::min(lo[i], v[i]);
                        hi[i] = std::max(hi[i], v[i]);
                    }
                return {lo, hi};
            }
        }
    }

    // sup_{x in K} u.x  (u need not be unit)
    double support(std::span<const double> u) const {
        switch (kind_) {
            case ShapeKind::Ball:
                return dot(center_, u) + radius_ * norm2(u);
            case ShapeKind::Box: {
                double s = 0.0;
                for (int i = 0; i < dim_; ++i) s += u[i] > 0 ? u[i] * upper_[i] : u[i] * lower_[i];
                return s;
            }
            default: {
                double best = -1e300;
                for (const auto& v : vertices_) best = std::max(best, dot(v, u));
                return best;
            }
        }
    }

    double coordinate_scale() const {
        auto [lo, hi] = bounding_box();
        double s = 1.0;
        for (int i = 0; i < dim_; ++i) s = std::max({s, std::abs(lo[i]), std::abs(hi[i])});
        return s;
    }

  private:
    void dedupe_vertices() {
        std::vector<Vec> uniq;
        for (const auto& v : vertices_) {
            bool dup = false;
            for (const auto& u : uniq)
                if (norm2(u - v) <= 1e-12) {
                    dup = true;
                    break;
                }
            if (!dup) uniq.push_back(v);
        }
        vertices_ = std::move(uniq);
    }

    bool vertex_set_symmetric() const {
        if (kind_ == ShapeKind::Ball) return norm2(center_) <= 1e-12;
        for (const auto& v : vertices_) {
            bool found = false;
            for (const auto& u : vertices_) {
                double d = 0.0;
                for (int i = 0; i < dim_; ++i) d += (u[i] + v[i]) * (u[i] + v[i]);
                if (std::sqrt(d) <= 1e-12) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

    void build_simplex_facets() {
        const int n = dim_;
        facets_.clear();
        for (int k = 0; k < n + 1; ++k) {
            std::vector<Vec> on_face;
            for (int i = 0; i < n + 1; ++i)
                if (i != k) on_face.push_back(vertices_[i]);
            std::vector<Vec> edges;
            for (std::size_t i = 1; i < on_face.size(); ++i) edges.push_back(on_face[i] - on_face[0]);
            Vec nrm = n == 1 ? Vec{1.0} : detail::null_direction(edges, n);
            if (nrm.empty()) throw InternalError("simplex facet: degenerate face");
            double off = dot(nrm, on_face[0]);
            if (dot(nrm, vertices_[k]) > off) {
                for (double& x : nrm) x = -x;
                off = -off;
            }
            facets_.push_back({std::move(nrm), off});
        }
    }

    void build_polytope_facets() {
        const int n = dim_;
        const int V = static_cast<int>(vertices_.size());
        if (V < n + 1) return;
        const double scale = coordinate_scale();
        const double side_tol = 1e-9 * scale;
        std::vector<int> idx(n);
        std::vector<char> pick(V, 0);
        // Enumerate n-subsets; keep hyperplanes with all vertices on one side.
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == n) {
                std::vector<Vec> edges;
                for (int i = 1; i < n; ++i) edges.push_back(vertices_[idx[i]] - vertices_[idx[0]]);
                Vec nrm = n == 1 ? Vec{1.0} : detail::null_direction(edges, n);
                if (nrm.empty()) return;
                double off = dot(nrm, vertices_[idx[0]]);
                int above = 0, below = 0;
                for (const auto& v : vertices_) {
                    const double d = dot(nrm, v) - off;
                    if (d > side_tol) ++above;
                    if (d < -side_tol) ++below;
                }
                if (above > 0 && below > 0) return;
                if (above > 0) {
                    for (double& x : nrm) x = -x;
                    off = -off;
                }
                for (const auto& f : facets_)
                    if (std::abs(f.offset - off) <= 1e-9 * (1 + std::abs(off)) &&
                        norm2(f.normal - nrm) <= 1e-9)
                        return;
                facets_.push_back({std::move(nrm), off});
                return;
            }
            for (int i = start; i <= V - (n - depth); ++i) {
                idx[depth] = i;
                rec(i + 1, depth + 1);
            }
        };
        rec(0, 0);
    }

    int dim_ = 0;
    ShapeKind kind_ = ShapeKind::Box;
    bool symmetric_ = false;
    Vec center_;
    double radius_ = 0.0;
    Vec lower_, upper_;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
};

// Membership in K inflated by `tol` (Euclidean). Exact for Ball/Box; half-space
// tests with a 1e-12-scale snap for Simplex/Polytope so honest boundary lattice
// points survive tol = 0.
inline bool contains(const ConvexBody& body, std::span<const double> x, double tol = 0.0) {
    if (static_cast<int>(x.size()) != body.dimension())
        throw InputError("contains: point dimension mismatch");
    if (tol < 0) throw InputError("contains: tol must be nonnegative");
    switch (body.kind()) {
        case ShapeKind::Ball: {
            Vec d(x.begin(), x.end());
            for (int i = 0; i < body.dimension(); ++i) d[i] -= body.ball_center()[i];
            return norm2(d) <= body.ball_radius() + tol;
        }
        case ShapeKind::Box: {
            for (int i = 0; i < body.dimension(); ++i)
                if (x[i] < body.box_lower()[i] - tol || x[i] > body.box_upper()[i] + tol) return false;
            return true;
        }
        default: {
            const double snap = 1e-12 * body.coordinate_scale();
            for (const auto& f : body.facets())
                if (dot(f.normal, x) - f.offset > tol + snap) return false;
            return true;
        }
    }
}

// Barycentric coordinates of x w.r.t. a simplex (n+1 values summing to 1).
inline Vec barycentric_coordinates(const ConvexBody& simplex, std::span<const double> x) {
    if (simplex.kind() != ShapeKind::Simplex) throw InputError("barycentric: simplex required");
    const int n = simplex.dimension();
    Matrix E(n, n);
    Vec rhs(n);
    const auto& v = simplex.vertices();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) E(i, j) = v[j + 1][i] - v[0][i];
    }
    for (int i = 0; i < n; ++i) rhs[i] = x[i] - v[0][i];
    Vec mu = solve(E, rhs);
    Vec lambda(n + 1);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += mu[i];
    lambda[0] = 1.0 - s;
    for (int i = 0; i < n; ++i) lambda[i + 1] = mu[i];
    return lambda;
}

// Axis-aligned lattice over the bounding box with the inside mask; the flat
// index runs lexicographically (first axis slowest).
struct Lattice {
    int dim = 0;
    std::vector<int> counts;               // points per axis
    std::vector<Vec> coords;               // coords[axis][k]
    std::vector<char> inside;              // size = prod(counts)
    std::vector<std::int64_t> inside_idx;  // flat indices of interior points, ascending

    std::int64_t total() const {
        std::int64_t t = 1;
        for (int c : counts) t *= c;
        return t;
    }

    Vec point(std::int64_t flat) const {
        Vec p(dim);
        for (int a = dim - 1; a >= 0; --a) {
            p[a] = coords[a][flat % counts[a]];
            flat /= counts[a];
        }
        return p;
    }
};

inline Lattice make_lattice(const ConvexBody& body, const GridSpec& grid) {
    const int n = body.dimension();
    auto [lo, hi] = body.bounding_box();
    double longest = 0.0;
    for (int i = 0; i < n; ++i) longest = std::max(longest, hi[i] - lo[i]);
    Lattice lat;
    lat.dim = n;
    lat.counts.resize(n);
    lat.coords.resize(n);
    for (int a = 0; a < n; ++a) {
        const double span = hi[a] - lo[a];
        int cnt = std::max(2, static_cast<int>(std::lround((grid.resolution - 1) * span / longest)) + 1);
        lat.counts[a] = cnt;
        lat.coords[a].resize(cnt);
        if (grid.includes_boundary) {
            const double step = span / (cnt - 1);
            for (int k = 0; k < cnt; ++k)
                lat.coords[a][k] = (k == cnt - 1) ? hi[a] : lo[a] + k * step;
        } else {
            const double step = span / (cnt + 1);
            for (int k = 0; k < cnt; ++k) lat.coords[a][k] = lo[a] + (k + 1) * step;
        }
    }
    const std::int64_t total = lat.total();
    lat.inside.assign(total, 0);
    Vec p(n);
    std::vector<int> ix(n, 0);
    for (std::int64_t flat = 0; flat < total; ++flat) {
        for (int a = 0; a < n; ++a) p[a] = lat.coords[a][ix[a]];
        if (contains(body, p, 0.0)) {
            lat.inside[flat] = 1;
            lat.inside_idx.push_back(flat);
        }
        for (int a = n - 1; a >= 0; --a) {
            if (++ix[a] < lat.counts[a]) break;
            ix[a] = 0;
        }
    }
    return lat;
}

// All lattice points inside K, in lexicographic order. Throws if none landed
// inside.
inline std::vector<Point> sample_grid(const ConvexBody& body, const GridSpec& grid) {
    Lattice lat = make_lattice(body, grid);
    if (lat.inside_idx.empty())
        throw DegenerateGridError("sample_grid: no lattice point lies in the body");
    std::vector<Point> pts;
    pts.reserve(lat.inside_idx.size());
    for (auto flat : lat.inside_idx) pts.push_back(lat.point(flat));
    return pts;
}

// Affine image of a body. Balls require an isotropic matrix; boxes stay boxes
// under diagonal maps and become polytopes otherwise.
inline ConvexBody transform(const AffineMap& map, const ConvexBody& body) {
    const int n = body.dimension();
    switch (body.kind()) {
        case ShapeKind::Ball: {
            Matrix g = map.matrix.transposed() * map.matrix;
            const double s2 = g(0, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double want = i == j ? s2 : 0.0;
                    if (std::abs(g(i, j) - want) > 1e-9 * std::max(1.0, s2))
                        throw InputError("transform: non-isotropic map applied to a ball");
                }
            return ConvexBody::ball(map(body.ball_center()), std::sqrt(s2) * body.ball_radius());
        }
        case ShapeKind::Box: {
            bool diagonal = true;
            for (int i = 0; i < n && diagonal; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j && std::abs(map.matrix(i, j)) > 1e-12) {
                        diagonal = false;
                        break;
                    }
            if (diagonal) {
                Vec lo = map(body.box_lower()), hi = map(body.box_upper());
                for (int i = 0; i < n; ++i)
                    if (lo[i] > hi[i]) std::swap(lo[i], hi[i]);
                return ConvexBody::box(std::move(lo), std::move(hi));
            }
            std::vector<Vec> verts;
            for (std::int64_t mask = 0; mask < (std::int64_t{1} << n); ++mask) {
                Vec v(n);
                for (int i = 0; i < n; ++i)
                    v[i] = (mask >> i) & 1 ? body.box_upper()[i] : body.box_lower()[i];
                verts.push_back(map(v));
            }
            return ConvexBody::polytope(std::move(verts));
        }
        case ShapeKind::Simplex: {
            std::vector<Vec> verts;
            for (const auto& v : body.vertices()) verts.push_back(map(v));
            return ConvexBody::simplex(std::move(verts));
        }
        default: {
            std::vector<Vec> verts;
            for (const auto& v : body.vertices()) verts.push_back(map(v));
            return ConvexBody::polytope(std::move(verts));
        }
    }
}

namespace detail {

// Chebyshev center of an H-polytope: maximize r s.t. a_i.c + r <= b_i.
// Variables c = c+ - c-, r; slack per facet.
inline std::pair<Vec, double> chebyshev_center(const std::vector<Facet>& facets, int n) {
    const int F = static_cast<int>(facets.size());
    Matrix A(F, 2 * n + 1 + F);
    Vec b(F), c(2 * n + 1 + F, 0.0);
    for (int i = 0; i < F; ++i) {
        for (int j = 0; j < n; ++j) {
            A(i, j) = facets[i].normal[j];
            A(i, n + j) = -facets[i].normal[j];
        }
        A(i, 2 * n) = 1.0;
        A(i, 2 * n + 1 + i) = 1.0;
        b[i] = facets[i].offset;
    }
    c[2 * n] = 1.0;
    LpResult res = solve_lp(std::move(A), std::move(b), std::move(c));
    if (res.status != LpStatus::Optimal)
        throw DegeneracyError("chebyshev_center: LP failed (degenerate body)");
    Vec center(n);
    for (int j = 0; j < n; ++j) center[j] = res.x[j] - res.x[n + j];
    return {center, res.objective};
}

// Maximum-volume inscribed ellipsoid {c + L u : |u| <= 1} by coordinate ascent
// on log det L plus the best feasible rescale, starting from the Chebyshev
// ball. L is lower triangular with positive diagonal. Good enough for the
// desk-scale zoo; the resulting sandwich factor is an upper bound of d(K).
struct InscribedEllipsoid {
    Vec center;
    Matrix L;
};

inline InscribedEllipsoid max_inscribed_ellipsoid(const std::vector<Facet>& facets, int n,
                                                  Vec start_center, double start_radius,
                                                  bool pin_center) {
    const int F = static_cast<int>(facets.size());
    Matrix L = Matrix::identity(n);
    for (int i = 0; i < n; ++i) L(i, i) = start_radius;
    Vec c = std::move(start_center);

    auto min_ratio = [&](const Matrix& Lm, const Vec& cm) {
        double s = 1e300;
        for (int i = 0; i < F; ++i) {
            const double slack = facets[i].offset - dot(facets[i].normal, cm);
            if (slack <= 0) return -1.0;
            Vec lta(n, 0.0);
            for (int r = 0; r < n; ++r) {
                double v = 0.0;
                for (int q = 0; q < n; ++q) v += Lm(q, r) * facets[i].normal[q];
                lta[r] = v;
            }
            const double nm = norm2(lta);
            s = std::min(s, nm > 0 ? slack / nm : 1e300);
        }
        return s;
    };
    auto potential = [&](const Matrix& Lm, const Vec& cm) {
        double logdet = 0.0;
        for (int i = 0; i < n; ++i) {
            if (Lm(i, i) <= 0) return -1e300;
            logdet += std::log(Lm(i, i));
        }
        const double s = min_ratio(Lm, cm);
        if (s <= 0) return -1e300;
        return logdet + n * std::log(s);
    };

    double cur = potential(L, c);
    const int max_sweeps = 120;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const double before = cur;
        auto line_search = [&](auto&& get, auto&& set) {
            const double t0 = get();
            double d = std::max(0.25 * start_radius, 1e-8);
            for (int shrink = 0; shrink < 40; ++shrink) {
                double lo = t0 - d, hi = t0 + d;
                // golden-section on [lo, hi]
                const double gr = 0.6180339887498949;
                double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
                set(x1);
                double f1 = potential(L, c);
                set(x2);
                double f2 = potential(L, c);
                for (int it = 0; it < 48; ++it) {
                    if (f1 < f2) {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + gr * (hi - lo);
                        set(x2);
                        f2 = potential(L, c);
                    } else {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - gr * (hi - lo);
                        set(x1);
                        f1 = potential(L, c);
                    }
                }
                const double best_t = f1 > f2 ? x1 : x2;
                set(best_t);
                const double val = potential(L, c);
                if (val > cur + 1e-14) {
                    cur = val;
                    return;
                }
                set(t0);
                d *= 0.5;
                if (d < 1e-10 * std::max(1.0, std::abs(t0))) break;
            }
            set(t0);
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j)
                line_search([&] { return L(i, j); }, [&](double t) { L(i, j) = t; });
        if (!pin_center)
            for (int i = 0; i < n; ++i)
                line_search([&] { return c[i]; }, [&](double t) { c[i] = t; });
        if (cur - before < 1e-11) break;
    }
    const double s = min_ratio(L, c);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) L(i, j) *= s;
    return {c, L};
}

// Vertices of the regular n-simplex centered at the origin with inradius 1
// (circumradius n), via the Helmert embedding of e_1..e_{n+1}.
inline std::vector<Vec> regular_simplex_vertices(int n) {
    // Orthonormal basis of the hyperplane sum(x)=0 in R^{n+1}.
    std::vector<Vec> basis;
    for (int k = 1; k <= n; ++k) {
        Vec r(n + 1, 0.0);
        for (int j = 0; j < k; ++j) r[j] = 1.0;
        r[k] = -static_cast<double>(k);
        const double nm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (double& x : r) x /= nm;
        basis.push_back(std::move(r));
    }
    const double circum0 = std::sqrt(static_cast<double>(n) / (n + 1));
    const double scale = n / circum0;  // inradius 1 <=> circumradius n
    std::vector<Vec> verts;
    for (int i = 0; i < n + 1; ++i) {
        Vec q(n + 1, -1.0 / (n + 1));
        q[i] += 1.0;
        Vec v(n);
        for (int k = 0; k < n; ++k) v[k] = scale * dot(basis[k], q);
        verts.push_back(std::move(v));
    }
    return verts;
}

inline void verify_sandwich(const ConvexBody& positioned, double lambda) {
    const int n = positioned.dimension();
    std::vector<Vec> dirs;
    for (int i = 0; i < n; ++i) {
        Vec u(n, 0.0);
        u[i] = 1.0;
        dirs.push_back(u);
        u[i] = -1.0;
        dirs.push_back(u);
    }
    if (n <= 16) {
        for (std::int64_t mask = 0; mask < (std::int64_t{1} << n); ++mask) {
            Vec u(n);
            for (int i = 0; i < n; ++i) u[i] = ((mask >> i) & 1 ? 1.0 : -1.0) / std::sqrt(double(n));
            dirs.push_back(std::move(u));
        }
    }
    if (positioned.kind() == ShapeKind::Simplex || positioned.kind() == ShapeKind::Polytope)
        for (const auto& f : positioned.facets()) {
            Vec u = f.normal;
            dirs.push_back(std::move(u));
        }
    for (const auto& u : dirs)
        if (positioned.support(u) < 1.0 - 1e-9)
            throw InternalError("canonical_position: inner ball inclusion failed");
    switch (positioned.kind()) {
        case ShapeKind::Ball:
            if (norm2(positioned.ball_center()) + positioned.ball_radius() > lambda + 1e-9)
                throw InternalError("canonical_position: outer inclusion failed");
            break;
        case ShapeKind::Box: {
            Vec corner(n);
            for (int i = 0; i < n; ++i)
                corner[i] = std::max(std::abs(positioned.box_lower()[i]), std::abs(positioned.box_upper()[i]));
            if (norm2(corner) > lambda + 1e-9)
                throw InternalError("canonical_position: outer inclusion failed");
            break;
        }
        default:
            for (const auto& v : positioned.vertices())
                if (norm2(v) > lambda + 1e-9)
                    throw InternalError("canonical_position: outer inclusion failed");
    }
}

} // namespace detail

// Affine map T with B_2^n subset T(K) subset lambda * B_2^n; lambda is the
// achieved sandwich factor (an upper bound of the Banach-Mazur distance to the
// ball). Balls, boxes and simplexes use their exact John positions; polytopes
// run the inscribed-ellipsoid ascent from the Chebyshev ball.
inline std::pair<AffineMap, double> canonical_position(const ConvexBody& body) {
    const int n = body.dimension();
    AffineMap T = AffineMap::identity(n);
    double lambda = 1.0;
    switch (body.kind()) {
        case ShapeKind::Ball: {
            for (int i = 0; i < n; ++i) T.matrix(i, i) = 1.0 / body.ball_radius();
            T.offset = T.matrix.apply(body.ball_center());
            for (double& v : T.offset) v = -v;
            lambda = 1.0;
            break;
        }
        case ShapeKind::Box: {
            for (int i = 0; i < n; ++i) {
                const double half = 0.5 * (body.box_upper()[i] - body.box_lower()[i]);
                const double mid = 0.5 * (body.box_upper()[i] + body.box_lower()[i]);
                T.matrix(i, i) = 1.0 / half;
                T.offset[i] = -mid / half;
            }
            lambda = std::sqrt(static_cast<double>(n));
            break;
        }
        case ShapeKind::Simplex: {
            // Send the vertices onto the regular simplex with inradius 1.
            auto reg = detail::regular_simplex_vertices(n);
            Matrix E(n, n), W(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    E(j, i) = body.vertices()[i + 1][j] - body.vertices()[0][j];
                    W(j, i) = reg[i + 1][j] - reg[0][j];
                }
            Matrix A = W * inverse(E);
            Vec b = A.apply(body.vertices()[0]);
            for (int i = 0; i < n; ++i) b[i] = reg[0][i] - b[i];
            T = {A, b};
            lambda = static_cast<double>(n);
            break;
        }
        case ShapeKind::Polytope: {
            auto [cheb_c, cheb_r] = detail::chebyshev_center(body.facets(), n);
            if (cheb_r < 1e-8 * body.coordinate_scale())
                throw DegeneracyError("canonical_position: inradius below threshold");
            auto ell = detail::max_inscribed_ellipsoid(body.facets(), n,
                                                       body.symmetric() ? Vec(n, 0.0) : cheb_c,
                                                       cheb_r, body.symmetric());
            Matrix Linv = inverse(ell.L);
            Vec b = Linv.apply(ell.center);
            for (double& v : b) v = -v;
            T = {Linv, b};
            lambda = 0.0;
            for (const auto& v : body.vertices()) lambda = std::max(lambda, norm2(T(v)));
            break;
        }
    }
    ConvexBody img = transform(T, body);
    detail::verify_sandwich(img, lambda);
    return {T, lambda};
}

struct PositionedBody {
    ConvexBody body;  // T(K), sandwiched between B and lambda*B
    AffineMap map;
    double lambda;
};

inline PositionedBody positioned(const ConvexBody& body) {
    auto [map, lambda] = canonical_position(body);
    return {transform(map, body), map, lambda};
}

// Achieved sandwich factor clamped by the John guarantees: <= n for any body,
// <= sqrt(n) for centrally symmetric ones.
inline double banach_mazur_upper(const ConvexBody& body) {
    auto [map, lambda] = canonical_position(body);
    const double cap = body.symmetric() ? std::sqrt(static_cast<double>(body.dimension()))
                                        : static_cast<double>(body.dimension());
    return std::min(lambda, cap);
}

} // namespace cvxpoly
