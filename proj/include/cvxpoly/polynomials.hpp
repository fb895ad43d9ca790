#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <vector>

#include "cvxpoly/errors.hpp"
#include "cvxpoly/geometry.hpp"
#include "cvxpoly/linalg.hpp"

namespace cvxpoly {

struct MultiIndex {
    std::vector<int> exponents;

    int total() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
    bool operator==(const MultiIndex& o) const { return exponents == o.exponents; }
};

// Monomial basis of P_{m,n} in graded order: by total degree ascending, within
// a degree by exponent tuple lexicographically descending, so for n=2, m=2 the
// order is 1; x, y; x^2, xy, y^2. Size C(n+m, n).
class Basis {
  public:
    static std::shared_ptr<const Basis> get(int n, int m) {
        if (n < 1 || m < 0) throw InputError("Basis: need n >= 1, m >= 0");
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::shared_ptr<const Basis>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{n, m}];
        if (!slot) slot = std::shared_ptr<const Basis>(new Basis(n, m));
        return slot;
    }

    int dim() const { return n_; }
    int degree_bound() const { return m_; }
    int size() const { return static_cast<int>(indices_.size()); }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    int index_of(const std::vector<int>& expo) const {
        auto it = lookup_.find(expo);
        return it == lookup_.end() ? -1 : it->second;
    }

  private:
    Basis(int n, int m) : n_(n), m_(m) {
        std::vector<int> cur(n, 0);
        for (int d = 0; d <= m; ++d) emit(cur, 0, d);
        for (int i = 0; i < size(); ++i) lookup_[indices_[i].exponents] = i;
    }

    void emit(std::vector<int>& cur, int axis, int remaining) {
        if (axis == n_ - 1) {
            cur[axis] = remaining;
            indices_.push_back({cur});
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[axis] = e;
            emit(cur, axis + 1, remaining - e);
        }
        cur[axis] = 0;
    }

    int n_, m_;
    std::vector<MultiIndex> indices_;
    std::map<std::vector<int>, int> lookup_;
};

inline std::int64_t basis_size(int n, int m) {
    // C(n+m, n)
    std::int64_t r = 1;
    for (int i = 1; i <= n; ++i) r = r * (m + i) / i;
    return r;
}

// Dense polynomial over the graded monomial basis. Values are immutable-ish
// by convention; all operations return fresh polynomials.
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(int n, int m) : basis_(Basis::get(n, m)), coeffs_(basis_->size(), 0.0) {}

    static Polynomial constant(int n, double value) {
        Polynomial p(n, 0);
        p.coeffs_[0] = value;
        return p;
    }

    static Polynomial monomial(int n, const std::vector<int>& expo, double coeff) {
        int deg = std::accumulate(expo.begin(), expo.end(), 0);
        Polynomial p(n, deg);
        p.coeffs_[p.basis_->index_of(expo)] = coeff;
        return p;
    }

    int dim() const { return basis_->dim(); }
    int degree_bound() const { return basis_->degree_bound(); }
    const Basis& basis() const { return *basis_; }
    const Vec& coefficients() const { return coeffs_; }
    Vec& coefficients() { return coeffs_; }

    double coeff(const std::vector<int>& expo) const {
        int i = basis_->index_of(expo);
        return i < 0 ? 0.0 : coeffs_[i];
    }

    void set_coeff(const std::vector<int>& expo, double v) {
        int i = basis_->index_of(expo);
        if (i < 0) throw InputError("Polynomial::set_coeff: exponent outside basis");
        coeffs_[i] = v;
    }

    // Largest total degree with a nonzero coefficient.
    int effective_degree() const {
        int deg = 0;
        const auto& idx = basis_->indices();
        for (int i = 0; i < basis_->size(); ++i)
            if (coeffs_[i] != 0.0) deg = std::max(deg, idx[i].total());
        return deg;
    }

    // Value at x, accumulated term-by-term in the graded basis order with
    // precomputed axis powers; fully deterministic.
    double eval(std::span<const double> x) const {
        const int n = dim(), m = degree_bound();
        if (static_cast<int>(x.size()) != n) throw InputError("Polynomial::eval: dimension mismatch");
        double pows_buf[8 * 16];
        std::vector<double> pows_dyn;
        double* pows;
        if (n <= 8 && m <= 15) {
            pows = pows_buf;
        } else {
            pows_dyn.assign(static_cast<std::size_t>(n) * (m + 1), 0.0);
            pows = pows_dyn.data();
        }
        for (int a = 0; a < n; ++a) {
            pows[a * (m + 1)] = 1.0;
            for (int k = 1; k <= m; ++k) pows[a * (m + 1) + k] = pows[a * (m + 1) + k - 1] * x[a];
        }
        double acc = 0.0;
        const auto& idx = basis_->indices();
        for (int i = 0; i < basis_->size(); ++i) {
            const double c = coeffs_[i];
            if (c == 0.0) continue;
            double term = c;
            for (int a = 0; a < n; ++a) {
                const int e = idx[i].exponents[a];
                if (e) term *= pows[a * (m + 1) + e];
            }
            acc += term;
        }
        return acc;
    }

    double operator()(std::span<const double> x) const { return eval(x); }

    // Re-embed into the degree-m2 basis (m2 >= effective degree).
    Polynomial with_degree_bound(int m2) const {
        Polynomial q(dim(), m2);
        const auto& idx = basis_->indices();
        for (int i = 0; i < basis_->size(); ++i) {
            if (coeffs_[i] == 0.0) continue;
            int j = q.basis_->index_of(idx[i].exponents);
            if (j < 0) throw InputError("with_degree_bound: truncation would drop terms");
            q.coeffs_[j] = coeffs_[i];
        }
        return q;
    }

    Polynomial operator+(const Polynomial& o) const { return combined(o, 1.0); }
    Polynomial operator-(const Polynomial& o) const { return combined(o, -1.0); }

    Polynomial scaled(double s) const {
        Polynomial q = *this;
        for (double& c : q.coeffs_) c *= s;
        return q;
    }

    Polynomial multiplied(const Polynomial& o) const {
        if (dim() != o.dim()) throw InputError("Polynomial::multiplied: dimension mismatch");
        Polynomial q(dim(), degree_bound() + o.degree_bound());
        const auto& ia = basis_->indices();
        const auto& ib = o.basis_->indices();
        std::vector<int> expo(dim());
        for (int i = 0; i < basis_->size(); ++i) {
            if (coeffs_[i] == 0.0) continue;
            for (int j = 0; j < o.basis_->size(); ++j) {
                if (o.coeffs_[j] == 0.0) continue;
                for (int a = 0; a < dim(); ++a) expo[a] = ia[i].exponents[a] + ib[j].exponents[a];
                q.coeffs_[q.basis_->index_of(expo)] += coeffs_[i] * o.coeffs_[j];
            }
        }
        return q;
    }

    Polynomial derivative(int axis) const {
        if (axis < 0 || axis >= dim()) throw InputError("derivative: axis out of range");
        Polynomial q(dim(), std::max(0, degree_bound() - 1));
        const auto& idx = basis_->indices();
        std::vector<int> expo(dim());
        for (int i = 0; i < basis_->size(); ++i) {
            const int e = idx[i].exponents[axis];
            if (coeffs_[i] == 0.0 || e == 0) continue;
            expo = idx[i].exponents;
            expo[axis] = e - 1;
            q.coeffs_[q.basis_->index_of(expo)] += e * coeffs_[i];
        }
        return q;
    }

  private:
    Polynomial combined(const Polynomial& o, double sign) const {
        if (dim() != o.dim()) throw InputError("Polynomial: dimension mismatch");
        const int m2 = std::max(degree_bound(), o.degree_bound());
        Polynomial q(dim(), m2);
        const auto& ia = basis_->indices();
        for (int i = 0; i < basis_->size(); ++i)
            if (coeffs_[i] != 0.0) q.coeffs_[q.basis_->index_of(ia[i].exponents)] += coeffs_[i];
        const auto& ib = o.basis_->indices();
        for (int j = 0; j < o.basis_->size(); ++j)
            if (o.coeffs_[j] != 0.0)
                q.coeffs_[q.basis_->index_of(ib[j].exponents)] += sign * o.coeffs_[j];
        return q;
    }

    std::shared_ptr<const Basis> basis_;
    Vec coeffs_;
};

// P(x) = x'Mx + linear(x) with M stored symmetric (off-diagonal halved into
// both entries).
struct QuadraticParts {
    Matrix M;
    Polynomial linear;  // degree <= 1
};

inline QuadraticParts quadratic_parts(const Polynomial& p) {
    if (p.effective_degree() > 2) throw InputError("quadratic_parts: degree must be <= 2");
    const int n = p.dim();
    Matrix M(n, n);
    Polynomial lin(n, 1);
    std::vector<int> expo(n, 0);
    lin.set_coeff(expo, p.coeff(expo));
    for (int i = 0; i < n; ++i) {
        std::fill(expo.begin(), expo.end(), 0);
        expo[i] = 1;
        lin.set_coeff(expo, p.coeff(expo));
        expo[i] = 2;
        M(i, i) = p.coeff(expo);
        expo[i] = 1;
        for (int j = i + 1; j < n; ++j) {
            expo[j] = 1;
            const double c = p.coeff(expo);
            M(i, j) = M(j, i) = 0.5 * c;
            expo[j] = 0;
        }
    }
    return {std::move(M), std::move(lin)};
}

inline Polynomial from_quadratic(const Matrix& M, const Polynomial& linear) {
    const int n = M.rows();
    Polynomial p = linear.with_degree_bound(2);
    std::vector<int> expo(n, 0);
    for (int i = 0; i < n; ++i) {
        expo[i] = 2;
        p.set_coeff(expo, p.coeff(expo) + M(i, i));
        expo[i] = 1;
        for (int j = i + 1; j < n; ++j) {
            expo[j] = 1;
            p.set_coeff(expo, p.coeff(expo) + M(i, j) + M(j, i));
            expo[j] = 0;
        }
        expo[i] = 0;
    }
    return p;
}

// M = O diag(d) O' with O orthogonal, d sorted descending; each eigenvector's
// first nonzero entry is positive.
struct EigenPair {
    Matrix O;
    Vec d;
};

inline EigenPair symm_eig(const Matrix& M) {
    const int n = M.rows();
    if (M.cols() != n) throw InputError("symm_eig: square matrix required");
    Matrix A = M, V;
    detail::jacobi_eig(A, V);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return A(a, a) > A(b, b); });
    EigenPair out{Matrix(n, n), Vec(n)};
    for (int c = 0; c < n; ++c) {
        const int s = order[c];
        out.d[c] = A(s, s);
        double sign = 1.0;
        for (int r = 0; r < n; ++r)
            if (std::abs(V(r, s)) > 1e-12) {
                sign = V(r, s) > 0 ? 1.0 : -1.0;
                break;
            }
        for (int r = 0; r < n; ++r) out.O(r, c) = sign * V(r, s);
    }
    return out;
}

// Hessian of p at x (analytic, via differentiated coefficient tables).
inline Matrix hessian_at(const Polynomial& p, std::span<const double> x) {
    const int n = p.dim();
    Matrix H(n, n);
    for (int i = 0; i < n; ++i) {
        Polynomial di = p.derivative(i);
        for (int j = i; j < n; ++j) {
            const double v = di.derivative(j).eval(x);
            H(i, j) = v;
            H(j, i) = v;
        }
    }
    return H;
}

// Minimum over the grid of the smallest Hessian eigenvalue. Exact (and grid
// independent) for degree <= 2, where the Hessian is the constant 2M.
inline double hessian_min_eig_on(const Polynomial& p, const ConvexBody& K, const GridSpec& grid) {
    if (p.dim() != K.dimension()) throw InputError("hessian_min_eig_on: dimension mismatch");
    if (p.effective_degree() <= 2) {
        auto parts = quadratic_parts(p);
        for (int i = 0; i < parts.M.rows(); ++i)
            for (int j = 0; j < parts.M.cols(); ++j) parts.M(i, j) *= 2.0;
        auto eig = symm_eig(parts.M);
        return eig.d.back();
    }
    const int n = p.dim();
    std::vector<Polynomial> second;
    second.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        Polynomial di = p.derivative(i);
        for (int j = 0; j < n; ++j) second.push_back(di.derivative(j));
    }
    double best = 1e300;
    Matrix H(n, n);
    for (const auto& x : sample_grid(K, grid)) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) H(i, j) = second[static_cast<std::size_t>(i) * n + j].eval(x);
        best = std::min(best, symm_eig(H).d.back());
    }
    return best;
}

inline bool is_convex_on(const Polynomial& p, const ConvexBody& K, const GridSpec& grid,
                         double tol = 1e-10) {
    return hessian_min_eig_on(p, K, grid) >= -tol;
}

// p(T(x)) for degree <= 2 polynomials; stays degree <= 2.
inline Polynomial compose_affine(const Polynomial& p, const AffineMap& T) {
    if (p.effective_degree() > 2) throw InputError("compose_affine: degree must be <= 2");
    const int n = p.dim();
    auto parts = quadratic_parts(p);
    const Matrix& A = T.matrix;
    const Vec& b = T.offset;
    Matrix M2 = A.transposed() * parts.M * A;
    // linear'(x) = 2 b'M A x + b'M b + linear(A x + b)
    Vec mb = parts.M.apply(b);
    Vec lin_grad(n, 0.0);
    std::vector<int> expo(n, 0);
    double lin_const = parts.linear.coeff(expo);
    for (int i = 0; i < n; ++i) {
        expo[i] = 1;
        lin_grad[i] = parts.linear.coeff(expo);
        expo[i] = 0;
    }
    Polynomial lin2(n, 1);
    double c0 = dot(b, mb) + lin_const + dot(lin_grad, b);
    lin2.set_coeff(std::vector<int>(n, 0), c0);
    for (int j = 0; j < n; ++j) {
        double g = 0.0;
        for (int i = 0; i < n; ++i) g += (2.0 * mb[i] + lin_grad[i]) * A(i, j);
        expo.assign(n, 0);
        expo[j] = 1;
        lin2.set_coeff(expo, g);
    }
    return from_quadratic(M2, lin2);
}

} // namespace cvxpoly
