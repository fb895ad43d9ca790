#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cvxpoly/linalg.hpp"
#include "cvxpoly/polynomials.hpp"
#include "cvxpoly/smoothness.hpp"

namespace cvxpoly {

// mt19937_64 with hand-rolled value mappings; std distributions are
// implementation-defined, and suite outputs must be byte-stable across
// platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    double uniform01() { return (next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    int uniform_int(int lo, int hi) {  // inclusive
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0, v = 0.0;
        do {
            u = uniform01();
        } while (u <= 1e-300);
        v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(2.0 * 3.14159265358979323846 * v);
        have_spare_ = true;
        return r * std::cos(2.0 * 3.14159265358979323846 * v);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Convex quadratic x'G'Gx + b.x + c plus nonnegative hinge terms
// w_k max(0, u_k.x + d_k); the hinge offsets stay away from 0 so the field is
// smooth near the origin (support construction probes there).
inline ScalarField random_convex_field(Rng& rng, int n, int hinges = 2) {
    Matrix G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = 0.5 * rng.normal();
    Matrix A = G.transposed() * G;
    Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = rng.uniform(-1.0, 1.0);
    const double c = rng.uniform(-1.0, 1.0);
    std::vector<Vec> us;
    Vec ws, ds;
    for (int k = 0; k < hinges; ++k) {
        Vec u(n);
        for (int i = 0; i < n; ++i) u[i] = rng.normal();
        const double nm = std::max(norm2(u), 1e-12);
        for (double& x : u) x /= nm;
        us.push_back(std::move(u));
        ws.push_back(rng.uniform(0.0, 1.0));
        const double raw = rng.uniform(-0.8, 0.8);
        ds.push_back((raw < 0 ? -1.0 : 1.0) * (0.1 + 0.7 * std::abs(raw)));
    }
    return make_field(
        n,
        [A, b, c, us, ws, ds, n](std::span<const double> x) {
            double s = c;
            for (int i = 0; i < n; ++i) {
                s += b[i] * x[i];
                for (int j = 0; j < n; ++j) s += A(i, j) * x[i] * x[j];
            }
            for (std::size_t k = 0; k < us.size(); ++k) {
                double t = ds[k];
                for (int i = 0; i < n; ++i) t += us[k][i] * x[i];
                if (t > 0) s += ws[k] * t;
            }
            return s;
        },
        /*declared_convex=*/true);
}

inline Polynomial random_polynomial(Rng& rng, int n, int degree, double coeff_scale = 1.0) {
    Polynomial p(n, degree);
    for (double& c : p.coefficients()) c = coeff_scale * rng.uniform(-1.0, 1.0);
    return p;
}

} // namespace cvxpoly
