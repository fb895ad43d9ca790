#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cvxpoly/expr.hpp"
#include "cvxpoly/rng.hpp"
#include "cvxpoly/smoothness.hpp"
#include "cvxpoly/whitney.hpp"

using namespace cvxpoly;

namespace {

// Independent oracle: exhaustive max of |sum_j (-1)^j C(m,j) f(x + j h)| over
// all lattice (x, h) pairs whose whole chain consists of inside lattice
// points. Takes the lattice as shared input but re-does the chain walk, the
// binomials and the accumulation on its own.
double brute_force_modulus(const ScalarField& f, const ConvexBody& K, int m,
                           const GridSpec& grid) {
    const Lattice lat = make_lattice(K, grid);
    const int n = lat.dim;
    std::vector<double> binom(m + 1, 1.0);
    for (int j = 1; j <= m; ++j) binom[j] = binom[j - 1] * (m - j + 1) / j;
    // Per-point multi-indices of the inside points.
    std::vector<std::vector<int>> mix;
    for (auto flat : lat.inside_idx) {
        std::vector<int> ix(n);
        for (int a = n - 1; a >= 0; --a) {
            ix[a] = static_cast<int>(flat % lat.counts[a]);
            flat /= lat.counts[a];
        }
        mix.push_back(std::move(ix));
    }
    double best = 0.0;
    Vec node(n);
    for (const auto& ip : mix)
        for (const auto& iq : mix) {
            bool ok = true;
            double acc = 0.0;
            for (int j = 0; j <= m && ok; ++j) {
                std::int64_t flat = 0;
                for (int a = 0; a < n; ++a) {
                    const int c = ip[a] + j * (iq[a] - ip[a]);
                    if (c < 0 || c >= lat.counts[a]) {
                        ok = false;
                        break;
                    }
                    node[a] = lat.coords[a][c];
                    flat = flat * lat.counts[a] + c;
                }
                if (!ok || !lat.inside[flat]) {
                    ok = false;
                    break;
                }
                acc += (j % 2 == 0 ? 1.0 : -1.0) * binom[j] * f(node);
            }
            if (ok) best = std::max(best, std::abs(acc));
        }
    return best;
}

} // namespace

TEST_CASE("finite differences") {
    auto f = to_field(parse_polynomial("x^2"));
    REQUIRE(finite_difference(f, Vec{0.0}, Vec{1.0}, 2) == 2.0);

    auto g = ramp(0.5, 1).field;  // hinge at 1 - delta
    REQUIRE(finite_difference(g, Vec{-1.0}, Vec{1.0}, 2) == 1.0);

    auto wiggly = make_field(1, [](std::span<const double> x) { return std::sin(5.0 * x[0]); });
    for (int m = 1; m <= 4; ++m)
        REQUIRE(std::abs(finite_difference(wiggly, Vec{0.3}, Vec{0.0}, m)) <= 1e-12);

    REQUIRE_THROWS_AS(finite_difference(f, Vec{0.0}, Vec{1.0}, 0), InputError);
    REQUIRE_THROWS_AS(finite_difference(f, Vec{0.0, 0.0}, Vec{1.0, 1.0}, 1), InputError);
}

TEST_CASE("modulus witnesses") {
    {
        auto w = ramp(0.5, 1);
        auto mw = modulus(w.field, w.natural_body, 2, GridSpec(201));
        REQUIRE(mw.value == Catch::Approx(1.0).margin(1e-9));
        // Witness invariants: chain feasibility and value consistency.
        for (int j = 0; j <= 2; ++j) {
            Vec node{mw.x[0] + j * mw.h[0]};
            REQUIRE(contains(w.natural_body, node, 1e-9));
        }
        REQUIRE(std::abs(finite_difference(w.field, mw.x, mw.h, 2)) ==
                Catch::Approx(mw.value).margin(1e-12));
    }
    {
        auto K = ConvexBody::box({-1.0, -1.0}, {1.0, 1.0});
        auto f = to_field(parse_polynomial("1 + 2*x - 3*y"));
        auto mw = modulus(f, K, 2, GridSpec(11));
        REQUIRE(mw.value <= 1e-12);
    }
    {
        auto e = entropy_fn(1);
        auto mw = modulus(e.field, e.natural_body, 2, GridSpec(201));
        REQUIRE(mw.value <= 1.0 + 1e-6);
        REQUIRE(mw.value >= 0.9);  // the chain (0, 1/2, 1) already gives 1
    }
}

TEST_CASE("lattice modulus equals the exhaustive oracle on coarse grids") {
    ModulusOptions lattice_only;
    lattice_only.refine = false;
    Rng rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = trial % 2 == 0 ? 1 : 2;
        const int m = 1 + trial % 3;
        const int res = 4 + trial % 4;  // resolutions up to 7
        ConvexBody K = trial % 4 < 2
                           ? ConvexBody::box(Vec(n, -1.0), Vec(n, 1.0))
                           : (n == 1 ? ConvexBody::box({0.0}, {1.0})
                                     : ConvexBody::ball({0.0, 0.0}, 1.0));
        ScalarField f = trial % 3 == 0 ? random_convex_field(rng, n, 2)
                                       : to_field(random_polynomial(rng, n, 3));
        const double got = modulus(f, K, m, GridSpec(res), lattice_only).value;
        const double want = brute_force_modulus(f, K, m, GridSpec(res));
        REQUIRE(got == want);
    }
}

TEST_CASE("refinement only improves the lattice value") {
    auto w = ramp(0.37, 1);
    ModulusOptions lattice_only;
    lattice_only.refine = false;
    const double coarse = modulus(w.field, w.natural_body, 2, GridSpec(7), lattice_only).value;
    const double refined = modulus(w.field, w.natural_body, 2, GridSpec(7)).value;
    REQUIRE(refined >= coarse);
    REQUIRE(refined <= 1.0 + 1e-9);  // the continuum value caps the estimate
}

TEST_CASE("modulus properties on shared grids") {
    ModulusOptions lattice_only;
    lattice_only.refine = false;
    Rng rng(31);
    const ConvexBody K = ConvexBody::box({-1.0, -1.0}, {1.0, 1.0});
    const GridSpec grid(13);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField f = trial % 2 == 0 ? random_convex_field(rng, 2, 2)
                                       : to_field(random_polynomial(rng, 2, 4));
        ScalarField g = to_field(random_polynomial(rng, 2, 3));
        const double o1 = modulus(f, K, 1, grid, lattice_only).value;
        const double o2 = modulus(f, K, 2, grid, lattice_only).value;
        const double o3 = modulus(f, K, 3, grid, lattice_only).value;

        // order reduction omega_m <= 2^{m-k} omega_k
        REQUIRE(o2 <= 2.0 * o1 + 1e-8);
        REQUIRE(o3 <= 2.0 * o2 + 1e-8);
        REQUIRE(o3 <= 4.0 * o1 + 1e-8);

        // boundedness by 2^m max |f|
        double fmax = 0.0;
        for (const auto& x : sample_grid(K, grid)) fmax = std::max(fmax, std::abs(f(x)));
        REQUIRE(o2 <= 4.0 * fmax + 1e-8);

        // subadditivity
        ScalarField fg = make_field(2, [f, g](std::span<const double> x) { return f(x) + g(x); });
        REQUIRE(modulus(fg, K, 2, grid, lattice_only).value <=
                o2 + modulus(g, K, 2, grid, lattice_only).value + 1e-8);

        // quadratic annihilation for m = 3
        Polynomial q = random_polynomial(rng, 2, 2);
        ScalarField fq = make_field(2, [f, q](std::span<const double> x) { return f(x) + q.eval(x); });
        REQUIRE(modulus(fq, K, 3, grid, lattice_only).value == Catch::Approx(o3).margin(1e-8));
    }
}

TEST_CASE("second differences of convex fields are nonnegative") {
    Rng rng(53);
    const ConvexBody K = ConvexBody::box({-1.0, -1.0}, {1.0, 1.0});
    for (int trial = 0; trial < 5; ++trial) {
        ScalarField f = random_convex_field(rng, 2, 3);
        const auto pts = sample_grid(K, GridSpec(9));
        for (const auto& p : pts)
            for (const auto& q : pts) {
                Vec h{0.5 * (q[0] - p[0]), 0.5 * (q[1] - p[1])};
                REQUIRE(finite_difference(f, p, h, 2) >= -1e-9);
            }
    }
}

TEST_CASE("midpoint spot check flags non-convex fields") {
    const ConvexBody K = ConvexBody::box({-1.0}, {1.0});
    REQUIRE(midpoint_convexity_ok(to_field(parse_polynomial("x^2")), K, GridSpec(9)));
    REQUIRE_FALSE(midpoint_convexity_ok(to_field(parse_polynomial("0 - x^2")), K, GridSpec(9)));
}

TEST_CASE("modulus argument validation") {
    auto f = to_field(parse_polynomial("x^2"));
    const ConvexBody K = ConvexBody::box({-1.0}, {1.0});
    REQUIRE_THROWS_AS(modulus(f, K, 0, GridSpec(11)), InputError);
    auto f2 = to_field(parse_polynomial("x^2 + y^2"));
    REQUIRE_THROWS_AS(modulus(f2, K, 2, GridSpec(11)), InputError);
}
