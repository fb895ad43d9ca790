#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cvxpoly/expr.hpp"
#include "cvxpoly/polynomials.hpp"
#include "cvxpoly/rng.hpp"

using namespace cvxpoly;

TEST_CASE("basis size is C(n+m, n) and indices are graded") {
    for (int n = 1; n <= 6; ++n)
        for (int m = 0; m <= 5; ++m) {
            auto basis = Basis::get(n, m);
            REQUIRE(basis->size() == basis_size(n, m));
            int prev_deg = 0;
            for (const auto& idx : basis->indices()) {
                REQUIRE(idx.total() >= prev_deg);
                prev_deg = idx.total();
            }
        }
    // n=2, m=2 order: 1; x, y; x^2, xy, y^2.
    auto b = Basis::get(2, 2);
    REQUIRE(b->indices()[0].exponents == std::vector<int>{0, 0});
    REQUIRE(b->indices()[1].exponents == std::vector<int>{1, 0});
    REQUIRE(b->indices()[2].exponents == std::vector<int>{0, 1});
    REQUIRE(b->indices()[3].exponents == std::vector<int>{2, 0});
    REQUIRE(b->indices()[4].exponents == std::vector<int>{1, 1});
    REQUIRE(b->indices()[5].exponents == std::vector<int>{0, 2});
}

TEST_CASE("evaluation basics") {
    REQUIRE(Polynomial::constant(3, 1.0).eval(Vec{0.2, -0.5, 4.0}) == 1.0);
    Polynomial p = parse_polynomial("x^2 - y^2");
    REQUIRE(p.eval(Vec{1.0, 1.0}) == 0.0);
    Polynomial roofP = parse_polynomial("1.5 + x^2 - y^2");
    REQUIRE(roofP.eval(Vec{0.0, 0.0}) == 1.5);
    REQUIRE_THROWS_AS(p.eval(Vec{1.0}), InputError);
}

TEST_CASE("quadratic split") {
    {
        auto parts = quadratic_parts(parse_polynomial("1.5 + x^2 - y^2"));
        REQUIRE(parts.M(0, 0) == 1.0);
        REQUIRE(parts.M(1, 1) == -1.0);
        REQUIRE(parts.M(0, 1) == 0.0);
        REQUIRE(parts.linear.eval(Vec{7.0, -3.0}) == 1.5);
    }
    {
        auto parts = quadratic_parts(parse_polynomial("1.5 + x^2 + y^2 - 2*y"));
        REQUIRE(parts.M(0, 0) == 1.0);
        REQUIRE(parts.M(1, 1) == 1.0);
        REQUIRE(parts.linear.eval(Vec{0.0, 1.0}) == Catch::Approx(-0.5));
    }
    {
        auto parts = quadratic_parts(parse_polynomial("x*y"));
        REQUIRE(parts.M(0, 1) == 0.5);
        REQUIRE(parts.M(1, 0) == 0.5);
        REQUIRE(parts.M(0, 0) == 0.0);
        REQUIRE(parts.linear.eval(Vec{2.0, 3.0}) == 0.0);
    }
    REQUIRE_THROWS_AS(quadratic_parts(parse_polynomial("x^3")), InputError);
}

TEST_CASE("quadratic reassembly on random degree-2 polynomials") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 4);
        Polynomial p = random_polynomial(rng, n, 2);
        auto parts = quadratic_parts(p);
        for (int probe = 0; probe < 20; ++probe) {
            Vec x(n);
            for (double& v : x) v = rng.uniform(-2.0, 2.0);
            double quad = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) quad += x[i] * parts.M(i, j) * x[j];
            REQUIRE(p.eval(x) ==
                    Catch::Approx(quad + parts.linear.eval(x)).margin(1e-12 * (1 + std::abs(p.eval(x)))));
        }
        Polynomial re = from_quadratic(parts.M, parts.linear);
        for (std::size_t i = 0; i < re.coefficients().size(); ++i)
            REQUIRE(re.coefficients()[i] == Catch::Approx(p.coefficients()[i]).margin(1e-14));
    }
}

TEST_CASE("symmetric eigendecomposition") {
    {
        auto eig = symm_eig(Matrix::identity(2));
        REQUIRE(eig.d[0] == 1.0);
        REQUIRE(eig.d[1] == 1.0);
        REQUIRE(eig.O(0, 0) == 1.0);
        REQUIRE(eig.O(1, 1) == 1.0);
    }
    {
        Matrix M(2, 2);
        M(0, 1) = M(1, 0) = 1.0;
        auto eig = symm_eig(M);
        REQUIRE(eig.d[0] == Catch::Approx(1.0));
        REQUIRE(eig.d[1] == Catch::Approx(-1.0));
    }
    {
        Matrix M(2, 2);
        M(0, 0) = 1.0;
        M(1, 1) = -1.0;
        auto eig = symm_eig(M);
        REQUIRE(eig.d[0] == 1.0);
        REQUIRE(eig.d[1] == -1.0);
        REQUIRE(std::abs(eig.O(0, 0)) == 1.0);
        // sign convention: first nonzero entry of each column is positive
        REQUIRE(eig.O(0, 0) > 0.0);
        REQUIRE(eig.O(1, 1) > 0.0);
    }
}

TEST_CASE("eigen invariants over random matrices") {
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 8);
        Matrix M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) M(i, j) = M(j, i) = rng.uniform(-10.0, 10.0);
        auto eig = symm_eig(M);
        for (int i = 1; i < n; ++i) REQUIRE(eig.d[i - 1] >= eig.d[i]);
        Matrix ot = eig.O.transposed() * eig.O;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                REQUIRE(std::abs(ot(i, j) - (i == j)) <= 1e-10);
        Matrix D(n, n);
        for (int i = 0; i < n; ++i) D(i, i) = eig.d[i];
        Matrix rec = eig.O * D * eig.O.transposed();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                REQUIRE(std::abs(rec(i, j) - M(i, j)) <= 1e-9 * (1.0 + M.max_abs()));
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r) {
                if (std::abs(eig.O(r, c)) > 1e-12) {
                    REQUIRE(eig.O(r, c) > 0.0);
                    break;
                }
            }
        }
    }
}

TEST_CASE("hessian extremes on the roof quadratics") {
    auto K = ConvexBody::box({-1.0, 0.0}, {1.0, 1.0});
    GridSpec grid(11);
    Polynomial P = parse_polynomial("1.5 + x^2 - y^2");
    Polynomial Q = parse_polynomial("1.5 + x^2 + y^2 - 2*y");
    REQUIRE(hessian_min_eig_on(P, K, grid) == -2.0);
    REQUIRE(hessian_min_eig_on(Q, K, grid) == 2.0);
    REQUIRE(hessian_min_eig_on(parse_polynomial("3*x - y"), K, grid) == 0.0);
    REQUIRE_FALSE(is_convex_on(P, K, grid));
    REQUIRE(is_convex_on(Q, K, grid));
    REQUIRE(is_convex_on(parse_polynomial("3*x - y"), K, grid));
}

TEST_CASE("degree<=2 convexity is grid independent") {
    auto K = ConvexBody::box({-1.0, -1.0}, {1.0, 1.0});
    Rng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial p = random_polynomial(rng, 2, 2);
        REQUIRE(hessian_min_eig_on(p, K, GridSpec(3)) ==
                hessian_min_eig_on(p, K, GridSpec(17)));
    }
}

TEST_CASE("cubic hessian scan uses the grid") {
    auto K = ConvexBody::box({-1.0}, {1.0});
    // x^3: second derivative 6x, minimum -6 at the left endpoint.
    REQUIRE(hessian_min_eig_on(parse_polynomial("x^3"), K, GridSpec(11)) == Catch::Approx(-6.0));
}

TEST_CASE("derivatives and products") {
    Polynomial p = parse_polynomial("x^2*y + 2*x");
    Polynomial px = p.derivative(0);
    REQUIRE(px.eval(Vec{1.0, 3.0}) == Catch::Approx(8.0));  // 2xy + 2
    Polynomial q = parse_polynomial("x + y");
    Polynomial prod = p.multiplied(q);
    Vec at{0.7, -1.3};
    REQUIRE(prod.eval(at) == Catch::Approx(p.eval(at) * q.eval(at)));
}

TEST_CASE("affine composition of quadratics") {
    Rng rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial p = random_polynomial(rng, 2, 2);
        Matrix A(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) A(i, j) = rng.uniform(-2.0, 2.0);
        AffineMap T{A, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}};
        Polynomial comp = compose_affine(p, T);
        for (int probe = 0; probe < 10; ++probe) {
            Vec x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            REQUIRE(comp.eval(x) == Catch::Approx(p.eval(T(x))).margin(1e-10));
        }
    }
}
