#include "arrmc/errors.hpp"
#include "arrmc/intertwiner.hpp"
#include "arrmc/matrix.hpp"
#include "arrmc/polynomial.hpp"
#include "arrmc/rational.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace arrmc;

TEST_CASE("rationals parse canonically") {
    CHECK(parse_rational("6/4") == Scalar(3, 2));
    CHECK(to_string(parse_rational(" -6/4 ")) == "-3/2");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational("1.5"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK(frac(Scalar(-1, 5)) == Scalar(4, 5));
    CHECK(arrmc::floor(Scalar(-1, 5)) == -1);
    CHECK(is_integer(parse_rational("4/2")));
    CHECK(std::abs(unit_root(Scalar(1, 2)) + 1.0) < 1e-15);
}

TEST_CASE("kernel, rank and inverse agree with the reference elimination") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int trial = 0; trial < 40; ++trial) {
        size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 5;
        QMatrix m(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                m(i, j) = Scalar(coef(rng), 1 + trial % 3);
        size_t rk = oracle::rank_of(oracle::rows_of(m));
        CHECK(rank(m) == rk);
        QMatrix k = kernel(m);
        CHECK(k.cols() == c - rk);
        CHECK((m * k).is_zero());
        CHECK(rank(k) == k.cols());
        QMatrix comp = complete_basis(column_basis(m));
        CHECK(rank(hcat(column_basis(m), comp)) == r);
        if (r == c) {
            auto inv = inverse(m);
            CHECK(inv.has_value() == (rk == r));
            if (inv)
                CHECK(m * *inv == QMatrix::identity(r));
            CHECK(determinant(m) == oracle::det_of(oracle::rows_of(m)));
        }
    }
}

TEST_CASE("solve and column span") {
    QMatrix a{{1, 2}, {2, 4}};
    CHECK_FALSE(solve(a, QMatrix{{1}, {3}}).has_value());
    auto x = solve(a, QMatrix{{1}, {2}});
    REQUIRE(x.has_value());
    CHECK(a * *x == QMatrix{{1}, {2}});
    CHECK(in_column_span(a, QMatrix{{3}, {6}}));
    CHECK_FALSE(in_column_span(a, QMatrix{{3}, {5}}));
}

TEST_CASE("kron uses block (i, j) = a(i, j) * b") {
    QMatrix k = kron(QMatrix{{1, 2}}, QMatrix{{1}, {3}});
    CHECK(k == QMatrix{{1, 2}, {3, 6}});
}

TEST_CASE("characteristic polynomial: Cayley-Hamilton and trace/determinant") {
    std::mt19937_64 rng(11);
    for (size_t n = 1; n <= 5; ++n) {
        QMatrix m = oracle::random_invertible(rng, n);
        m(0, 0) += Scalar(1, 3);
        QPoly p = characteristic_polynomial(m);
        CHECK(p.degree() == static_cast<int>(n));
        CHECK(p.leading() == 1);
        CHECK(p.coeff(n - 1) == -m.trace());
        Scalar sign = n % 2 ? -1 : 1;
        CHECK(p.coeff(0) == sign * determinant(m));
        QMatrix acc(n, n), power = QMatrix::identity(n);
        for (size_t k = 0; k <= n; ++k) {
            acc += p.coeff(k) * power;
            power = power * m;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("gcd, interpolation and pencil determinants") {
    QPoly a({-1, 0, 1}); // t^2 - 1
    QPoly b({1, 1});     // t + 1
    CHECK(gcd(a, b) == QPoly({1, 1}));
    CHECK(gcd(QPoly({1, 1}), QPoly({-1, 1})).degree() == 0);
    std::vector<Scalar> xs{0, 1, 2}, ys{1, 2, 5};
    CHECK(interpolate(xs, ys) == QPoly({1, 0, 1}));
    QMatrix m0{{1, 2}, {0, 3}}, m1{{1, 0}, {1, 1}};
    QPoly det = pencil_determinant(m0, m1);
    for (int t = -3; t <= 3; ++t)
        CHECK(det.eval(t) == determinant(m0 + Scalar(t) * m1));
}

TEST_CASE("symbolic determinant matches numeric evaluation") {
    size_t vars = 2;
    MPoly x = MPoly::variable(vars, 0), y = MPoly::variable(vars, 1), one = MPoly::constant(vars, 1);
    std::vector<MPoly> e{x, y, one, x + y, one, y, y, x, x};
    MPoly det = determinant(e, 3);
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            std::vector<Scalar> pt{a, b};
            QMatrix m(3, 3);
            for (size_t i = 0; i < 9; ++i)
                m(i / 3, i % 3) = e[i].eval(pt);
            CHECK(det.eval(pt) == determinant(m));
        }
}

TEST_CASE("intertwiners of conjugate tuples") {
    std::mt19937_64 rng(3);
    QMatrix p = oracle::random_invertible(rng, 3);
    QMatrix pinv = *inverse(p);
    std::vector<QMatrix> a{QMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 2}}, QMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
    std::vector<QMatrix> b;
    for (const auto& m : a)
        b.push_back(p * m * pinv);
    IntertwinerSearch s = find_invertible_intertwiner(a, b);
    REQUIRE(s.intertwiner.has_value());
    for (size_t k = 0; k < a.size(); ++k)
        CHECK(*s.intertwiner * a[k] == b[k] * *s.intertwiner);
    CHECK(determinant(*s.intertwiner) != 0);

    // Same spectra, different Jordan structure: no invertible intertwiner.
    std::vector<QMatrix> j{QMatrix{{1, 1}, {0, 1}}};
    std::vector<QMatrix> id{QMatrix::identity(2)};
    IntertwinerSearch none = find_invertible_intertwiner(j, id);
    CHECK_FALSE(none.intertwiner.has_value());
    CHECK(none.solution_dim == 2);
    CHECK(none.method == "symbolic");

    auto same = find_invertible_intertwiner(a, a);
    CHECK(same.method == "identity");
    CHECK(*same.intertwiner == QMatrix::identity(3));
}

TEST_CASE("intertwiner search for large solution spaces is randomized but exact") {
    QMatrix p{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    std::vector<QMatrix> c{QMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}};
    std::vector<QMatrix> d{p * c[0] * *inverse(p)};
    // Solution space of c vs d has dimension 5.
    IntertwinerSearch s = find_invertible_intertwiner(c, d);
    CHECK(s.solution_dim == 5);
    REQUIRE(s.intertwiner.has_value());
    CHECK(*s.intertwiner * c[0] == d[0] * *s.intertwiner);
}
