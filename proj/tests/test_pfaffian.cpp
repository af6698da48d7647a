#include "arrmc/errors.hpp"
#include "arrmc/pfaffian.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace arrmc;

namespace {

Hyperplane hp(std::vector<Scalar> c, Scalar a, std::string label) {
    return Hyperplane(std::move(c), std::move(a), std::move(label));
}

QMatrix random_small(std::mt19937_64& rng, size_t n) {
    std::uniform_int_distribution<int> coef(-2, 2);
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m(i, j) = Scalar(coef(rng), 2);
    return m;
}

const LineDirection kY({0, 1});

} // namespace

TEST_CASE("system construction validates shapes and integrability") {
    Arrangement arr(2, {hp({1, 0}, 0, "a"), hp({0, 1}, 0, "b")});
    CHECK_THROWS_AS(PfaffianSystem(arr, 2, {QMatrix::identity(2)}), InputError);
    CHECK_THROWS_AS(PfaffianSystem(arr, 2, {QMatrix::identity(2), QMatrix::identity(3)}), InputError);

    QMatrix n1{{0, 1}, {0, 0}};
    QMatrix n2{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(PfaffianSystem(arr, 2, {n1, n2}), NonIntegrableInput);
    PfaffianSystem raw(arr, 2, {n1, n2}, PfaffianSystem::Check::Unchecked);
    IntegrabilityResult r = check_integrability(raw);
    CHECK_FALSE(r.integrable);
    REQUIRE(r.flat.has_value());
    CHECK(r.flat->canonical_point() == std::vector<Scalar>{0, 0});
    CHECK(raw.residue("b") == n2);
    CHECK_THROWS_AS(raw.residue("zz"), InputError);
    CHECK(raw.residue_at(hp({1, 1}, 0, "")).is_zero());
}

TEST_CASE("scalar and rank one systems are integrable") {
    Arrangement arr(2, {hp({1, 0}, 0, "a"), hp({0, 1}, 0, "b"), hp({1, -1}, 0, "c")});
    PfaffianSystem s(arr, 2, {QMatrix::scalar(2, Scalar(1, 2)), QMatrix::scalar(2, 3), QMatrix::scalar(2, -1)});
    CHECK(check_integrability(s).integrable);
    for (const auto& c : corpus::system_cases()) {
        CAPTURE(c.name);
        CHECK(check_integrability(c.system).integrable);
    }
}

TEST_CASE("integrability agrees with wedge expansion") {
    std::mt19937_64 rng(21);
    int integrable = 0, not_integrable = 0;
    for (int trial = 0; trial < 60; ++trial) {
        size_t dim = 2 + trial % 2;
        Arrangement arr = oracle::random_arrangement(rng, dim, 2 + trial % 3);
        QMatrix base = random_small(rng, 2);
        std::vector<QMatrix> res;
        for (size_t i = 0; i < arr.size(); ++i) {
            // Mix commuting and arbitrary residues so both outcomes occur.
            if (trial % 3 == 0)
                res.push_back(random_small(rng, 2));
            else
                res.push_back(base * Scalar(static_cast<int>(i) - 1) + QMatrix::scalar(2, Scalar(trial % 5)));
        }
        if (trial % 3 == 1 && arr.size() >= 2)
            res[1] = random_small(rng, 2);
        PfaffianSystem sys(arr, 2, res, PfaffianSystem::Check::Unchecked);
        bool lib = check_integrability(sys).integrable;
        CHECK(lib == oracle::wedge_vanishes(sys));
        (lib ? integrable : not_integrable)++;
    }
    CHECK(integrable > 5);
    CHECK(not_integrable > 5);
}

TEST_CASE("integer eigenvalue detection") {
    CHECK(nonzero_integer_eigenvalues(QMatrix{{1, 0}, {0, Scalar(1, 2)}}) == std::vector<mpz_class>{1});
    CHECK(nonzero_integer_eigenvalues(QMatrix{{0, 1}, {0, 0}}).empty());
    CHECK(nonzero_integer_eigenvalues(QMatrix{{Scalar(1, 2), 0}, {0, Scalar(1, 3)}}).empty());

    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> eig(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 1 + trial % 5;
        QMatrix d(n, n);
        for (size_t i = 0; i < n; ++i)
            d(i, i) = trial % 2 ? Scalar(eig(rng)) : Scalar(eig(rng), 3);
        for (size_t i = 0; i + 1 < n; ++i)
            if (d(i, i) == d(i + 1, i + 1))
                d(i, i + 1) = 1;
        QMatrix p = oracle::random_invertible(rng, n);
        QMatrix m = p * d * *inverse(p);
        CHECK(nonzero_integer_eigenvalues(m) == oracle::integer_eigenvalues_by_scan(m));
    }
}

TEST_CASE("genericity assumption") {
    LineDirection y({0, 1});
    PfaffianSystem bad(Arrangement(2, {hp({0, 1}, 0, "H")}), 2, {QMatrix{{1, 0}, {0, Scalar(1, 2)}}});
    GenericityReport r = check_assumption_generic(bad, y, ConvolutionParameter(Scalar(1, 5)));
    CHECK_FALSE(r.ok);
    REQUIRE_FALSE(r.offenses.empty());
    CHECK(r.offenses[0].where == "H");
    CHECK(r.offenses[0].eigenvalue == 1);

    PfaffianSystem good = corpus::four_lines(Scalar(1, 2), Scalar(1, 3), 0, 0);
    CHECK(check_assumption_generic(good, y, ConvolutionParameter(Scalar(1, 5))).ok);

    // a + b + lambda = 1 hits the sum condition.
    GenericityReport s = check_assumption_generic(good, y, ConvolutionParameter(Scalar(1, 6)));
    CHECK_FALSE(s.ok);
    REQUIRE(s.offenses.size() == 1);
    CHECK(s.offenses[0].where == "sum");

    PfaffianSystem nil(Arrangement(2, {hp({0, 1}, 0, "H")}), 2, {QMatrix{{0, 1}, {0, 0}}});
    CHECK(check_assumption_generic(nil, y, ConvolutionParameter(Scalar(1, 5))).ok);

    CHECK_THROWS_AS(ConvolutionParameter(Scalar(3)), ParameterIntegral);
    CHECK(ConvolutionParameter(Scalar(-1, 5)).character_class() == Scalar(4, 5));
}

TEST_CASE("star conditions for scalar systems follow the closed form") {
    Arrangement arr(2, {hp({0, 1}, 0, "a"), hp({1, -1}, 0, "b")});
    PfaffianSystem two(arr, 1, {QMatrix{{Scalar(1, 2)}}, QMatrix{{Scalar(1, 3)}}});
    CHECK(check_star_conditions(two, kY).ok());

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> pick(0, 2);
    Arrangement m(2, {hp({0, 1}, 0, "a"), hp({1, -1}, 0, "b"), hp({1, 1}, -2, "c"), hp({1, 0}, 0, "v")});
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<QMatrix> res;
        for (size_t i = 0; i < m.size(); ++i)
            res.push_back(QMatrix{{Scalar(pick(rng), 3)}});
        PfaffianSystem sys(m, 1, res);
        StarReport r = check_star_conditions(sys, kY);
        bool closed = oracle::scalar_star_closed_form(sys, kY);
        CHECK(r.star1 == closed);
        CHECK(r.star2 == closed);
    }
}

TEST_CASE("star condition fails when another residue vanishes") {
    Arrangement arr(2, {hp({0, 1}, 0, "a"), hp({1, -1}, 0, "b")});
    PfaffianSystem sys(arr, 2, {QMatrix{{1, 2}, {0, 3}}, QMatrix(2, 2)});
    StarReport r = check_star_conditions(sys, kY);
    CHECK_FALSE(r.star1);
    CHECK(r.star1_failures == std::vector<std::string>{"a"});

    // W = 0 for every H: vacuous.
    PfaffianSystem inv(arr, 2, {QMatrix::identity(2), QMatrix::scalar(2, 2)});
    CHECK(check_star_conditions(inv, kY).ok());
}

TEST_CASE("dual system") {
    for (const auto& c : corpus::system_cases()) {
        CAPTURE(c.name);
        PfaffianSystem d = dual_system(c.system);
        CHECK(dual_system(d) == c.system);
        CHECK(check_integrability(d).integrable);
        for (Scalar lam : {Scalar(1, 5), Scalar(1, 6), Scalar(2, 3)}) {
            bool a = check_assumption_generic(c.system, c.line, ConvolutionParameter(lam)).ok;
            bool b = check_assumption_generic(d, c.line, ConvolutionParameter(-lam)).ok;
            CHECK(a == b);
        }
    }
    PfaffianSystem s = corpus::four_lines(Scalar(1, 2), 0, 0, 0);
    CHECK(dual_system(s).residue(0)(0, 0) == Scalar(-1, 2));
}

TEST_CASE("fiber restriction") {
    PfaffianSystem s = corpus::four_lines(Scalar(1, 2), Scalar(1, 3), Scalar(1, 7), 0);
    std::vector<Scalar> base{2};
    ExactFiberODE ode = fiber_restriction(s, kY, base);
    CHECK(ode.labels == std::vector<std::string>{"H1", "H2"});
    CHECK(ode.poles == std::vector<Scalar>{0, 2});
    REQUIRE(ode.residues.size() == 2);
    CHECK(ode.residues[0](0, 0) == Scalar(1, 2));
    CHECK(ode.residues[1](0, 0) == Scalar(1, 3));
    CHECK(ode.residue_at_infinity(0, 0) == Scalar(-5, 6));
    std::vector<Scalar> bad{0};
    CHECK_THROWS_AS(fiber_restriction(s, kY, bad), InputError);

    PfaffianSystem vertical(Arrangement(2, {hp({1, 0}, 0, "v")}), 1, {QMatrix{{Scalar(1, 2)}}});
    CHECK(fiber_restriction(vertical, kY, base).poles.empty());
}
