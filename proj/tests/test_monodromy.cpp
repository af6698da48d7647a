#include "arrmc/errors.hpp"
#include "arrmc/monodromy.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace arrmc;

namespace {

constexpr double kTol = 1e-10;
const LineDirection kY({0, 1});

FuchsianODE scalar_ode(std::vector<Complex> poles, std::vector<double> residues) {
    FuchsianODE ode;
    for (size_t k = 0; k < poles.size(); ++k) {
        ode.poles.push_back(poles[k]);
        ode.residues.push_back(CMatrix::Constant(1, 1, residues[k]));
        ode.labels.push_back("p" + std::to_string(k));
    }
    return ode;
}

Complex expi(double a) {
    return std::polar(1.0, 2.0 * std::numbers::pi * a);
}

} // namespace

TEST_CASE("scalar loop monodromy matches the closed form") {
    for (double a : {0.5, 1.0 / 3, 0.2, -0.7, 1.25}) {
        CAPTURE(a);
        FuchsianODE ode = scalar_ode({0.0}, {a});
        LoopPath loop = simple_loop(Complex(0, -1), 0.0, 0.25);
        CMatrix m = transport_along_loop(ode, loop, kTol);
        CHECK(std::abs(m(0, 0) - expi(a)) < 10 * kTol);
    }
}

TEST_CASE("trivial monodromy") {
    FuchsianODE zero = scalar_ode({0.0, 1.0}, {0.0, 0.0});
    CHECK(std::abs(transport_along_loop(zero, simple_loop(Complex(0.5, -1), 0.0, 0.2), kTol)(0, 0) - 1.0) < 1e-14);

    FuchsianODE one = scalar_ode({0.0}, {0.3});
    LoopPath away = simple_loop(Complex(3, -1), Complex(3, 0), 0.5);
    CHECK(std::abs(transport_along_loop(one, away, kTol)(0, 0) - 1.0) < 10 * kTol);
}

TEST_CASE("homotopic loops give the same matrix") {
    FuchsianODE ode;
    ode.poles = {0.0, 1.0};
    ode.residues = {CMatrix{{0.2, 1.0}, {0.0, 0.3}}, CMatrix{{0.1, 0.0}, {0.5, -0.4}}};
    ode.labels = {"a", "b"};
    Complex base(0.5, -1.0);
    CMatrix m1 = transport_along_loop(ode, simple_loop(base, 0.0, 0.3), kTol);
    CMatrix m2 = transport_along_loop(ode, simple_loop(base, 0.0, 0.1), kTol);
    CHECK((m1 - m2).norm() < 10 * kTol * std::max(1.0, m1.norm()));
}

TEST_CASE("determinant identity") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        FuchsianODE ode;
        ode.poles = {Complex(0, 0), Complex(1.5, 0.5)};
        ode.residues = {0.3 * oracle::random_complex(rng, 2), 0.3 * oracle::random_complex(rng, 2)};
        ode.labels = {"a", "b"};
        CMatrix m = transport_along_loop(ode, simple_loop(Complex(0.75, -1), 0.0, 0.3), kTol);
        Complex expected = std::exp(2.0 * std::numbers::pi * Complex(0, 1) * ode.residues[0].trace());
        CHECK(std::abs(m.determinant() - expected) < 10 * kTol * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("loops are validated") {
    std::vector<Complex> poles{0.0, 1.0, Complex(0.5, 1.0)};
    LoopSystem ls = standard_loops(poles);
    CHECK(ls.radius == doctest::Approx(1.0 / 3));
    CHECK(ls.order == std::vector<size_t>{0, 2, 1});
    for (size_t k = 0; k < ls.loops.size(); ++k) {
        for (size_t j = 0; j < poles.size(); ++j)
            CHECK(ls.loops[k].winding_number(poles[j]) == (j == ls.order[k] ? 1 : 0));
        CHECK_NOTHROW(validate_loop(ls.loops[k], poles, ls.order[k], ls.radius / 2));
    }
    for (const auto& p : poles)
        CHECK(ls.big_loop.winding_number(p) == 1);
    for (const auto& p : poles)
        CHECK(ls.basepoint.imag() < p.imag());
    CHECK_THROWS_AS(validate_loop(ls.loops[0], poles, ls.order[1], 0.0), NumericError);
}

TEST_CASE("integration through a pole fails loudly") {
    FuchsianODE ode = scalar_ode({0.0}, {0.5});
    LoopPath through;
    through.basepoint = -1.0;
    through.pieces = {PathPiece::line(-1.0, 1.0), PathPiece::line(1.0, -1.0)};
    CHECK_THROWS_AS(transport(ode, through), NumericError);

    FuchsianODE dup = scalar_ode({0.0, 0.0}, {0.5, 0.1});
    CHECK_THROWS_AS(dup.validate(), InputError);
}

TEST_CASE("twisted equation adds a scalar pole") {
    FuchsianODE ode = scalar_ode({0.0}, {0.5});
    FuchsianODE tw = ode.with_twist(Complex(2, 0), Scalar(1, 5));
    REQUIRE(tw.poles.size() == 2);
    CHECK(std::abs(tw.residues[1](0, 0) - 0.2) < 1e-15);
    CHECK(tw.labels[1] == "y0");
}

TEST_CASE("monodromy of the scalar four line system") {
    PfaffianSystem s = corpus::four_lines(Scalar(1, 2), Scalar(1, 3), 0, 0);
    std::vector<Scalar> base{2};
    MonodromyReport r = monodromy_tuple_of_system(s, kY, base);
    REQUIRE(r.tuple.size() == 2);
    CHECK(std::abs(r.tuple.matrices[0](0, 0) - expi(0.5)) < 1e-8);
    CHECK(std::abs(r.tuple.matrices[1](0, 0) - expi(1.0 / 3)) < 1e-8);
    CHECK(r.product_residual < 10 * kTol);
    CHECK(r.infinity_check_applicable);
    CHECK(r.infinity_residual < 10 * kTol);
    CHECK(r.tuple.labels == std::vector<std::string>{"H1", "H2"});

    MonodromyReport z = monodromy_tuple_of_system(corpus::four_lines(0, 0, 0, 0), kY, base);
    for (const auto& m : z.tuple.matrices)
        CHECK(std::abs(m(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("gauge equivalent systems have conjugate tuples") {
    std::mt19937_64 rng(14);
    for (size_t i : {4u, 5u, 7u}) {
        auto c = corpus::system_cases()[i];
        CAPTURE(c.name);
        PfaffianSystem g = oracle::gauge(c.system, oracle::random_invertible(rng, c.system.dim_e()));
        std::vector<Scalar> base(c.system.arrangement().dim() - 1, Scalar(5, 2));
        MonodromyReport a = monodromy_tuple_of_system(c.system, c.line, base);
        MonodromyReport b = monodromy_tuple_of_system(g, c.line, base);
        CHECK(a.product_residual < 1e-8);
        CHECK(tuple_isomorphism(a.tuple, b.tuple).isomorphic);
    }
}

TEST_CASE("compatibility on the four line scenario") {
    PfaffianSystem s = corpus::four_lines(Scalar(1, 2), Scalar(1, 3), 0, 0);
    for (int x : {2, 3}) {
        std::vector<Scalar> base{x};
        CompatibilityReport r = verify_mc_compatibility(s, kY, ConvolutionParameter(Scalar(1, 5)), base);
        CHECK(r.ok());
        CHECK(r.katz.tuple.rank == 2);
        CHECK(r.output.tuple.rank == 2);
        for (double d : r.generator_distances)
            CHECK(d < 1e-6);
        CHECK(r.isomorphism.residual < 1e-6);
    }
    std::vector<Scalar> base{2};
    CHECK_THROWS_AS(verify_mc_compatibility(s, kY, ConvolutionParameter(Scalar(1, 6)), base), AssumptionFail);
}

TEST_CASE("compatibility on a rank two system") {
    auto c = corpus::system_cases()[5];
    std::vector<Scalar> base{2};
    CompatibilityReport r = verify_mc_compatibility(c.system, c.line, ConvolutionParameter(Scalar(2, 7)), base);
    CHECK(r.ok());
}
