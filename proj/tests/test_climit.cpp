#include "pfg/climit.hpp"
#include "pfg/error.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numbers>

using namespace pfg;

namespace {

const Params& P() {
    static Params pr = find_params(ParamSpec{});
    return pr;
}

const double pi = std::numbers::pi;

ContinuumGaussian G(InnerKind k, double A, double B) { return ContinuumGaussian{k, 1.0, A, B}; }

} // namespace

TEST_CASE("limit profiles of kets") {
    GaussState v = normalized_ket(P(), Tag::V, {Rational(-1), Rational(0), Rational(0)}, 0);
    ContinuumGaussian gv = lm_state(P(), v);
    CHECK(gv.kind == InnerKind::Hermitian);
    CHECK(gv.A == 1.0);
    CHECK(gv.B == 0.0);
    CHECK(std::abs(gv.c - cplx(1, 0)) < 1e-12);
    GaussState u = normalized_ket(P(), Tag::U, {Rational(-1), Rational(0), Rational(0)}, 0);
    ContinuumGaussian gu = lm_state(P(), u);
    CHECK(gu.kind == InnerKind::Euclidean);
    CHECK(gu.A == 1.0);
    CHECK(std::abs(gu.c - cplx(1, 0)) < 1e-12);
    GaussState w = normalized_ket(P(), Tag::U, {Rational(-1), Rational(2), Rational(0)}, 3);
    CHECK(lm_state(P(), w).B == Catch::Approx(-6.0 / 12.0));
    CHECK_THROWS_AS(lm_state(P(), restrict_state(u, 2, 0)), Error);
}

TEST_CASE("closed-form continuum pairings") {
    CHECK(std::abs(continuum_inner_closed(G(InnerKind::Euclidean, 1, 0), G(InnerKind::Euclidean, 0, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(continuum_inner_closed(G(InnerKind::Hermitian, 1, 0), G(InnerKind::Hermitian, 0, 0)) -
                   std::polar(1.0, pi / 4)) < 1e-14);
    CHECK(std::abs(continuum_inner_closed(G(InnerKind::Euclidean, 2, 1), G(InnerKind::Euclidean, 0, 0)) -
                   std::exp(pi / 2) / std::sqrt(2.0)) < 1e-12);
    CHECK_THROWS_AS(continuum_inner_closed(G(InnerKind::Euclidean, 0, 0), G(InnerKind::Euclidean, 0, 0)), Error);
    CHECK_THROWS_AS(continuum_inner_closed(G(InnerKind::Hermitian, 1, 0), G(InnerKind::Hermitian, 1, 0)), Error);
    CHECK_THROWS_AS(continuum_inner_closed(G(InnerKind::Hermitian, 1, 0), G(InnerKind::Euclidean, 1, 0)), Error);
}

TEST_CASE("quadrature oracle") {
    auto q = continuum_inner_quadrature(G(InnerKind::Euclidean, 1, 0), G(InnerKind::Euclidean, 0, 0), 10, 1e-3);
    CHECK(std::abs(q.value - 1.0) < 1e-8);
    auto h = continuum_inner_quadrature(G(InnerKind::Hermitian, 1, 0), G(InnerKind::Hermitian, 0, 0), 10, 1e-3);
    CHECK(std::abs(h.value - std::polar(1.0, pi / 4)) < 1e-3);
    CHECK(h.mollified.size() == 2);
    auto e = continuum_inner_quadrature(G(InnerKind::Euclidean, 2, 1), G(InnerKind::Euclidean, 0, 0), 10, 1e-3);
    CHECK(std::abs(e.value - std::exp(pi / 2) / std::sqrt(2.0)) < 1e-6);
    // two sharp unit-peak bumps at x = 1/2 and x = -1/2
    const cplx c0 = std::exp(-pi * 25.0 * 25.0 / 50.0);
    ContinuumGaussian a{InnerKind::Euclidean, c0, 50, -25}, b{InnerKind::Euclidean, c0, 50, 25};
    double sep = std::abs(continuum_inner_quadrature(a, b, 10, 1e-4).value) /
                 std::sqrt(std::abs(continuum_inner_closed(a, a)) * std::abs(continuum_inner_closed(b, b)));
    CHECK(sep < 1e-12);
}

TEST_CASE("closed form against quadrature on a grid") {
    for (double A : {1.0, 2.0, 3.0, 4.0})
        for (double B : {0.0, 1.0, 2.0}) {
            auto ge = G(InnerKind::Euclidean, A, B), g0 = G(InnerKind::Euclidean, 0, 0);
            CHECK(std::abs(continuum_inner_quadrature(ge, g0, 10, 1e-3).value - continuum_inner_closed(ge, g0)) < 1e-6);
            auto gh = G(InnerKind::Hermitian, A, B), h0 = G(InnerKind::Hermitian, 0, 0);
            CHECK(std::abs(continuum_inner_quadrature(gh, h0, 10, 1e-3).value - continuum_inner_closed(gh, h0)) < 1e-3);
        }
}

TEST_CASE("convergence harness") {
    LimitReport e = convergence_check(2, 0.0, InnerKind::Euclidean, {144, 576, 2304});
    REQUIRE(e.finite_values.size() == 3);
    for (auto& v : e.finite_values) CHECK(std::abs(v.z() - 1.0 / std::sqrt(2.0)) < 1e-12);
    // the deviations do not grow
    CHECK(e.errors[2] <= e.errors[0] + 1e-15);
    LimitReport h = convergence_check(1, 0.0, InnerKind::Hermitian, {144, 576, 2304});
    CHECK(std::abs(h.finite_values.back().abs() - 1.0) < 5e-2);
    LimitReport d = convergence_check(0, 0.0, InnerKind::Euclidean, {144});
    CHECK_FALSE(d.notes.empty());
}

TEST_CASE("limit image of paired kets") {
    GaussState a = normalized_ket(P(), Tag::U, {Rational(-1), Rational(0), Rational(0)}, 0);
    GaussState b = normalized_ket(P(), Tag::U, {Rational(-3), Rational(0), Rational(0)}, 0);
    std::complex<double> zu = to_complex(P(), inner(P(), a, b, InnerKind::Euclidean)).z();
    CHECK(zu.real() > 0);
    CHECK(std::abs(zu.imag()) < 1e-12);
    GaussState av = normalized_ket(P(), Tag::V, {Rational(-1), Rational(0), Rational(0)}, 0);
    GaussState bv = normalized_ket(P(), Tag::V, {Rational(-3), Rational(0), Rational(0)}, 0);
    std::complex<double> zv = to_complex(P(), inner(P(), av, bv, InnerKind::Euclidean)).z();
    CHECK(std::abs(std::abs(zv) - std::abs(zu)) < 1e-3);
}

TEST_CASE("harmonic oscillator") {
    const double w = 1.3;
    for (auto [t1, t2] : std::vector<std::pair<double, double>>{{0.3, 0.5}, {1.5, 1.4}, {2.0, 2.1}})
        for (double x : {-1.0, 0.4})
            CHECK(std::abs(ho_compose(w, t1, t2, x, 0.2) - ho_propagator(w, t1 + t2, x, 0.2)) < 1e-9);
    CHECK(std::abs(ho_propagator(1e-7, 0.7, 0.3, -0.4) - free_kernel(0.7, 0.3, -0.4)) < 1e-9);
    CHECK_THROWS_AS(ho_propagator(1.0, pi, 0, 0), Error);
    CHECK_THROWS_AS(free_kernel(0.0, 0, 0), Error);
}
