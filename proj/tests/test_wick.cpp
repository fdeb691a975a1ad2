#include "oracles.hpp"

#include "pfg/dynamics.hpp"
#include "pfg/error.hpp"
#include "pfg/wick.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pfg;

namespace {

const Params& P() {
    static Params pr = find_params(ParamSpec{});
    return pr;
}

bool same_coords(const GaussState& x, const GaussState& y) {
    for (i64 r = -x.domain.N / 2; r < x.domain.N / 2; ++r)
        if (oracle::coord(P(), x, r) != oracle::coord(P(), y, r)) return false;
    return true;
}

} // namespace

TEST_CASE("coefficient map") {
    CHECK(wick_coeff(P(), GaussCoeff()) == GaussCoeff());
    for (i64 n : {1, 7, -300, 40000}) {
        GaussCoeff u = inv_sqrt_N(P(), Tag::U) * GaussCoeff::phase(Rational(n, 2 * P().N_u), Tag::U);
        GaussCoeff v = inv_sqrt_N(P(), Tag::V) * GaussCoeff::phase(Rational(n, 2 * P().N_v), Tag::V);
        CHECK(to_fp(P(), wick_coeff(P(), u)).value == to_fp(P(), v).value);
    }
    CHECK(wick_coeff(P(), GaussCoeff::j_pow(3)) == GaussCoeff());
    CHECK_THROWS_AS(wick_coeff(P(), GaussCoeff::phase(Rational(1, 3), Tag::V)), Error);
}

TEST_CASE("states and operators") {
    GaussState u = normalized_ket(P(), Tag::U, {Rational(0), Rational(0), Rational(0)}, 0);
    GaussState v = wick_state(P(), u);
    CHECK(v.domain.tag == Tag::V);
    CHECK(same_coords(v, normalized_ket(P(), Tag::V, {Rational(0), Rational(0), Rational(0)}, 0)));
    GaussOperator id = wick_operator(P(), identity_op(P(), Tag::U));
    GaussOperator idv = identity_op(P(), Tag::V);
    for (i64 q : {-72, 0, 9})
        for (i64 r = -72; r < 72; ++r) REQUIRE(kernel_fp(P(), id, q, r).value == kernel_fp(P(), idv, q, r).value);
}

TEST_CASE("intertwining with transfer matrices") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 25; ++k) {
        auto [s, unused] = random_u_pair(P(), rng);
        QuadForm f{Rational(-1 - k % 3), Rational(k % 5 - 2), Rational(-1 - k % 2)};
        GaussOperator t = sm_transfer(P(), f);
        GaussState lhs = wick_state(P(), apply(P(), t, s, Mode::Extended, true));
        GaussState rhs = apply(P(), wick_operator(P(), t), wick_state(P(), s), Mode::Extended, true);
        CHECK(same_coords(lhs, rhs));
    }
}

TEST_CASE("inner-product correspondence") {
    std::mt19937_64 rng(10);
    for (int k = 0; k < 60; ++k) {
        auto [s1, s2] = random_u_pair(P(), rng);
        for (InnerKind kind : {InnerKind::Euclidean, InnerKind::Hermitian}) {
            InnerCorrespondence rep = check_inner_correspondence(P(), s1, s2, kind);
            CHECK(rep.holds);
            CHECK(rep.v_fp == oracle::inner(P(), wick_state(P(), s1), wick_state(P(), s2), kind));
        }
    }
}

TEST_CASE("correspondence examples") {
    GaussState uni = normalized_ket(P(), Tag::U, {Rational(0), Rational(0), Rational(0)}, 0);
    CHECK(check_inner_correspondence(P(), uni, uni, InnerKind::Euclidean).holds);
    GaussState a = normalized_ket(P(), Tag::U, {Rational(-1), Rational(1), Rational(0)}, 2);
    GaussState b = normalized_ket(P(), Tag::U, {Rational(-1), Rational(-1), Rational(0)}, 2);
    CHECK(check_inner_correspondence(P(), a, b, InnerKind::Euclidean).holds);
    GaussState m1 = normalized_ket(P(), Tag::U, {Rational(0), Rational(-1), Rational(0)}, 3);
    GaussState m2 = normalized_ket(P(), Tag::U, {Rational(0), Rational(-1), Rational(0)}, -2);
    CHECK(check_inner_correspondence(P(), m1, m2, InnerKind::Hermitian).holds);
    CHECK(check_inner_correspondence(P(), m1, m1, InnerKind::Hermitian).holds);
}

TEST_CASE("U phases in coefficients break the Hermitian correspondence") {
    // coeff_conj fixes U phases, while the V image is conjugated
    GaussState a = make_ket(P(), Tag::U, {Rational(-1), Rational(0), Rational(0)}, 0,
                            inv_sqrt_N(P(), Tag::U) * GaussCoeff::phase(Rational(5, 2 * P().N_u), Tag::U));
    GaussState b = normalized_ket(P(), Tag::U, {Rational(-2), Rational(0), Rational(0)}, 0);
    CHECK_FALSE(check_inner_correspondence(P(), b, a, InnerKind::Hermitian).holds);
    CHECK(check_inner_correspondence(P(), b, a, InnerKind::Euclidean).holds);
}
