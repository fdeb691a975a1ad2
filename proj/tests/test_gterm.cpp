#include "oracles.hpp"

#include "pfg/error.hpp"
#include "pfg/gterm.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pfg;

namespace {

const Params& P() {
    static Params pr = find_params(ParamSpec{});
    return pr;
}

Poly v(const char* n) { return Poly::var(n); }
Poly k(i64 c) { return Poly(Rational(c)); }

// sum over y in [-n/2, n/2) of the term, evaluated point by point
u64 brute_sum(const GTerm& t, const std::string& y, i64 n, Assignment a) {
    u64 acc = 0;
    for (i64 x = -n / 2; x < n - n / 2; ++x) {
        a[y] = x;
        acc = add_mod(acc, t.eval_fp(P(), a).value, P().p);
    }
    return acc;
}

} // namespace

TEST_CASE("guard normalization") {
    CHECK_FALSE(normalize_guard(4, k(8)).has_value());
    auto f = normalize_guard(4, k(3));
    REQUIRE(f.has_value());
    CHECK(f->k == 0);
    auto g = normalize_guard(6, k(2) * v("a") + k(4));
    REQUIRE(g.has_value());
    CHECK(g->k == 3);
    CHECK(g->expr == v("a") + k(2));
    CHECK_FALSE(normalize_guard(1, v("a")).has_value());
}

TEST_CASE("terms evaluate with guards") {
    GTerm t = GTerm::exp(v("r") * v("r"), Tag::V, 144);
    t.add_guard(3, v("r") - k(1));
    t.normalize();
    CHECK(t.eval_fp(P(), {{"r", 4}}).value == oracle::e(P(), Rational(16, 288)));
    CHECK(t.eval_fp(P(), {{"r", 3}}).value == 0);
    CHECK(t.str().find("if 3 | (") != std::string::npos);
}

TEST_CASE("constant phase folds into the coefficient") {
    GTerm t = GTerm::exp(v("r") + k(5), Tag::V, 144);
    t.normalize();
    CHECK(t.phase == v("r"));
    CHECK(t.coeff == GaussCoeff::phase(Rational(5, 288), Tag::V));
}

TEST_CASE("products check domains") {
    GTerm u = GTerm::exp(v("r"), Tag::U, P().N_u), w = GTerm::exp(v("r"), Tag::V, P().N_v);
    CHECK_THROWS_AS(u * w, Error);
    GTerm c(GaussCoeff::rational(Rational(2)));
    CHECK_NOTHROW(c * u);
}

TEST_CASE("summing out a bound variable matches brute force") {
    const i64 N = P().N_v;
    std::vector<Poly> phases{
        -(v("y") * v("y")),
        -(v("y") * v("y")) + k(2) * v("y") * v("a"),
        k(-3) * v("y") * v("y") + k(2) * v("y") * v("a") + v("a") * v("a"),
        k(2) * v("y") * v("y") + k(6) * v("y") * v("a") + k(4) * v("y") * v("b"),
        k(5) * v("y") * v("y") + k(2) * v("y"),
        k(2) * v("y") * v("a"),
        v("a") * v("a") + v("b"),
    };
    for (auto& ph : phases) {
        GTerm t = GTerm::exp(ph, Tag::V, N);
        GTerm s = sum_out(t, "y", N, Mode::Extended, P());
        CHECK_FALSE(s.vars().count("y"));
        for (i64 a = -9; a <= 9; a += 2)
            for (i64 b : {-3, 0, 7}) {
                Assignment as{{"a", a}, {"b", b}};
                CHECK(s.eval_fp(P(), as).value == brute_sum(t, "y", N, as));
            }
    }
}

TEST_CASE("nested elimination with guards") {
    const i64 N = P().N_v;
    GTerm t = GTerm::exp(k(3) * v("x") * v("x") + k(2) * v("x") * v("y") + k(-2) * v("y") * v("y") +
                             k(2) * v("y") * v("a"),
                         Tag::V, N);
    GTerm s1 = sum_out(t, "x", N, Mode::Extended, P());
    GTerm s2 = sum_out(s1, "y", N, Mode::Extended, P());
    for (i64 a = -6; a <= 6; ++a) {
        u64 acc = 0;
        for (i64 x = -N / 2; x < N / 2; ++x)
            for (i64 y = -N / 2; y < N / 2; ++y)
                acc = add_mod(acc, t.eval_fp(P(), {{"x", x}, {"y", y}, {"a", a}}).value, P().p);
        CHECK(s2.eval_fp(P(), {{"a", a}}).value == acc);
    }
}

TEST_CASE("odd linear coefficient is not periodic") {
    GTerm t = GTerm::exp(v("y"), Tag::V, 144);
    try {
        sum_out(t, "y", 144, Mode::Extended, P());
        FAIL("expected non-periodic-phase");
    } catch (const Error& e) {
        CHECK(e.kind() == "non-periodic-phase");
    }
}

TEST_CASE("absent variable counts the domain") {
    GTerm t(GaussCoeff::rational(Rational(1)));
    GTerm s = sum_out(t, "y", 144, Mode::Extended, P());
    CHECK(s.coeff == GaussCoeff::rational(Rational(144)));
    CHECK(sum_out(t, "y", 144, Mode::Strict, P()).is_zero());
}
