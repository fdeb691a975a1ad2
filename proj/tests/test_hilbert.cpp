#include "oracles.hpp"

#include "pfg/dynamics.hpp"
#include "pfg/error.hpp"
#include "pfg/hilbert.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace pfg;

namespace {

const Params& P() {
    static Params pr = find_params(ParamSpec{});
    return pr;
}

u64 fp(const GaussCoeff& x) { return to_fp(P(), x).value; }

i64 draw(std::mt19937_64& rng, i64 lo, i64 hi) { return lo + static_cast<i64>(rng() % static_cast<u64>(hi - lo + 1)); }

GaussState random_ket(std::mt19937_64& rng, Tag tag, i64 amin = 0) {
    QuadForm f{Rational(-draw(rng, amin, 3)), Rational(draw(rng, -2, 2)), Rational(-draw(rng, 0, 2))};
    return normalized_ket(P(), tag, f, draw(rng, -5, 5));
}

// (A s)(r) by direct summation over q
u64 brute_apply(const GaussOperator& op, const GaussState& s, i64 r) {
    i64 N = s.domain.N;
    u64 acc = 0;
    for (i64 q = -N / 2; q < N / 2; ++q)
        acc = add_mod(acc, mul_mod(kernel_fp(P(), op, q, r).value, oracle::coord(P(), s, q), P().p), P().p);
    return acc;
}

bool same_kernel(const GaussOperator& a, const GaussOperator& b) {
    i64 N = a.dom_in.N;
    for (i64 q = -N / 2; q < N / 2; ++q)
        for (i64 r = -N / 2; r < N / 2; ++r)
            if (kernel_fp(P(), a, q, r).value != kernel_fp(P(), b, q, r).value) return false;
    return true;
}

} // namespace

TEST_CASE("position states are orthonormal") {
    for (i64 r : {-72, -1, 0, 5, 71})
        for (i64 s : {-72, 0, 5}) {
            GaussCoeff v = inner(P(), position(P(), Tag::V, r), position(P(), Tag::V, s), InnerKind::Hermitian);
            CHECK(fp(v) == (r == s ? 1u : 0u));
        }
}

TEST_CASE("normalized ket has unit Hermitian norm") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        GaussState s = random_ket(rng, Tag::V);
        CHECK(fp(inner(P(), s, s, InnerKind::Hermitian)) == 1);
    }
}

TEST_CASE("ket pairings match the brute-force double loop") {
    std::mt19937_64 rng(2);
    for (Tag tag : {Tag::V, Tag::U}) {
        for (int k = 0; k < 40; ++k) {
            GaussState s1 = random_ket(rng, tag), s2 = random_ket(rng, tag);
            for (InnerKind kind : {InnerKind::Euclidean, InnerKind::Hermitian}) {
                GaussCoeff v = inner(P(), s1, s2, kind);
                CHECK(fp(v) == oracle::inner(P(), s1, s2, kind));
            }
        }
    }
}

TEST_CASE("Euclidean pairing with A1 + A2 = -2") {
    const i64 N = P().N_v;
    GaussState s1 = normalized_ket(P(), Tag::V, {Rational(-1), Rational(1), Rational(0)}, 2);
    GaussState s2 = normalized_ket(P(), Tag::V, {Rational(-1), Rational(1), Rational(0)}, 4);
    GaussCoeff v = inner(P(), s1, s2, InnerKind::Euclidean);
    // combined linear coefficient L = 6, sum over r of e((-2 r^2 + 12 r)/2N), halved
    GaussCoeff expect = GaussCoeff::e8_pow(-1) * GaussCoeff::sqrt_of(Rational(1, 2)) *
                        GaussCoeff::phase(Rational(36, 2 * 2 * N), Tag::V) * GaussCoeff::sqrt_of(Rational(N)) *
                        GaussCoeff::rational(Rational(1, N));
    CHECK(fp(v) == fp(expect));
    CHECK(fp(v) == oracle::inner(P(), s1, s2, InnerKind::Euclidean));
}

TEST_CASE("position against ket") {
    std::mt19937_64 rng(3);
    GaussState s = random_ket(rng, Tag::V);
    for (i64 r : {-3, 0, 17})
        CHECK(fp(inner(P(), s, position(P(), Tag::V, r), InnerKind::Euclidean)) == oracle::coord(P(), s, r));
}

TEST_CASE("inadmissible ket forms are rejected") {
    CHECK_THROWS_AS(normalized_ket(P(), Tag::V, {Rational(1), Rational(0), Rational(0)}, 0), Error);
    CHECK_NOTHROW(make_ket(P(), Tag::V, {Rational(1), Rational(0), Rational(0)}, 0, GaussCoeff(), true));
}

TEST_CASE("domain mismatch in pairings") {
    GaussState u = normalized_ket(P(), Tag::U, {Rational(-1), Rational(0), Rational(0)}, 0);
    GaussState v = normalized_ket(P(), Tag::V, {Rational(-1), Rational(0), Rational(0)}, 0);
    CHECK_THROWS_AS(inner(P(), u, v, InnerKind::Euclidean), Error);
}

TEST_CASE("operator application matches direct summation") {
    std::mt19937_64 rng(4);
    GaussState s = random_ket(rng, Tag::V, 1);
    std::vector<GaussOperator> ops{identity_op(P(), Tag::V), fourier_op(P(), Tag::V), free_propagator(P(), 2)};
    for (auto& op : ops) {
        GaussState out = apply(P(), op, s, Mode::Extended, true);
        for (i64 r = -72; r < 72; r += 7) CHECK(oracle::coord(P(), out, r) == brute_apply(op, s, r));
    }
}

TEST_CASE("Fourier sends position states to momentum states") {
    for (i64 r : {-5, 0, 3}) {
        GaussState out = apply(P(), fourier_op(P(), Tag::V), position(P(), Tag::V, r));
        GaussState v = momentum_state(P(), r);
        for (i64 x = -72; x < 72; ++x) REQUIRE(oracle::coord(P(), out, x) == oracle::coord(P(), v, x));
    }
}

TEST_CASE("free kernel t=2 keeps an even coset") {
    GaussState out = apply(P(), free_propagator(P(), 2), position(P(), Tag::V, 0));
    CHECK(out.support.k == 2);
    CHECK(out.support.d == 0);
    for (i64 r = -72; r < 72; ++r)
        CHECK((oracle::coord(P(), out, r) == 0) == (r % 2 != 0));
}

TEST_CASE("composition") {
    GaussOperator f1 = free_propagator(P(), 1);
    CHECK(same_kernel(compose(P(), identity_op(P(), Tag::V), f1), f1));
    CHECK(same_kernel(compose(P(), free_propagator(P(), 1), free_propagator(P(), 2)), free_propagator(P(), 3)));
    GaussOperator ff = compose(P(), fourier_op(P(), Tag::V), fourier_op(P(), Tag::V));
    const i64 N = P().N_v;
    for (i64 q = -N / 2; q < N / 2; q += 5)
        for (i64 r = -N / 2; r < N / 2; ++r)
            REQUIRE(kernel_fp(P(), ff, q, r).value == (mod64(q + r, N) == 0 ? 1u : 0u));
}

TEST_CASE("unitarity") {
    CHECK(check_unitary(P(), fourier_op(P(), Tag::V)).unitary);
    CHECK(check_unitary(P(), free_propagator(P(), 1)).unitary);
    GaussOperator scaled = fourier_op(P(), Tag::V);
    scaled.kernel = scaled.kernel.scaled(GaussCoeff::rational(Rational(2)));
    UnitaryReport rep = check_unitary(P(), scaled);
    CHECK_FALSE(rep.unitary);
    CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("restriction") {
    GaussState s = normalized_ket(P(), Tag::V, {Rational(0), Rational(-1), Rational(0)}, 3);
    CHECK(restrict_state(s, 1, 0) == s);
    GaussState r2 = restrict_state(s, 2, 0);
    CHECK(r2.support.k == 2);
    CHECK(r2.coeff == s.coeff * GaussCoeff::sqrt_of(Rational(2)));
    // uniform modulus: the norm is unchanged
    u64 n0 = oracle::inner(P(), s, s, InnerKind::Hermitian);
    u64 n2 = oracle::inner(P(), r2, r2, InnerKind::Hermitian);
    CHECK(n0 == n2);
    CHECK(n0 == 1);
}

TEST_CASE("permutations") {
    std::mt19937_64 rng(5);
    GaussState s = random_ket(rng, Tag::V);
    VectorState vs = materialize(P(), s);
    const i64 N = P().N_v;
    std::vector<i64> id(N), shift(N);
    for (i64 r = -N / 2; r < N / 2; ++r) {
        id[r + N / 2] = r;
        shift[r + N / 2] = centered(r + 1, N);
    }
    CHECK(permutation_unitary(id, vs).coords == vs.coords);
    VectorState sh = permutation_unitary(shift, vs);
    for (i64 r = -N / 2; r < N / 2; ++r) CHECK(sh.at(r) == vs.at(r + 1));
    std::vector<i64> bad(N, 0);
    CHECK_THROWS_AS(permutation_unitary(bad, vs), Error);
    GaussState aff = permute_affine(s, 5, 2);
    for (i64 r = -N / 2; r < N / 2; r += 3) CHECK(oracle::coord(P(), aff, r) == vs.at(5 * r + 2));
    // shifting a position state relabels it
    VectorState u0 = materialize(P(), position(P(), Tag::V, 4));
    VectorState u1 = permutation_unitary(shift, u0);
    CHECK(u1.at(3) == 1);
    CHECK(u1.at(4) == 0);
}

TEST_CASE("tensor products") {
    std::mt19937_64 rng(6);
    GaussState a = random_ket(rng, Tag::V), b = random_ket(rng, Tag::V);
    GaussState c = random_ket(rng, Tag::V), d = random_ket(rng, Tag::V);
    ProductState one = tensor({a});
    CHECK(one.factors.size() == 1);
    CHECK(fp(inner_tensor(P(), one, tensor({c}), InnerKind::Euclidean)) ==
          fp(inner(P(), a, c, InnerKind::Euclidean)));
    GaussCoeff v = inner_tensor(P(), tensor({a, b}), tensor({c, d}), InnerKind::Euclidean);
    // double-index brute force with the same per-factor normalization
    Rational A1 = a.form.A + c.form.A, A2 = b.form.A + d.form.A;
    const i64 N = P().N_v;
    u64 acc = 0;
    for (i64 x = -N / 2; x < N / 2; ++x)
        for (i64 y = -N / 2; y < N / 2; ++y)
            acc = add_mod(acc,
                          mul_mod(mul_mod(oracle::coord(P(), a, x), oracle::coord(P(), b, y), P().p),
                                  mul_mod(oracle::coord(P(), c, x), oracle::coord(P(), d, y), P().p), P().p),
                          P().p);
    for (const Rational& A : {A1, A2})
        if (!A.is_zero()) acc = mul_mod(acc, to_residue(Rational(1) / A.abs(), P().p), P().p);
    CHECK(fp(v) == acc);
    CHECK_THROWS_AS(tensor({}), Error);
    CHECK_THROWS_AS(tensor({a, a, a, a, a}), Error);
    GaussState u = normalized_ket(P(), Tag::U, {Rational(-1), Rational(0), Rational(0)}, 0);
    CHECK_THROWS_AS(tensor({a, u}), Error);
}

TEST_CASE("state JSON round trip") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        GaussState s = restrict_state(random_ket(rng, k % 2 ? Tag::U : Tag::V), 1 + k % 3, k % 2);
        CHECK(state_from_json(P(), state_to_json(s)) == s);
    }
}
