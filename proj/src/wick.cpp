#include "pfg/wick.hpp"
#include "pfg/error.hpp"

namespace pfg {

GaussCoeff wick_coeff(const Params& pr, const GaussCoeff& x) {
    if (x.is_zero()) return x;
    if (x.ph().tag == Tag::V) fail("wrong-domain", "wick map expects U-domain coefficients");
    GaussCoeff g = x * GaussCoeff::j_pow(-x.a());
    if (x.ph().tag == Tag::U) g = with_phase(g, Phase(x.ph().q * Rational(pr.i), Tag::V));
    return g;
}

namespace {

i64 wick_modulus(const Params& pr, i64 k) {
    if (k == pr.N_u) return pr.N_v;
    if (pr.N_v % k != 0) fail("wrong-domain", "modulus " + std::to_string(k) + " has no V-domain image");
    return k;
}

} // namespace

GTerm wick_term(const Params& pr, const GTerm& t) {
    if (t.is_zero()) return t;
    if (t.tag == Tag::V) fail("wrong-domain", "wick map expects a U-domain term");
    GTerm r;
    r.coeff = wick_coeff(pr, t.coeff);
    r.tag = t.tag == Tag::U ? Tag::V : Tag::None;
    r.N = t.tag == Tag::U ? pr.N_v : 0;
    r.phase = t.phase;
    for (const auto& g : t.guards) r.add_guard(wick_modulus(pr, g.k), g.expr);
    r.normalize();
    return r;
}

GaussState wick_state(const Params& pr, const GaussState& s) {
    if (s.domain.tag != Tag::U) fail("wrong-domain", "wick_state expects a U-domain state");
    GaussState out = s;
    out.coeff = wick_coeff(pr, s.coeff);
    out.domain = domain_of(pr, Tag::V);
    out.support.k = wick_modulus(pr, s.support.k);
    out.support.d = mod64(s.support.d, out.support.k);
    return out;
}

GaussOperator wick_operator(const Params& pr, const GaussOperator& op) {
    if (op.dom_in.tag != Tag::U || op.dom_out.tag != Tag::U)
        fail("wrong-domain", "wick_operator expects a U-domain operator");
    GaussOperator out = op;
    out.kernel = wick_term(pr, op.kernel);
    out.dom_in = out.dom_out = domain_of(pr, Tag::V);
    out.name = "wick(" + op.name + ")";
    return out;
}

InnerCorrespondence check_inner_correspondence(const Params& pr, const GaussState& s1, const GaussState& s2,
                                               InnerKind kind, Mode mode) {
    InnerCorrespondence rep;
    rep.mapped_u = wick_coeff(pr, inner(pr, s1, s2, kind, mode));
    rep.v_inner = inner(pr, wick_state(pr, s1), wick_state(pr, s2), kind, mode);
    rep.mapped_fp = to_fp(pr, rep.mapped_u).value;
    rep.v_fp = to_fp(pr, rep.v_inner).value;
    rep.holds = rep.mapped_fp == rep.v_fp;
    return rep;
}

namespace {

i64 draw(std::mt19937_64& rng, i64 lo, i64 hi) {
    return lo + static_cast<i64>(rng() % static_cast<u64>(hi - lo + 1));
}

GaussState random_u_ket(const Params& pr, std::mt19937_64& rng) {
    QuadForm f{Rational(draw(rng, -3, -1)), Rational(draw(rng, -2, 2)), Rational(draw(rng, -1, 0))};
    return normalized_ket(pr, Tag::U, f, draw(rng, -4, 4));
}

} // namespace

std::pair<GaussState, GaussState> random_u_pair(const Params& pr, std::mt19937_64& rng) {
    GaussState s1 = random_u_ket(pr, rng);
    GaussState s2 = random_u_ket(pr, rng);
    return {s1, s2};
}

GaussOperator random_u_operator(const Params& pr, std::mt19937_64& rng) {
    QuadForm f{Rational(draw(rng, -3, -1)), Rational(draw(rng, -2, 2)), Rational(draw(rng, -3, -1))};
    return kernel_op(pr, Tag::U, f);
}

} // namespace pfg
