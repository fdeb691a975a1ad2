#include "pfg/hilbert.hpp"
#include "pfg/error.hpp"

#include <algorithm>

namespace pfg {

Domain domain_of(const Params& pr, Tag tag) {
    if (tag == Tag::U) return {Tag::U, pr.N_u, "u"};
    if (tag == Tag::V) return {Tag::V, pr.N_v, "v"};
    fail("domain-mismatch", "a domain needs tag U or V");
}

i64 centered(i64 r, i64 N) {
    i64 x = mod64(r + N / 2, N);
    return x - N / 2;
}

GaussCoeff inv_sqrt_N(const Params& pr, Tag tag) {
    GaussCoeff c = GaussCoeff::rational(Rational(1, pr.m));
    if (tag == Tag::U) c *= GaussCoeff::j_pow(-1);
    return c;
}

GaussCoeff sqrt_N(const Params& pr, Tag tag) { return inv_sqrt_N(pr, tag).inverse(); }

GTerm GaussState::term(const std::string& var) const {
    if (is_zero()) return GTerm::zero();
    const Poly r = Poly::var(var);
    const Rational p(p_param);
    Poly P = Poly(form.A) * r * r + Poly(Rational(2) * form.B * p) * r + Poly(form.C * p * p);
    GTerm t = GTerm::exp(P, domain.tag, domain.N);
    t.coeff = coeff * t.coeff;
    if (support.k > 1) t.add_guard(support.k, r - Poly(Rational(support.d)));
    t.normalize();
    return t;
}

FpElem GaussState::coord_fp(const Params& pr, i64 r) const { return term().eval_fp(pr, {{"r", r}}); }

ComplexVal GaussState::coord_complex(const Params& pr, i64 r) const {
    return term().eval_complex(pr, {{"r", r}});
}

GTerm PositionState::term(const std::string& var) const {
    GTerm t;
    t.add_guard(domain.N, Poly::var(var) - Poly(Rational(r)));
    return t;
}

GaussState make_ket(const Params& pr, Tag tag, const QuadForm& f, i64 p_param, const GaussCoeff& coeff,
                    bool allow_inadmissible) {
    if (!allow_inadmissible && !f.admissible())
        fail("inadmissible-form", "ket forms need A <= 0 and C <= 0");
    GaussState s;
    s.coeff = coeff;
    s.form = f;
    s.p_param = p_param;
    s.domain = domain_of(pr, tag);
    return s;
}

GaussState normalized_ket(const Params& pr, Tag tag, const QuadForm& f, i64 p_param) {
    return make_ket(pr, tag, f, p_param, inv_sqrt_N(pr, tag));
}

PositionState position(const Params& pr, Tag tag, i64 r) {
    Domain d = domain_of(pr, tag);
    return {centered(r, d.N), d};
}

namespace {

// Intersection of cosets; false if empty.
bool merge_coset(Support& s, i64 k, i64 d) {
    d = mod64(d, k);
    const i64 g = gcd64(s.k, k);
    if (mod64(d - s.d, g) != 0) return false;
    const i64 l = narrow(static_cast<i128>(s.k / g) * k);
    const i64 k1 = s.k / g, k2 = k / g;
    const i64 t = mod128(static_cast<i128>((d - s.d) / g) * inv_mod(mod64(k1, k2), k2), k2);
    s.d = mod128(static_cast<i128>(s.d) + static_cast<i128>(s.k) * t, l);
    s.k = l;
    return true;
}

GaussState zero_state(const Domain& dom) {
    GaussState s;
    s.coeff = GaussCoeff::zero();
    s.domain = dom;
    return s;
}

} // namespace

GaussState state_from_term(const GTerm& t, const std::string& var, const Domain& dom) {
    if (t.is_zero()) return zero_state(dom);
    for (const auto& v : t.vars())
        if (v != var) fail("free-variable", "state term still depends on " + v);
    if (t.tag != Tag::None && t.tag != dom.tag) fail("domain-mismatch", "term and domain tags differ");
    GaussState s;
    s.domain = dom;
    s.coeff = t.coeff;
    s.p_param = 1;
    Rational alpha;
    Poly beta, rest;
    t.phase.split(var, alpha, beta, rest);
    s.form = {alpha, beta.constant_term() / Rational(2), rest.constant_term()};
    for (const auto& g : t.guards) {
        Rational q;
        Poly lin, v;
        g.expr.split(var, q, lin, v);
        const i64 u = mod64(lin.constant_term().num(), g.k);
        const i64 vv = mod64(v.constant_term().num(), g.k);
        const i64 gg = gcd64(u, g.k);
        if (vv % gg != 0) return zero_state(dom);
        const i64 k1 = g.k / gg;
        const i64 d = k1 == 1 ? 0 : mod128(-static_cast<i128>(inv_mod((u / gg) % k1, k1)) * (vv / gg), k1);
        if (!merge_coset(s.support, k1, d)) return zero_state(dom);
    }
    if (dom.N % s.support.k != 0) fail("bad-coset", "support modulus does not divide N");
    s.support.d = mod64(s.support.d, s.support.k);
    return s;
}

const char* kind_name(InnerKind k) { return k == InnerKind::Hermitian ? "H" : "E"; }

InnerKind parse_kind(const std::string& s) {
    if (s == "E" || s == "euclidean" || s == "Euclidean") return InnerKind::Euclidean;
    if (s == "H" || s == "hermitian" || s == "Hermitian") return InnerKind::Hermitian;
    fail("bad-argument", "kind must be E or H, got '" + s + "'");
}

GTerm conj_term(const GTerm& t) {
    if (t.is_zero()) return t;
    GTerm r = t;
    r.coeff = coeff_conj(t.coeff);
    r.phase = -t.phase;
    return r;
}

namespace {

const Domain& state_domain(const State& s) {
    return std::visit([](const auto& x) -> const Domain& { return x.domain; }, s);
}

GTerm state_term(const State& s, const std::string& var) {
    return std::visit([&](const auto& x) { return x.term(var); }, s);
}

} // namespace

GaussCoeff inner(const Params& pr, const State& s1, const State& s2, InnerKind kind, Mode mode) {
    const Domain& d = state_domain(s1);
    if (!(d == state_domain(s2))) fail("domain-mismatch", "inner product across domains");
    GTerm t2;
    if (kind == InnerKind::Hermitian && std::holds_alternative<GaussState>(s2)) {
        // conjugate before the constant part of the form is folded into the
        // coefficient, so the whole form is negated in both domains
        GaussState c = std::get<GaussState>(s2);
        c.coeff = coeff_conj(c.coeff);
        c.form = {-c.form.A, -c.form.B, -c.form.C};
        t2 = c.term("r");
    } else {
        t2 = state_term(s2, "r");
    }
    GTerm T = state_term(s1, "r") * t2;
    if (T.is_zero()) return GaussCoeff::zero();
    Rational A;
    Poly lin, rest;
    T.phase.split("r", A, lin, rest);
    GTerm S = sum_out(T, "r", d.N, mode, pr);
    if (S.is_zero()) return GaussCoeff::zero();
    if (!S.vars().empty()) fail("internal", "inner product left free variables");
    GaussCoeff out = S.coeff;
    const bool both_kets = std::holds_alternative<GaussState>(s1) && std::holds_alternative<GaussState>(s2);
    if (both_kets && !A.is_zero()) out *= GaussCoeff::rational(Rational(1) / A.abs());
    return out;
}

GaussOperator identity_op(const Params& pr, Tag tag) {
    GaussOperator op;
    op.dom_in = op.dom_out = domain_of(pr, tag);
    op.kernel.add_guard(op.dom_in.N, Poly::var("r") - Poly::var("q"));
    op.unitary = true;
    op.name = "identity";
    return op;
}

GaussOperator fourier_op(const Params& pr, Tag tag) {
    GaussOperator op;
    op.dom_in = op.dom_out = domain_of(pr, tag);
    op.kernel = GTerm::exp(Poly(Rational(-2)) * Poly::var("q") * Poly::var("r"), tag, op.dom_in.N)
                    .scaled(inv_sqrt_N(pr, tag));
    op.unitary = true;
    op.name = "fourier";
    return op;
}

GaussOperator kernel_op(const Params& pr, Tag tag, const QuadForm& a, const GaussCoeff& extra,
                        bool allow_inadmissible) {
    if (!allow_inadmissible && !a.admissible()) fail("inadmissible-form", "kernel form needs A, C <= 0");
    GaussOperator op;
    op.dom_in = op.dom_out = domain_of(pr, tag);
    const Poly q = Poly::var("q"), r = Poly::var("r");
    Poly P = Poly(a.A) * q * q + Poly(Rational(2) * a.B) * q * r + Poly(a.C) * r * r;
    op.kernel = GTerm::exp(P, tag, op.dom_in.N).scaled(inv_sqrt_N(pr, tag) * extra);
    op.name = "kernel";
    return op;
}

GaussState apply(const Params& pr, const GaussOperator& op, const State& s, Mode mode, bool allow_inadmissible) {
    if (!(op.dom_in == state_domain(s))) fail("domain-mismatch", "operator input domain differs from state");
    GTerm T = op.kernel * state_term(s, "q");
    GTerm R = sum_out(T, "q", op.dom_in.N, mode, pr);
    GaussState out = state_from_term(R, "r", op.dom_out);
    if (!allow_inadmissible && !out.is_zero() && !out.form.admissible())
        fail("inadmissible-result", "image form " + out.form.A.str() + " r^2 is not contractive");
    return out;
}

GaussOperator compose(const Params& pr, const GaussOperator& op1, const GaussOperator& op2, Mode mode) {
    if (!(op1.dom_in == op2.dom_out)) fail("domain-mismatch", "composition domains differ");
    const std::string x = "x_";
    GTerm k2 = op2.kernel.substitute("r", Poly::var(x));
    GTerm k1 = op1.kernel.substitute("q", Poly::var(x));
    GTerm T = k2 * k1;
    if (mode == Mode::Strict && !T.is_zero()) {
        Rational A;
        Poly lin, rest;
        T.phase.split(x, A, lin, rest);
        bool guarded = std::any_of(T.guards.begin(), T.guards.end(),
                                   [&](const Guard& g) { return g.expr.has_var(x); });
        if (A.is_zero() && !guarded)
            fail("degenerate-composition", "intermediate quadratic coefficient vanishes");
    }
    GaussOperator out;
    out.dom_in = op2.dom_in;
    out.dom_out = op1.dom_out;
    out.kernel = sum_out(T, x, op2.dom_out.N, mode, pr);
    out.unitary = op1.unitary && op2.unitary;
    out.name = op1.name + "*" + op2.name;
    return out;
}

FpElem kernel_fp(const Params& pr, const GaussOperator& op, i64 q, i64 r) {
    return op.kernel.eval_fp(pr, {{"q", q}, {"r", r}});
}

UnitaryReport check_unitary(const Params& pr, const GaussOperator& op) {
    if (!(op.dom_in == op.dom_out)) fail("domain-mismatch", "unitarity needs a square operator");
    const i64 N = op.dom_in.N;
    if (N > 4096) fail("too-large", "brute-force unitarity check limited to N <= 4096");
    const GTerm ck = conj_term(op.kernel);
    std::vector<u64> K(static_cast<std::size_t>(N * N)), C(static_cast<std::size_t>(N * N));
    for (i64 q = 0; q < N; ++q) {
        for (i64 r = 0; r < N; ++r) {
            Assignment a{{"q", q - N / 2}, {"r", r - N / 2}};
            K[q * N + r] = op.kernel.eval_fp(pr, a).value;
            C[q * N + r] = ck.eval_fp(pr, a).value;
        }
    }
    UnitaryReport rep;
    for (i64 q1 = 0; q1 < N; ++q1) {
        for (i64 q2 = 0; q2 < N; ++q2) {
            u64 s = 0;
            for (i64 r = 0; r < N; ++r) s = add_mod(s, mul_mod(K[q1 * N + r], C[q2 * N + r], pr.p), pr.p);
            ++rep.checked;
            if (s != (q1 == q2 ? 1u : 0u)) {
                rep.unitary = false;
                if (rep.failures.size() < 10)
                    rep.failures.push_back("columns " + std::to_string(q1 - N / 2) + "," +
                                           std::to_string(q2 - N / 2) + " pair to " + std::to_string(s));
            }
        }
    }
    return rep;
}

GaussState restrict_state(const GaussState& s, i64 k, i64 d) {
    if (k <= 0 || s.domain.N % k != 0) fail("bad-coset", "restriction modulus must divide N");
    GaussState out = s;
    if (!merge_coset(out.support, k, d)) return zero_state(s.domain);
    out.coeff = s.coeff * GaussCoeff::sqrt_of(Rational(k));
    return out;
}

VectorState materialize(const Params& pr, const State& s) {
    VectorState v;
    v.domain = state_domain(s);
    const i64 N = v.domain.N;
    GTerm t = state_term(s, "r");
    v.coords.resize(static_cast<std::size_t>(N));
    for (i64 r = -N / 2; r < N / 2; ++r) v.coords[r + N / 2] = t.eval_fp(pr, {{"r", r}}).value;
    return v;
}

VectorState materialize_conj(const Params& pr, const GaussState& s) {
    VectorState v;
    v.domain = s.domain;
    const i64 N = s.domain.N;
    GTerm t = conj_term(s.term("r"));
    v.coords.resize(static_cast<std::size_t>(N));
    for (i64 r = -N / 2; r < N / 2; ++r) v.coords[r + N / 2] = t.eval_fp(pr, {{"r", r}}).value;
    return v;
}

VectorState permutation_unitary(const std::vector<i64>& sigma, const VectorState& s) {
    const i64 N = s.domain.N;
    if (static_cast<i64>(sigma.size()) != N) fail("not-a-bijection", "permutation has wrong length");
    std::vector<char> seen(static_cast<std::size_t>(N), 0);
    for (i64 x : sigma) {
        if (x < -N / 2 || x >= N / 2 || seen[x + N / 2]) fail("not-a-bijection", "sigma is not a bijection");
        seen[x + N / 2] = 1;
    }
    VectorState out;
    out.domain = s.domain;
    out.coords.resize(static_cast<std::size_t>(N));
    for (i64 r = -N / 2; r < N / 2; ++r) out.coords[r + N / 2] = s.at(sigma[r + N / 2]);
    return out;
}

GaussState permute_affine(const GaussState& s, i64 u, i64 v) {
    if (gcd64(u, s.domain.N) != 1) fail("not-a-bijection", "affine map needs gcd(u, N) = 1");
    GTerm t = s.term("r").substitute("r", Poly(Rational(u)) * Poly::var("r") + Poly(Rational(v)));
    return state_from_term(t, "r", s.domain);
}

ProductState tensor(const std::vector<GaussState>& states) {
    if (states.empty() || states.size() > 4) fail("bad-arity", "tensor arity must be 1..4");
    for (const auto& s : states)
        if (!(s.domain == states.front().domain)) fail("mixed-domain", "tensor factors differ in domain");
    return {states};
}

GaussCoeff inner_tensor(const Params& pr, const ProductState& a, const ProductState& b, InnerKind kind,
                        Mode mode) {
    if (a.factors.size() != b.factors.size()) fail("bad-arity", "tensor arities differ");
    GaussCoeff out;
    for (std::size_t k = 0; k < a.factors.size(); ++k)
        out *= inner(pr, a.factors[k], b.factors[k], kind, mode);
    return out;
}

namespace {

nlohmann::ordered_json rat_json(const Rational& r) {
    if (r.is_integer()) return r.num();
    return r.str();
}

Rational rat_from(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<i64>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    fail("bad-state", "form entries must be integers or \"n/d\" strings");
}

} // namespace

nlohmann::ordered_json state_to_json(const GaussState& s) {
    nlohmann::ordered_json j;
    j["domain"] = tag_name(s.domain.tag);
    j["coeff"] = s.coeff.str();
    j["form"] = {rat_json(s.form.A), rat_json(s.form.B), rat_json(s.form.C)};
    j["p_param"] = s.p_param;
    j["support"] = {s.support.k, s.support.d};
    return j;
}

GaussState state_from_json(const Params& pr, const nlohmann::json& j) {
    try {
        GaussState s;
        s.domain = domain_of(pr, parse_tag(j.at("domain").get<std::string>()));
        s.coeff = j.contains("coeff") ? GaussCoeff::parse(j.at("coeff").get<std::string>()) : inv_sqrt_N(pr, s.domain.tag);
        const auto& f = j.at("form");
        if (!f.is_array() || f.size() != 3) fail("bad-state", "form must be [A, B, C]");
        s.form = {rat_from(f[0]), rat_from(f[1]), rat_from(f[2])};
        s.p_param = j.value("p_param", i64{0});
        if (j.contains("support")) {
            const auto& sp = j.at("support");
            s.support = {sp.at(0).get<i64>(), sp.at(1).get<i64>()};
            if (s.support.k <= 0 || s.domain.N % s.support.k != 0) fail("bad-coset", "support modulus must divide N");
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        fail("bad-state", e.what());
    }
}

} // namespace pfg
