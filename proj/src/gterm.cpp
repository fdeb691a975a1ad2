#include "pfg/gterm.hpp"
#include "pfg/error.hpp"

#include <algorithm>
#include <sstream>

namespace pfg {

GTerm GTerm::exp(const Poly& phase, Tag tag, i64 N) {
    GTerm t;
    t.tag = tag;
    t.N = N;
    t.phase = phase;
    t.normalize();
    return t;
}

std::set<std::string> GTerm::vars() const {
    std::set<std::string> out = phase.vars();
    for (const auto& g : guards) {
        auto v = g.expr.vars();
        out.insert(v.begin(), v.end());
    }
    return out;
}

std::optional<Guard> normalize_guard(i64 k, const Poly& expr) {
    if (k <= 0) fail("bad-guard", "guard modulus must be positive");
    const i64 d = expr.denominator();
    i64 kk = narrow(static_cast<i128>(k) * d);
    Poly e = expr * Poly(Rational(d));
    // reduce coefficients into [0, kk)
    Poly red;
    for (const auto& [m, c] : e.terms()) red += Poly::monomial(m, Rational(mod64(c.num(), kk)));
    const i64 g = gcd64(kk, red.content());
    if (red.is_zero() || g == kk) return std::nullopt;
    kk /= g;
    Poly out;
    for (const auto& [m, c] : red.terms()) out += Poly::monomial(m, Rational(c.num() / g));
    if (kk == 1) return std::nullopt;
    if (out.is_constant()) {
        // nonzero constant below kk after reduction: false
        return Guard{0, Poly(Rational(1))};
    }
    return Guard{kk, out};
}

void GTerm::add_guard(i64 k, const Poly& expr) {
    if (is_zero()) return;
    auto g = normalize_guard(k, expr);
    if (!g) return;
    if (g->k == 0) {
        *this = zero();
        return;
    }
    if (std::find(guards.begin(), guards.end(), *g) == guards.end()) guards.push_back(*g);
}

void GTerm::normalize() {
    if (is_zero()) {
        *this = zero();
        return;
    }
    std::vector<Guard> old;
    old.swap(guards);
    for (const auto& g : old) {
        add_guard(g.k, g.expr);
        if (is_zero()) return;
    }
    std::sort(guards.begin(), guards.end(), [](const Guard& x, const Guard& y) {
        if (x.k != y.k) return x.k < y.k;
        return x.expr.terms() < y.expr.terms();
    });
    if (tag == Tag::None) {
        if (!phase.is_zero()) fail("domain-mismatch", "phase without a domain");
        return;
    }
    Rational c0 = phase.constant_term();
    if (!c0.is_zero()) {
        coeff *= GaussCoeff::phase(c0 / Rational(2 * N), tag);
        phase -= Poly(c0);
    }
}

GTerm GTerm::operator*(const GTerm& o) const {
    if (is_zero() || o.is_zero()) return zero();
    GTerm r;
    r.coeff = coeff * o.coeff;
    if (tag == Tag::None) {
        r.tag = o.tag;
        r.N = o.N;
    } else {
        r.tag = tag;
        r.N = N;
        if (o.tag != Tag::None && (o.tag != tag || o.N != N))
            fail("domain-mismatch", "product of terms from different domains");
    }
    r.phase = phase + o.phase;
    r.guards = guards;
    r.guards.insert(r.guards.end(), o.guards.begin(), o.guards.end());
    r.normalize();
    return r;
}

GTerm GTerm::substitute(const std::string& v, const Poly& by) const {
    if (is_zero()) return *this;
    GTerm r = *this;
    r.phase = phase.substitute(v, by);
    for (auto& g : r.guards) g.expr = g.expr.substitute(v, by);
    r.normalize();
    return r;
}

GTerm GTerm::scaled(const GaussCoeff& c) const {
    GTerm r = *this;
    r.coeff = coeff * c;
    if (r.coeff.is_zero()) return zero();
    return r;
}

bool GTerm::guards_hold(const Assignment& a) const {
    for (const auto& g : guards) {
        if (g.expr.eval_scaled_mod(a, g.k) != 0) return false;
    }
    return true;
}

Rational GTerm::phase_at(const Assignment& a) const {
    if (phase.is_zero()) return Rational(0);
    const i64 d = phase.denominator();
    const i64 mod = narrow(static_cast<i128>(2) * N * d);
    return Rational(phase.eval_scaled_mod(a, mod), mod);
}

FpElem GTerm::eval_fp(const Params& pr, const Assignment& a) const {
    if (is_zero() || !guards_hold(a)) return {0};
    u64 v = to_fp(pr, coeff).value;
    if (!phase.is_zero()) v = mul_mod(v, char_e(pr, phase_at(a)).value, pr.p);
    return {v};
}

ComplexVal GTerm::eval_complex(const Params& pr, const Assignment& a) const {
    if (is_zero() || !guards_hold(a)) return {};
    GaussCoeff c = coeff;
    if (!phase.is_zero()) c *= GaussCoeff::phase(phase_at(a), tag);
    return to_complex(pr, c);
}

std::string GTerm::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << coeff.str();
    if (!phase.is_zero()) os << " * e((" << phase.str() << ")/2N @" << tag_name(tag) << ")";
    for (const auto& g : guards) os << " if " << g.k << " | (" << g.expr.str() << ")";
    return os.str();
}

bool periodic_in(const Poly& P, const std::string& y, i64 n, i64 twoN) {
    Rational alpha;
    Poly beta, rest;
    P.split(y, alpha, beta, rest);
    Rational c1 = alpha * Rational(2 * n) / Rational(twoN);
    Rational c2 = alpha * Rational(n) * Rational(n) / Rational(twoN);
    Poly c3 = beta * Poly(Rational(n) / Rational(twoN));
    return c1.is_integer() && c2.is_integer() && c3.is_integral();
}

GTerm sum_out(const GTerm& t_in, const std::string& y, i64 n, Mode mode, const Params& pr, bool periodic_known) {
    if (n <= 0) fail("bad-modulus", "summation range must be positive");
    if (t_in.is_zero()) return t_in;
    GTerm t = t_in;
    bool substituted = false;
    const i64 n_in = n;

    // Solve the guards that mention y: k | u*y + v.
    for (;;) {
        auto it = std::find_if(t.guards.begin(), t.guards.end(),
                               [&](const Guard& g) { return g.expr.has_var(y); });
        if (it == t.guards.end()) break;
        Guard g = *it;
        t.guards.erase(it);
        Rational q;
        Poly lin, v;
        g.expr.split(y, q, lin, v);
        if (!q.is_zero() || !lin.is_constant())
            fail("nonlinear-guard", "guard is not linear in " + y);
        const i64 u = mod64(lin.constant_term().num(), g.k);
        if (u == 0) {
            t.add_guard(g.k, v);
            continue;
        }
        const i64 gg = gcd64(u, g.k);
        t.add_guard(gg, v);
        if (t.is_zero()) return t;
        const i64 k1 = g.k / gg;
        if (k1 == 1) continue;
        if (n % k1 != 0)
            fail("non-periodic-guard", "guard modulus " + std::to_string(k1) + " does not divide range " +
                                           std::to_string(n));
        const i64 inv = inv_mod((u / gg) % k1, k1);
        Poly d = v * Poly(Rational(-inv, gg));
        t = t.substitute(y, Poly::var(y) * Poly(Rational(k1)) + d);
        if (t.is_zero()) return t;
        n /= k1;
        substituted = true;
    }

    // one point left: its value is the summand at y = 0, no periodicity needed
    if (n == 1) {
        t = t.substitute(y, Poly());
        t.normalize();
        return t;
    }

    Rational alpha;
    Poly beta, rest;
    t.phase.split(y, alpha, beta, rest);

    const bool u_scale = t.tag == Tag::U;
    // A degenerate sum counts points: the factor i of a U-domain count is j^2.
    auto count_scale = [&](GaussCoeff g, i64 range) {
        if (u_scale && range % pr.i == 0) g = with_symbolic_j(pr, with_symbolic_j(pr, g));
        return g;
    };
    if (alpha.is_zero() && beta.is_zero()) {
        if (mode == Mode::Strict && n > 1) return GTerm::zero();
        t.coeff *= count_scale(GaussCoeff::rational(Rational(n)), n);
        t.normalize();
        return t;
    }
    if (mode == Mode::Strict && alpha.is_zero() && n > 1) return GTerm::zero();

    const i64 twoN = 2 * t.N;
    // Either the original summand is n_in-periodic in y (then the reduced one
    // is n-periodic in the new variable) or the reduced one is directly.
    if (!periodic_known && !periodic_in(t.phase, y, n, twoN) &&
        !(t_in.tag == t.tag && periodic_in(t_in.phase, y, n_in, twoN)))
        fail("non-periodic-phase", "summand is not periodic in " + y + " over Z/" + std::to_string(n));

    if (!substituted && n == t.N && alpha.is_integer() && !alpha.is_zero()) {
        const Poly L = beta * Poly(Rational(1, 2));
        const i64 a = alpha.num();
        const i64 aa = a < 0 ? -a : a;
        if (L.is_integral() && t.N % (4 * aa) == 0) {
            GaussCoeff g = GaussCoeff::rational(Rational(aa)) * GaussCoeff::sqrt_of(Rational(t.N, aa)) *
                           GaussCoeff::e8_pow(a > 0 ? 1 : -1);
            if (u_scale && t.N % pr.i == 0) g = with_symbolic_j(pr, g);
            t.coeff *= g;
            t.phase = rest - L * L * Poly(Rational(1, a));
            t.add_guard(aa, L);
            t.normalize();
            return t;
        }
    }

    i64 c = n;
    c = lcm64(c, (alpha / Rational(twoN)).den());
    for (const auto& [m, co] : beta.terms()) c = lcm64(c, (co / Rational(twoN)).den());
    const Rational scale(c, twoN);
    const i64 a = narrow(static_cast<i128>((alpha * scale).num()));
    if (!(alpha * scale).is_integer()) fail("internal", "quadratic coefficient not cleared");
    GaussGeneral s = gauss_general_sym(a, beta * Poly(scale), c);
    GaussCoeff g = GaussCoeff::rational(Rational(n, c)) * s.coeff;
    if (alpha.is_zero()) {
        g = count_scale(g, c);
    } else if (u_scale && c % pr.i == 0) {
        g = with_symbolic_j(pr, g);
    }
    t.coeff *= g;
    t.phase = rest + s.phase * Poly(Rational(twoN));
    for (const auto& gd : s.guards) t.add_guard(gd.k, gd.expr);
    t.normalize();
    return t;
}

} // namespace pfg
