#include "pfg/poly.hpp"
#include "pfg/error.hpp"

#include <algorithm>

namespace pfg {

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

Poly Poly::var(const std::string& name) { return monomial({name}, Rational(1)); }

Poly Poly::monomial(const Monomial& m, const Rational& c) {
    Poly p;
    Monomial s = m;
    std::sort(s.begin(), s.end());
    p.add_term(s, c);
    return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int Poly::degree() const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
    return d;
}

int Poly::degree_in(const std::string& v) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, static_cast<int>(std::count(m.begin(), m.end(), v)));
    return d;
}

std::set<std::string> Poly::vars() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_) out.insert(m.begin(), m.end());
    return out;
}

Rational Poly::constant_term() const { return coeff({}); }

Rational Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            std::sort(m.begin(), m.end());
            r.add_term(m, c1 * c2);
        }
    }
    return r;
}

Poly Poly::substitute(const std::string& v, const Poly& by) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        Poly t(c);
        for (const auto& x : m) t = t * (x == v ? by : var(x));
        r += t;
    }
    return r;
}

void Poly::split(const std::string& v, Rational& q, Poly& lin, Poly& rest) const {
    q = Rational(0);
    lin = Poly();
    rest = Poly();
    for (const auto& [m, c] : terms_) {
        auto k = std::count(m.begin(), m.end(), v);
        Monomial other;
        for (const auto& x : m)
            if (x != v) other.push_back(x);
        if (k == 0) {
            rest.add_term(m, c);
        } else if (k == 1) {
            lin.add_term(other, c);
        } else if (k == 2 && other.empty()) {
            q += c;
        } else {
            fail("nonquadratic-after-combination", "term of degree > 2 in bound variable " + v);
        }
    }
}

i64 Poly::denominator() const {
    i64 d = 1;
    for (const auto& [m, c] : terms_) d = lcm64(d, c.den());
    return d;
}

i64 Poly::content() const {
    i64 d = denominator();
    i64 g = 0;
    for (const auto& [m, c] : terms_) g = gcd64(g, narrow(static_cast<i128>(c.num()) * (d / c.den())));
    return g;
}

Rational Poly::eval(const Assignment& a) const {
    Rational s(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& x : m) {
            auto it = a.find(x);
            if (it == a.end()) fail("unbound-variable", "no value for " + x);
            t *= Rational(it->second);
        }
        s += t;
    }
    return s;
}

i64 Poly::eval_scaled_mod(const Assignment& a, i64 mod) const {
    const i64 d = denominator();
    i128 s = 0;
    for (const auto& [m, c] : terms_) {
        i128 t = mod128(static_cast<i128>(c.num()) * (d / c.den()), mod);
        for (const auto& x : m) {
            auto it = a.find(x);
            if (it == a.end()) fail("unbound-variable", "no value for " + x);
            t = mod128(t * mod64(it->second, mod), mod);
        }
        s = mod128(s + t, mod);
    }
    return static_cast<i64>(s);
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // higher degree first, then lexicographic
    std::vector<std::pair<Monomial, Rational>> ts(terms_.begin(), terms_.end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
        return x.first.size() > y.first.size();
    });
    for (const auto& [m, c] : ts) {
        Rational ac = c.abs();
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t k = 0; k < m.size();) {
            std::size_t e = k;
            while (e < m.size() && m[e] == m[k]) ++e;
            if (!mono.empty()) mono += "*";
            mono += m[k];
            if (e - k > 1) mono += "^" + std::to_string(e - k);
            k = e;
        }
        if (mono.empty()) {
            out += ac.str();
        } else if (ac == Rational(1)) {
            out += mono;
        } else if (ac.is_integer()) {
            out += ac.str() + "*" + mono;
        } else {
            out += "(" + ac.str() + ")*" + mono;
        }
    }
    return out;
}

} // namespace pfg
