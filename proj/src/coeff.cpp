#include "pfg/coeff.hpp"
#include "pfg/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace pfg {

ComplexVal operator*(const ComplexVal& x, const ComplexVal& y) {
    ComplexVal r(x.z() * y.z());
    r.overflow = x.overflow || y.overflow;
    return r;
}

ComplexVal operator+(const ComplexVal& x, const ComplexVal& y) {
    return {x.re + y.re, x.im + y.im, x.overflow || y.overflow};
}

ComplexVal operator-(const ComplexVal& x, const ComplexVal& y) {
    return {x.re - y.re, x.im - y.im, x.overflow || y.overflow};
}

GaussCoeff GaussCoeff::zero() {
    GaussCoeff g;
    g.zero_ = true;
    g.c_ = Rational(0);
    return g;
}

GaussCoeff GaussCoeff::rational(const Rational& c) {
    GaussCoeff g;
    g.c_ = c;
    g.normalize();
    return g;
}

GaussCoeff GaussCoeff::sqrt_of(const Rational& x) {
    if (x.sign() < 0) fail("bad-modulus", "square root of negative rational " + x.str());
    if (x.is_zero()) return zero();
    i64 s = 1, r = 1;
    square_free_split(narrow(static_cast<i128>(x.num()) * x.den()), s, r);
    GaussCoeff g;
    g.c_ = Rational(s, x.den());
    g.rho_ = r;
    return g;
}

GaussCoeff GaussCoeff::j_pow(i64 a) {
    GaussCoeff g;
    g.a_ = a;
    return g;
}

GaussCoeff GaussCoeff::e8_pow(i64 b) {
    GaussCoeff g;
    g.b_ = static_cast<int>(mod64(b, 8));
    g.normalize();
    return g;
}

GaussCoeff GaussCoeff::phase(const Phase& ph) {
    GaussCoeff g;
    g.phase_ = Phase(ph.q, ph.tag);
    g.normalize();
    return g;
}

void GaussCoeff::normalize() {
    if (zero_ || c_.is_zero()) {
        *this = GaussCoeff();
        zero_ = true;
        c_ = Rational(0);
        return;
    }
    b_ = static_cast<int>(mod64(b_, 8));
    // e8^4 = -1
    if (b_ >= 4) {
        b_ -= 4;
        c_ = -c_;
    }
    phase_ = Phase(phase_.q, phase_.tag);
    // e(1/2@V) = -1 under every map; U phases are left alone because the
    // limit sends them to real exponentials, not to signs
    if (phase_.tag == Tag::V && phase_.q >= Rational(1, 2)) {
        phase_ = Phase(phase_.q - Rational(1, 2), Tag::V);
        c_ = -c_;
    }
}

GaussCoeff GaussCoeff::operator*(const GaussCoeff& o) const {
    if (zero_ || o.zero_) return zero();
    GaussCoeff g;
    i64 gg = gcd64(rho_, o.rho_);
    g.c_ = c_ * o.c_ * Rational(gg);
    g.rho_ = narrow(static_cast<i128>(rho_ / gg) * (o.rho_ / gg));
    g.a_ = narrow(static_cast<i128>(a_) + o.a_);
    g.b_ = b_ + o.b_;
    Tag t = phase_.tag;
    if (t == Tag::None) {
        t = o.phase_.tag;
    } else if (o.phase_.tag != Tag::None && o.phase_.tag != t) {
        fail("domain-mismatch", "product of a U-phase and a V-phase");
    }
    g.phase_ = Phase(phase_.q + o.phase_.q, t);
    g.normalize();
    return g;
}

GaussCoeff GaussCoeff::inverse() const {
    if (zero_) fail("zero-element", "inverse of zero coefficient");
    GaussCoeff g;
    g.c_ = Rational(1) / (c_ * Rational(rho_));
    g.rho_ = rho_;
    g.a_ = -a_;
    g.b_ = -b_;
    g.phase_ = Phase(-phase_.q, phase_.tag);
    g.normalize();
    return g;
}

GaussCoeff GaussCoeff::pow(i64 n) const {
    if (n < 0) return inverse().pow(-n);
    GaussCoeff r, base = *this;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

GaussCoeff coeff_mul(const GaussCoeff& x, const GaussCoeff& y) { return x * y; }

GaussCoeff coeff_conj(const GaussCoeff& x) {
    if (x.zero_) return x;
    GaussCoeff g = x;
    g.a_ = -x.a_;
    g.b_ = -x.b_;
    if (x.phase_.tag == Tag::V) g.phase_ = Phase(-x.phase_.q, Tag::V);
    g.normalize();
    return g;
}

GaussCoeff with_phase(const GaussCoeff& x, const Phase& ph) {
    if (x.zero_) return x;
    GaussCoeff g = x;
    g.phase_ = ph;
    g.normalize();
    return g;
}

FpElem to_fp(const Params& pr, const GaussCoeff& x) {
    if (x.is_zero()) return {0};
    const u64 p = pr.p;
    u64 v = to_residue(x.c(), p);
    if (x.rho() != 1) v = mul_mod(v, sqrt_rational(pr, Rational(x.rho())).value, p);
    if (x.a() != 0) {
        u64 jr = to_residue(pr.j, p);
        if (x.a() < 0) jr = inv_mod_p(jr, p);
        v = mul_mod(v, pow_mod(jr, static_cast<u64>(x.a() < 0 ? -x.a() : x.a()), p), p);
    }
    if (x.b() != 0) v = mul_mod(v, char_e(pr, Rational(x.b(), 8)).value, p);
    if (!x.ph().is_trivial()) v = mul_mod(v, char_e(pr, x.ph()).value, p);
    return {v};
}

namespace {

std::complex<double> unit_phase(double turns) {
    const double t = 2.0 * std::numbers::pi * turns;
    return {std::cos(t), std::sin(t)};
}

double magnitude(const GaussCoeff& x) {
    return x.c().to_double() * std::sqrt(static_cast<double>(x.rho()));
}

} // namespace

ComplexVal to_complex(const Params& pr, const GaussCoeff& x) {
    if (x.is_zero()) return {};
    std::complex<double> z = magnitude(x);
    // j -> e^{i pi/4}, e8 -> e^{-i pi/4}
    z *= unit_phase(static_cast<double>(mod64(x.a() - x.b(), 8)) / 8.0);
    const Phase& ph = x.ph();
    bool overflow = false;
    if (ph.tag == Tag::V) {
        z *= unit_phase(-ph.q.to_double());
    } else if (ph.tag == Tag::U) {
        Rational q = ph.q;
        if (q > Rational(1, 2)) q -= Rational(1);
        const double e = 2.0 * std::numbers::pi * q.to_double() *
                         (static_cast<double>(pr.N_u) / static_cast<double>(pr.N_v));
        if (e > 700.0) overflow = true;
        z *= std::exp(std::min(e, 700.0));
    }
    ComplexVal r(z);
    r.overflow = overflow || !std::isfinite(r.re) || !std::isfinite(r.im);
    return r;
}

ComplexVal to_complex_std(const Params& pr, const GaussCoeff& x) {
    if (x.is_zero()) return {};
    std::complex<double> z = magnitude(x);
    z *= std::pow(static_cast<double>(pr.j), static_cast<double>(x.a()));
    z *= unit_phase(static_cast<double>(x.b()) / 8.0);
    if (!x.ph().is_trivial()) z *= unit_phase(x.ph().q.to_double());
    ComplexVal r(z);
    r.overflow = !std::isfinite(r.re) || !std::isfinite(r.im);
    return r;
}

std::string GaussCoeff::str() const {
    if (zero_) return "0";
    std::vector<std::string> parts;
    parts.push_back(c_.str());
    if (rho_ != 1) parts.push_back("sqrt(" + std::to_string(rho_) + ")");
    if (a_ != 0) parts.push_back("j^" + std::to_string(a_));
    if (b_ != 0) parts.push_back("e8^" + std::to_string(b_));
    if (!phase_.is_trivial()) parts.push_back("e(" + phase_.q.str() + "@" + tag_name(phase_.tag) + ")");
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? " * " : "") + parts[k];
    return out;
}

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

i64 parse_exponent(const std::string& f, std::size_t pos) {
    if (pos >= f.size()) return 1;
    if (f[pos] != '^') fail("syntax-error", "bad coefficient factor '" + f + "'");
    std::size_t used = 0;
    std::string e = f.substr(pos + 1);
    i64 v = 0;
    try {
        v = std::stoll(e, &used);
    } catch (const std::exception&) {
        fail("syntax-error", "bad exponent in '" + f + "'");
    }
    if (used != e.size()) fail("syntax-error", "bad exponent in '" + f + "'");
    return v;
}

GaussCoeff parse_factor(const std::string& raw) {
    const std::string f = strip(raw);
    if (f.empty()) fail("syntax-error", "empty coefficient factor");
    if (f.rfind("sqrt(", 0) == 0 && f.back() == ')')
        return GaussCoeff::sqrt_of(Rational::parse(strip(f.substr(5, f.size() - 6))));
    if (f.rfind("e8", 0) == 0) return GaussCoeff::e8_pow(parse_exponent(f, 2));
    if (f.rfind("e(", 0) == 0 && f.back() == ')') {
        std::string body = f.substr(2, f.size() - 3);
        auto at = body.find('@');
        if (at == std::string::npos) {
            Rational q = Rational::parse(strip(body));
            if (!q.frac().is_zero()) fail("syntax-error", "phase without domain tag in '" + f + "'");
            return GaussCoeff();
        }
        return GaussCoeff::phase(Rational::parse(strip(body.substr(0, at))), parse_tag(strip(body.substr(at + 1))));
    }
    if (f[0] == 'j') return GaussCoeff::j_pow(parse_exponent(f, 1));
    return GaussCoeff::rational(Rational::parse(f));
}

} // namespace

GaussCoeff GaussCoeff::parse(const std::string& text) {
    GaussCoeff g;
    int depth = 0;
    std::string cur;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '*' && depth == 0) {
            g = g * parse_factor(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (depth != 0) fail("syntax-error", "unbalanced parentheses in coefficient");
    return g * parse_factor(cur);
}

} // namespace pfg
