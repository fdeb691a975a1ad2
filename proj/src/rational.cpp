#include "pfg/rational.hpp"
#include "pfg/error.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>

namespace pfg {

namespace {

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

i64 gcd64(i64 a, i64 b) { return static_cast<i64>(gcd128(a, b)); }

i64 lcm64(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    i64 g = gcd64(a, b);
    return narrow(static_cast<i128>(a / g) * (b < 0 ? -b : b) * (a < 0 ? -1 : 1));
}

i64 mod64(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mod128(i128 a, i64 m) {
    i128 r = a % m;
    return static_cast<i64>(r < 0 ? r + m : r);
}

i64 inv_mod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 g = m, x = 0, x1 = 1, r = mod64(a, m);
    while (r != 0) {
        i64 q = g / r;
        i64 t = g - q * r;
        g = r;
        r = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) fail("not-invertible", std::to_string(a) + " mod " + std::to_string(m));
    return mod64(x, m);
}

i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        fail("overflow", "value exceeds 64-bit range");
    return static_cast<i64>(v);
}

Rational::Rational(i64 n, i64 d) {
    *this = from128(n, d);
}

Rational Rational::from128(i128 n, i128 d) {
    if (d == 0) fail("division-by-zero", "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = narrow(-static_cast<i128>(num_));
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    if (den_ == o.den_) return from128(static_cast<i128>(num_) + o.num_, den_);
    return from128(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                   static_cast<i128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    // Cross-cancel first so that products of reduced fractions rarely overflow.
    i64 g1 = gcd64(num_, o.den_), g2 = gcd64(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return from128(static_cast<i128>(num_ / g1) * (o.num_ / g2),
                   static_cast<i128>(den_ / g2) * (o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) fail("division-by-zero", "rational division by zero");
    return *this * from128(o.den_, o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    i128 l = static_cast<i128>(num_) * o.den_, r = static_cast<i128>(o.num_) * den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

i64 Rational::floor() const {
    i64 q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rational Rational::frac() const {
    Rational r;
    r.num_ = mod64(num_, den_);
    r.den_ = den_;
    if (r.num_ == 0) r.den_ = 1;
    return r;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    auto to_i64 = [&](const std::string& t) -> i64 {
        if (t.empty()) fail("syntax-error", "bad rational '" + s + "'");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(t, &pos);
        } catch (const std::exception&) {
            fail("syntax-error", "bad rational '" + s + "'");
        }
        if (pos != t.size()) fail("syntax-error", "bad rational '" + s + "'");
        return v;
    };
    if (slash == std::string::npos) return Rational(to_i64(s));
    return Rational(to_i64(s.substr(0, slash)), to_i64(s.substr(slash + 1)));
}

} // namespace pfg
