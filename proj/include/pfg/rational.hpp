#pragma once

#include <cstdint>
#include <string>
#include <compare>

namespace pfg {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

i64 gcd64(i64 a, i64 b);
i64 lcm64(i64 a, i64 b);
// Floor-mod into [0, m).
i64 mod64(i64 a, i64 m);
i64 mod128(i128 a, i64 m);
// Inverse of a modulo m (m >= 1, gcd(a, m) = 1); m = 1 gives 0.
i64 inv_mod(i64 a, i64 m);
// Narrow with an overflow check.
i64 narrow(i128 v);

// Exact rational with 64-bit parts, always reduced with den > 0.
// Operations go through 128-bit intermediates and throw "overflow" when
// the reduced result no longer fits.
class Rational {
public:
    Rational() = default;
    Rational(i64 n) : num_(n), den_(1) {} // NOLINT(google-explicit-constructor)
    Rational(i64 n, i64 d);

    static Rational from128(i128 n, i128 d);

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    // Representative of this mod 1 in [0, 1).
    Rational frac() const;
    i64 floor() const;
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const;
    // Accepts "n", "-n", "n/d".
    static Rational parse(const std::string& s);

private:
    i64 num_ = 0;
    i64 den_ = 1;
};

} // namespace pfg
