#pragma once

#include "pfg/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace pfg {

// Sorted multiset of variable names; {} is the constant monomial.
using Monomial = std::vector<std::string>;
using Assignment = std::map<std::string, i64>;

// Sparse multivariate polynomial with rational coefficients. Terms are kept
// in a std::map so iteration (and printing) order is deterministic.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c); // NOLINT(google-explicit-constructor)
    static Poly var(const std::string& name);
    static Poly monomial(const Monomial& m, const Rational& c);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    int degree_in(const std::string& v) const;
    std::set<std::string> vars() const;
    bool has_var(const std::string& v) const { return degree_in(v) > 0; }
    bool is_constant() const { return degree() <= 0; }
    Rational constant_term() const;
    Rational coeff(const Monomial& m) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly&) const = default;

    Poly substitute(const std::string& v, const Poly& by) const;

    // this = q*v^2 + lin*v + rest with lin, rest free of v (degree <= 2 in v).
    void split(const std::string& v, Rational& q, Poly& lin, Poly& rest) const;

    // lcm of coefficient denominators
    i64 denominator() const;
    bool is_integral() const { return denominator() == 1; }
    // gcd of the numerators after clearing denominators (0 for the zero poly)
    i64 content() const;

    Rational eval(const Assignment& a) const;
    // Exact value mod m of an integer-valued evaluation of D*this, D = denominator().
    i64 eval_scaled_mod(const Assignment& a, i64 m) const;

    // Lexicographic by monomial, e.g. "-r^2 + 2*p*r + 1/2".
    std::string str() const;

private:
    std::map<Monomial, Rational> terms_;
    void add_term(const Monomial& m, const Rational& c);
};

} // namespace pfg
