#pragma once

#include "pfg/arith.hpp"

#include <complex>
#include <string>

namespace pfg {

struct ComplexVal {
    double re = 0.0;
    double im = 0.0;
    bool overflow = false;

    ComplexVal() = default;
    ComplexVal(double r, double i, bool ovf = false) : re(r), im(i), overflow(ovf) {}
    explicit ComplexVal(std::complex<double> z) : re(z.real()), im(z.imag()) {}
    std::complex<double> z() const { return {re, im}; }
    double abs() const { return std::abs(z()); }
    double arg() const { return std::arg(z()); }
};

ComplexVal operator*(const ComplexVal& x, const ComplexVal& y);
ComplexVal operator+(const ComplexVal& x, const ComplexVal& y);
ComplexVal operator-(const ComplexVal& x, const ComplexVal& y);

// c * sqrt(rho) * j^a * e8^b * e(q), with rho square-free, b in [0,8).
// The exponent a of j is unbounded: j is an honest integer residue in F_p.
class GaussCoeff {
public:
    GaussCoeff() = default; // unit
    static GaussCoeff zero();
    static GaussCoeff rational(const Rational& c);
    // sqrt of a non-negative rational, squares folded into c.
    static GaussCoeff sqrt_of(const Rational& x);
    static GaussCoeff j_pow(i64 a);
    static GaussCoeff e8_pow(i64 b);
    static GaussCoeff phase(const Phase& ph);
    static GaussCoeff phase(const Rational& q, Tag t) { return phase(Phase(q, t)); }

    bool is_zero() const { return zero_; }
    const Rational& c() const { return c_; }
    i64 rho() const { return rho_; }
    i64 a() const { return a_; }
    int b() const { return b_; }
    const Phase& ph() const { return phase_; }

    GaussCoeff operator*(const GaussCoeff& o) const;
    GaussCoeff& operator*=(const GaussCoeff& o) { return *this = *this * o; }
    GaussCoeff inverse() const;
    GaussCoeff pow(i64 n) const;
    GaussCoeff operator-() const { return *this * rational(-1); }

    bool operator==(const GaussCoeff&) const = default;

    std::string str() const;
    static GaussCoeff parse(const std::string& text);

private:
    bool zero_ = false;
    Rational c_{1};
    i64 rho_ = 1;
    i64 a_ = 0;
    int b_ = 0;
    Phase phase_;

    void normalize();
    friend GaussCoeff coeff_conj(const GaussCoeff& x);
    friend GaussCoeff with_phase(const GaussCoeff& x, const Phase& ph);
};

GaussCoeff coeff_mul(const GaussCoeff& x, const GaussCoeff& y);
// Inverts j, e8 and V-phases; fixes c, rho and U-phases.
GaussCoeff coeff_conj(const GaussCoeff& x);
// Same coefficient with its phase replaced (used by the Wick retagging).
GaussCoeff with_phase(const GaussCoeff& x, const Phase& ph);

FpElem to_fp(const Params& pr, const GaussCoeff& x);

// Limit map: j -> e^{i pi/4}, e8 -> e^{-i pi/4}, e(q@V) -> e^{-2 pi i q},
// e(q@U) -> e^{2 pi q N_u/N_v} with q taken in (-1/2, 1/2].
ComplexVal to_complex(const Params& pr, const GaussCoeff& x);
// Standard cyclotomic embedding: e(q) -> e^{2 pi i q}, e8 -> e^{i pi/4},
// j -> the integer j.
ComplexVal to_complex_std(const Params& pr, const GaussCoeff& x);

} // namespace pfg
