#pragma once

#include "pfg/gauss.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pfg {

// One guarded Gaussian term: coeff * e(phase/2N @tag), nonzero only where
// every guard k | expr holds. This is the working representation behind
// states, kernels and the quantifier-free layer of the DSL.
class GTerm {
public:
    GaussCoeff coeff;
    Tag tag = Tag::None;
    i64 N = 0;
    Poly phase;
    std::vector<Guard> guards;

    GTerm() = default;
    explicit GTerm(GaussCoeff c) : coeff(std::move(c)) {}
    static GTerm zero() { return GTerm(GaussCoeff::zero()); }
    // e(phase/2N) in the given domain
    static GTerm exp(const Poly& phase, Tag tag, i64 N);

    bool is_zero() const { return coeff.is_zero(); }
    std::set<std::string> vars() const;

    void add_guard(i64 k, const Poly& expr);
    GTerm operator*(const GTerm& o) const;
    GTerm substitute(const std::string& v, const Poly& by) const;
    GTerm scaled(const GaussCoeff& c) const;

    // Guards are canonicalized and sorted, the constant part of the phase is
    // folded into the coefficient, a false guard zeroes the term.
    void normalize();

    bool guards_hold(const Assignment& a) const;
    // Phase value mod 1 at an assignment (guards assumed to hold).
    Rational phase_at(const Assignment& a) const;
    FpElem eval_fp(const Params& pr, const Assignment& a) const;
    ComplexVal eval_complex(const Params& pr, const Assignment& a) const;

    bool operator==(const GTerm&) const = default;
    std::string str() const;
};

// Canonical form of k | expr; nullopt when the guard is always true.
// Throws nothing; a constant false guard comes back as {0, 1}.
std::optional<Guard> normalize_guard(i64 k, const Poly& expr);

// Sum of the term over y in Z/n (n = N for a domain variable). Applies the
// closed form when its hypotheses hold and the general evaluator otherwise.
// Errors: non-periodic-guard, non-periodic-phase, nonquadratic-after-combination.
// periodic_known: the caller has shown the summand is n-periodic in y (for
// instance on the literal expression, before inner sums were eliminated).
GTerm sum_out(const GTerm& t, const std::string& y, i64 n, Mode mode, const Params& pr,
              bool periodic_known = false);

// Sufficient test that e(P/2N) is n-periodic in y for every integer value of
// the other variables. Exact when P has integer coefficients.
bool periodic_in(const Poly& P, const std::string& y, i64 n, i64 twoN);

} // namespace pfg
