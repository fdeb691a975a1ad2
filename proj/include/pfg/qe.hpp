#pragma once

#include "pfg/expr.hpp"
#include "pfg/gterm.hpp"

#include <string>
#include <vector>

namespace pfg {

// Quantifier-free normal form: a sum of guarded Gaussian terms.
struct NormalForm {
    std::vector<GTerm> terms;

    std::set<std::string> vars() const;
    FpElem eval_fp(const Params& pr, const Assignment& a) const;
    ComplexVal eval_complex(const Params& pr, const Assignment& a) const;
    // "t1 + t2 + ...", each term as "coeff * e((P)/2N @T) if k | (expr)"; "0" if empty.
    std::string str() const;
};

// Products are distributed over sums and quantifiers are summed out
// innermost first. Terms that differ only by a rational factor are merged.
NormalForm eliminate(const Expr& e, const Params& pr, Mode mode = Mode::Extended);

} // namespace pfg
