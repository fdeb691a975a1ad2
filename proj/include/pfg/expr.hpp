#pragma once

#include "pfg/coeff.hpp"
#include "pfg/gauss.hpp"
#include "pfg/poly.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace pfg {

enum class ExprKind { Rational, J, E8, Sqrt, Phase, Mul, Add, Sum, Int };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// AST of the Gaussian expression language. Mul and Add are n-ary; Sum and
// Int bind `var` over one copy of the domain.
struct Expr {
    ExprKind kind = ExprKind::Rational;
    Rational value;         // Rational literal, Sqrt argument
    Poly poly;              // Phase: e(poly/2N @tag)
    Tag tag = Tag::V;
    std::string var;        // Sum / Int
    std::vector<ExprPtr> kids;
    int line = 0, col = 0;  // source position, 0 if synthesized

    static ExprPtr rational(const Rational& r);
    static ExprPtr j();
    static ExprPtr e8();
    static ExprPtr sqrt(const Rational& r);
    static ExprPtr phase(const Poly& p, Tag t);
    static ExprPtr mul(std::vector<ExprPtr> kids);
    static ExprPtr add(std::vector<ExprPtr> kids);
    static ExprPtr sum(const std::string& v, ExprPtr body);
    static ExprPtr integral(const std::string& v, ExprPtr body);
};

// Structural equality, source positions ignored.
bool same_structure(const Expr& a, const Expr& b);
std::set<std::string> free_vars(const Expr& e);
int count_quantifiers(const Expr& e);
std::string format(const Expr& e);

// Domain a bound variable ranges over: tags of the phases mentioning it,
// else of any phase in the body, else V. Mixed tags are domain-mismatch.
Tag bound_domain(const Expr& quantifier);

// Literal evaluation; quantifiers are summed term by term over [-N/2, N/2)
// and `int` carries the factor 1/m.
FpElem eval_fp(const Expr& e, const Params& pr, const Assignment& a);
ComplexVal eval_complex(const Expr& e, const Params& pr, const Assignment& a);

} // namespace pfg
