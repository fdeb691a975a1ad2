#pragma once

#include "pfg/expr.hpp"

#include <string>

namespace pfg {

// Grammar:
//   expr   := prod ('+' prod)*
//   prod   := term ('*' term)*
//   term   := rational | 'j' | 'e8' | 'sqrt(' rational ')'
//           | 'e(' poly '/2N' '@' ('U'|'V') ')'
//           | ('sum'|'int') ident '.' expr | '(' expr ')'
// A quantifier body extends as far right as possible. Phase polynomials have
// integer coefficients and total degree at most 2.
// Errors: syntax-error (message carries line:column), degree-error.
ExprPtr parse_expr(const std::string& text);

} // namespace pfg
