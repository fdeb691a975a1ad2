#pragma once

#include "pfg/coeff.hpp"
#include "pfg/poly.hpp"

#include <vector>

namespace pfg {

enum class Mode { Extended, Strict };
enum class Backend { Fp, Complex };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);
const char* backend_name(Backend b);
Backend parse_backend(const std::string& s);

// Sum of e((a n^2 + 2 b n)/2M) over one period.
struct GaussSumSpec {
    i64 a = 1;
    i64 b = 0;
    i64 M = 16;
    Tag domain = Tag::V;
};

// Throws precondition-violation unless 4|a| | M (a != 0) and M > 0.
void check_spec(const GaussSumSpec& s);

// a != 0: (1/|a|) * sum over n in Z/M, which is the sum over 0 < n <= M/|a|
// whenever a | b (and 0 otherwise). a = 0: the full character sum over Z/M.
// The range is cut into `threads` contiguous blocks reduced in order.
FpElem gauss_brute_fp(const Params& pr, const GaussSumSpec& s, int threads = 1);
// Same sum in the standard embedding, zeta = e^{pi i/M}, compensated summation.
ComplexVal gauss_brute_complex(const GaussSumSpec& s, int threads = 1);

// sqrt(M/|a|) e8^{sgn a} e(-b^2/(2aM)) if a | b, else 0; a = 0 gives M or 0
// in extended mode and always 0 in strict mode. With params given and a
// U-domain modulus divisible by i, the factor sqrt(i) is kept as j.
GaussCoeff gauss_closed(const GaussSumSpec& s, Mode mode = Mode::Extended, const Params* pr = nullptr);

// (1/m) sum_{0<n<=N_u/a} e(a n^2/2N_u @U) = e8 j / sqrt(a).
GaussCoeff gauss_closed_sm(const Params& pr, i64 a);
FpElem gauss_brute_sm(const Params& pr, i64 a);

int jacobi(i64 a, i64 n);

// k | expr, expr an integer-valued polynomial in free variables.
struct Guard {
    i64 k = 1;
    Poly expr;
    bool operator==(const Guard&) const = default;
};

// Sum over x in Z/c of e((a x^2 + beta x)/c) where beta is an integer-valued
// polynomial in other variables: coeff * e(phase), valid where all guards hold.
// Phase tags are left to the caller.
struct GaussGeneral {
    GaussCoeff coeff;
    std::vector<Guard> guards;
    Poly phase;
};
GaussGeneral gauss_general_sym(i64 a, const Poly& beta, i64 c);

// Numeric case of the above; phases carry the given tag.
GaussCoeff gauss_general(i64 a, i64 beta, i64 c, Tag tag);

// Multiply by j * (1/j): same number, with sqrt(i) made symbolic.
GaussCoeff with_symbolic_j(const Params& pr, const GaussCoeff& x);

} // namespace pfg
