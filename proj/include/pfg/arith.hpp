#pragma once

#include "pfg/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace pfg {

struct ParamSpec {
    i64 m_base = 12;
    i64 k_mult = 2;
    i64 prime_search_limit = 1000000;
    i64 seed = 0; // reserved; the search is deterministic

    void validate() const;
};

// Finite parameter tower: l = m^2, j = m*k, i = j^2, N_v = l, N_u = l*i,
// p the smallest prime 1 mod 8*N_u, epsilon its smallest primitive root.
struct Params {
    i64 m = 0, l = 0, j = 0, i = 0;
    i64 N_v = 0, N_u = 0;
    u64 p = 0;
    u64 epsilon = 0;
    // prime factors of p-1, ascending
    std::vector<u64> factors;
    // xi_2M = epsilon^((p-1)/2M) for the standard moduli 2M in {8, 2N_v, 2N_u}
    std::map<i64, u64> xi_table;

    // Throws "bad-params" if any tower invariant fails.
    void validate() const;
    bool operator==(const Params& o) const = default;
};

Params find_params(const ParamSpec& spec);

struct FpElem {
    u64 value = 0;
    bool operator==(const FpElem&) const = default;
};

// Arithmetic in F_p with 128-bit intermediates.
u64 mul_mod(u64 a, u64 b, u64 p);
u64 pow_mod(u64 a, u64 e, u64 p);
u64 add_mod(u64 a, u64 b, u64 p);
u64 sub_mod(u64 a, u64 b, u64 p);
u64 inv_mod_p(u64 a, u64 p);
// Residue of a (possibly negative, possibly rational) number mod p.
u64 to_residue(i64 a, u64 p);
u64 to_residue(const Rational& r, u64 p);

bool is_prime_u64(u64 n);
std::vector<u64> prime_factors(u64 n);

enum class Tag { None, U, V };
const char* tag_name(Tag t);
Tag parse_tag(const std::string& s);

// e(q) with q reduced mod 1; q = 0 carries no domain tag.
struct Phase {
    Rational q;
    Tag tag = Tag::None;

    Phase() = default;
    Phase(const Rational& q_, Tag t);
    bool is_trivial() const { return q.is_zero(); }
    bool operator==(const Phase&) const = default;
};

// Denominator must divide 2*N_u (U) or 2*N_v (V).
void check_phase(const Params& pr, const Phase& ph);

FpElem exp_p(const Params& pr, i64 eta);
FpElem exp_p(const Params& pr, i128 eta);
// e(q) = exp_p((p-1) q); "incompatible-phase" if den(q) does not divide p-1.
FpElem char_e(const Params& pr, const Rational& q);
FpElem char_e(const Params& pr, const Phase& ph);
// xi_2M = e(1/(2M)).
FpElem xi(const Params& pr, i64 two_m);
i64 element_order(const Params& pr, FpElem x);

// e(-1/8) * sum_{0<n<=M} xi_2M^{n^2}; requires 4 | M and 2M | p-1.
FpElem sqrt_canonical(const Params& pr, i64 M);
// sqrt of a positive rational through the canonical branch:
// sqrt(r) for square-free r is sqrt_canonical(4r)/2.
FpElem sqrt_rational(const Params& pr, const Rational& x);
// Some square root (Tonelli-Shanks); "non-residue" if none exists.
FpElem tonelli_shanks(const Params& pr, FpElem a);

// Square-free decomposition n = s^2 * r.
void square_free_split(i64 n, i64& s, i64& r);

} // namespace pfg
