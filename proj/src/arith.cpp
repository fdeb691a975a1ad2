#include "pfg/arith.hpp"
#include "pfg/error.hpp"

#include <algorithm>
#include <limits>

namespace pfg {

void ParamSpec::validate() const {
    if (m_base < 4) fail("bad-spec", "m_base must be >= 4");
    if ((m_base * m_base) % 4 != 0) fail("bad-spec", "4 must divide m_base^2");
    if (k_mult < 1) fail("bad-spec", "k_mult must be >= 1");
    if (prime_search_limit < 1) fail("bad-spec", "prime_search_limit must be positive");
}

u64 mul_mod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

u64 add_mod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

u64 pow_mod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv_mod_p(u64 a, u64 p) {
    if (a % p == 0) fail("zero-element", "inverse of zero in F_p");
    return pow_mod(a, p - 2, p);
}

u64 to_residue(i64 a, u64 p) {
    i128 r = static_cast<i128>(a) % static_cast<i128>(p);
    if (r < 0) r += p;
    return static_cast<u64>(r);
}

u64 to_residue(const Rational& r, u64 p) {
    u64 d = to_residue(r.den(), p);
    return mul_mod(to_residue(r.num(), p), inv_mod_p(d, p), p);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a deterministic witness set for all 64-bit n.
    for (u64 a : small) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

std::vector<u64> merge_factors(std::vector<u64> a, const std::vector<u64>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

u64 smallest_primitive_root(u64 p, const std::vector<u64>& factors) {
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : factors) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    fail("search-exhausted", "no primitive root");
}

} // namespace

Params find_params(const ParamSpec& spec) {
    spec.validate();
    Params pr;
    pr.m = spec.m_base;
    pr.l = narrow(static_cast<i128>(pr.m) * pr.m);
    pr.j = narrow(static_cast<i128>(pr.m) * spec.k_mult);
    pr.i = narrow(static_cast<i128>(pr.j) * pr.j);
    pr.N_v = pr.l;
    pr.N_u = narrow(static_cast<i128>(pr.l) * pr.i);
    const i128 step = static_cast<i128>(8) * pr.N_u;
    const i128 limit = static_cast<i128>(1) << 63;
    std::vector<u64> base = merge_factors(prime_factors(static_cast<u64>(pr.m)),
                                          prime_factors(static_cast<u64>(spec.k_mult)));
    base = merge_factors(base, {2});
    for (i64 c = 1; c <= spec.prime_search_limit; ++c) {
        i128 cand = step * c + 1;
        if (cand >= limit) break;
        if (!is_prime_u64(static_cast<u64>(cand))) continue;
        pr.p = static_cast<u64>(cand);
        // p - 1 = 8 * m^4 * k^2 * c, so its primes come from m, k, 2 and c.
        pr.factors = merge_factors(base, prime_factors(static_cast<u64>(c)));
        pr.epsilon = smallest_primitive_root(pr.p, pr.factors);
        for (i64 two_m : {i64{8}, 2 * pr.N_v, 2 * pr.N_u})
            pr.xi_table[two_m] = pow_mod(pr.epsilon, (pr.p - 1) / static_cast<u64>(two_m), pr.p);
        pr.validate();
        return pr;
    }
    fail("search-exhausted", "no prime 1 mod 8*N_u within " +
                                 std::to_string(spec.prime_search_limit) + " candidates");
}

void Params::validate() const {
    auto bad = [](const std::string& w) { fail("bad-params", w); };
    if (m < 1 || l != m * m) bad("l != m^2");
    if (j < 1 || j % m != 0) bad("m does not divide j");
    if (i != j * j) bad("i != j^2");
    if (N_v != l) bad("N_v != l");
    if (static_cast<i128>(N_u) != static_cast<i128>(l) * i) bad("N_u != l*i");
    if (N_v % 4 != 0) bad("4 does not divide N_v");
    if (!is_prime_u64(p)) bad("p is not prime");
    if ((p - 1) % (8 * static_cast<u64>(N_u)) != 0) bad("8*N_u does not divide p-1");
    u64 rest = p - 1;
    for (u64 q : factors) {
        if (rest % q != 0) bad("listed factor does not divide p-1");
        while (rest % q == 0) rest /= q;
        if (pow_mod(epsilon, (p - 1) / q, p) == 1) bad("epsilon is not a primitive root");
    }
    if (rest != 1) bad("factor list of p-1 incomplete");
    for (const auto& [two_m, x] : xi_table) {
        if ((p - 1) % static_cast<u64>(two_m) != 0) bad("xi modulus does not divide p-1");
        if (x != pow_mod(epsilon, (p - 1) / static_cast<u64>(two_m), p)) bad("xi table mismatch");
    }
}

const char* tag_name(Tag t) {
    switch (t) {
    case Tag::U: return "U";
    case Tag::V: return "V";
    default: return "";
    }
}

Tag parse_tag(const std::string& s) {
    if (s == "U") return Tag::U;
    if (s == "V") return Tag::V;
    fail("syntax-error", "unknown domain tag '" + s + "'");
}

Phase::Phase(const Rational& q_, Tag t) : q(q_.frac()), tag(t) {
    if (q.is_zero()) tag = Tag::None;
}

void check_phase(const Params& pr, const Phase& ph) {
    if (ph.is_trivial()) return;
    i64 n = ph.tag == Tag::U ? 2 * pr.N_u : 2 * pr.N_v;
    if (n % ph.q.den() != 0)
        fail("incompatible-phase", "denominator " + std::to_string(ph.q.den()) +
                                       " does not divide 2N = " + std::to_string(n));
}

FpElem exp_p(const Params& pr, i128 eta) {
    const i128 order = static_cast<i128>(pr.p - 1);
    i128 r = eta % order;
    if (r < 0) r += order;
    return {pow_mod(pr.epsilon, static_cast<u64>(r), pr.p)};
}

FpElem exp_p(const Params& pr, i64 eta) { return exp_p(pr, static_cast<i128>(eta)); }

FpElem char_e(const Params& pr, const Rational& q) {
    const u64 d = static_cast<u64>(q.den());
    if ((pr.p - 1) % d != 0)
        fail("incompatible-phase", "denominator " + std::to_string(d) + " does not divide p-1");
    return exp_p(pr, static_cast<i128>((pr.p - 1) / d) * q.num());
}

FpElem char_e(const Params& pr, const Phase& ph) { return char_e(pr, ph.q); }

FpElem xi(const Params& pr, i64 two_m) {
    auto it = pr.xi_table.find(two_m);
    if (it != pr.xi_table.end()) return {it->second};
    return char_e(pr, Rational(1, two_m));
}

i64 element_order(const Params& pr, FpElem x) {
    if (x.value % pr.p == 0) fail("zero-element", "order of zero");
    u64 d = pr.p - 1;
    for (u64 q : pr.factors) {
        while (d % q == 0 && pow_mod(x.value, d / q, pr.p) == 1) d /= q;
    }
    return static_cast<i64>(d);
}

FpElem sqrt_canonical(const Params& pr, i64 M) {
    if (M <= 0 || M % 4 != 0) fail("bad-modulus", "sqrt_canonical needs 4 | M, got " + std::to_string(M));
    if ((pr.p - 1) % static_cast<u64>(2 * M) != 0)
        fail("bad-modulus", "2M = " + std::to_string(2 * M) + " does not divide p-1");
    const u64 z = xi(pr, 2 * M).value;
    // powers z^(n^2) are taken with n^2 reduced mod 2M
    u64 s = 0;
    for (i64 n = 1; n <= M; ++n) {
        i64 e = static_cast<i64>((static_cast<i128>(n) * n) % (2 * M));
        s = add_mod(s, pow_mod(z, static_cast<u64>(e), pr.p), pr.p);
    }
    return {mul_mod(s, char_e(pr, Rational(-1, 8)).value, pr.p)};
}

void square_free_split(i64 n, i64& s, i64& r) {
    if (n <= 0) fail("bad-modulus", "square-free split of non-positive value");
    s = 1;
    r = 1;
    for (i64 q = 2; q * q <= n; ++q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        for (int t = 0; t < e / 2; ++t) s *= q;
        if (e % 2) r *= q;
    }
    r *= n;
}

FpElem sqrt_rational(const Params& pr, const Rational& x) {
    if (x.sign() <= 0) {
        if (x.is_zero()) return {0};
        fail("bad-modulus", "square root of a negative rational");
    }
    // sqrt(n/d) = sqrt(n*d)/d
    i64 s = 1, r = 1;
    square_free_split(narrow(static_cast<i128>(x.num()) * x.den()), s, r);
    u64 root = 1;
    if (r > 1) {
        FpElem g = sqrt_canonical(pr, 4 * r);
        root = mul_mod(g.value, inv_mod_p(2, pr.p), pr.p);
    }
    u64 scale = to_residue(Rational(s, x.den()), pr.p);
    return {mul_mod(root, scale, pr.p)};
}

FpElem tonelli_shanks(const Params& pr, FpElem a) {
    const u64 p = pr.p;
    u64 n = a.value % p;
    if (n == 0) return {0};
    if (pow_mod(n, (p - 1) / 2, p) != 1) fail("non-residue", "no square root");
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = pr.epsilon; // a primitive root is a non-residue
    u64 mm = static_cast<u64>(s);
    u64 c = pow_mod(z, q, p);
    u64 t = pow_mod(n, q, p);
    u64 r = pow_mod(n, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 k = 0; k + 1 < mm - i; ++k) b = mul_mod(b, b, p);
        mm = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return {r};
}

} // namespace pfg
