#include "pfg/gauss.hpp"
#include "pfg/error.hpp"

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace pfg {

const char* mode_name(Mode m) { return m == Mode::Strict ? "strict" : "extended"; }

Mode parse_mode(const std::string& s) {
    if (s == "extended") return Mode::Extended;
    if (s == "strict") return Mode::Strict;
    fail("bad-argument", "mode must be extended or strict, got '" + s + "'");
}

const char* backend_name(Backend b) { return b == Backend::Complex ? "complex" : "fp"; }

Backend parse_backend(const std::string& s) {
    if (s == "fp") return Backend::Fp;
    if (s == "complex") return Backend::Complex;
    fail("bad-argument", "backend must be fp or complex, got '" + s + "'");
}

void check_spec(const GaussSumSpec& s) {
    if (s.M <= 0) fail("precondition-violation", "modulus must be positive");
    if (s.a != 0 && s.M % (4 * (s.a < 0 ? -s.a : s.a)) != 0)
        fail("precondition-violation", "4|a| must divide M (a=" + std::to_string(s.a) +
                                           ", M=" + std::to_string(s.M) + ")");
}

namespace {

// Runs body(lo, hi) on `threads` contiguous blocks of [0, n) and returns the
// per-block results in block order.
template <class T, class F>
std::vector<T> partitioned(i64 n, int threads, F body) {
    if (threads < 1) threads = 1;
    if (threads > n) threads = static_cast<int>(std::max<i64>(n, 1));
    std::vector<T> parts(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        i64 lo = n * t / threads, hi = n * (t + 1) / threads;
        if (threads == 1) {
            parts[t] = body(lo, hi);
        } else {
            pool.emplace_back([&parts, t, lo, hi, &body] { parts[t] = body(lo, hi); });
        }
    }
    for (auto& th : pool) th.join();
    return parts;
}

} // namespace

FpElem gauss_brute_fp(const Params& pr, const GaussSumSpec& s, int threads) {
    if (s.M <= 0) fail("precondition-violation", "modulus must be positive");
    const i64 twoM = 2 * s.M;
    const u64 z = xi(pr, twoM).value;
    // table of z^k, k in [0, 2M)
    std::vector<u64> pw(static_cast<std::size_t>(twoM));
    pw[0] = 1;
    for (i64 k = 1; k < twoM; ++k) pw[k] = mul_mod(pw[k - 1], z, pr.p);
    auto parts = partitioned<u64>(s.M, threads, [&](i64 lo, i64 hi) {
        u64 acc = 0;
        for (i64 n = lo; n < hi; ++n) {
            i64 e = mod128(static_cast<i128>(s.a) * n * n + static_cast<i128>(2) * s.b * n, twoM);
            acc = add_mod(acc, pw[e], pr.p);
        }
        return acc;
    });
    u64 total = 0;
    for (u64 v : parts) total = add_mod(total, v, pr.p);
    if (s.a != 0) total = mul_mod(total, inv_mod_p(static_cast<u64>(s.a < 0 ? -s.a : s.a), pr.p), pr.p);
    return {total};
}

ComplexVal gauss_brute_complex(const GaussSumSpec& s, int threads) {
    if (s.M <= 0) fail("precondition-violation", "modulus must be positive");
    const i64 twoM = 2 * s.M;
    struct Kahan {
        std::complex<double> sum{0, 0}, comp{0, 0};
        void add(std::complex<double> v) {
            std::complex<double> y = v - comp;
            std::complex<double> t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    };
    auto parts = partitioned<std::complex<double>>(s.M, threads, [&](i64 lo, i64 hi) {
        Kahan k;
        for (i64 n = lo; n < hi; ++n) {
            i64 e = mod128(static_cast<i128>(s.a) * n * n + static_cast<i128>(2) * s.b * n, twoM);
            double t = std::numbers::pi * static_cast<double>(e) / static_cast<double>(s.M);
            k.add({std::cos(t), std::sin(t)});
        }
        return k.sum;
    });
    Kahan k;
    for (auto v : parts) k.add(v);
    std::complex<double> r = k.sum;
    if (s.a != 0) r /= static_cast<double>(s.a < 0 ? -s.a : s.a);
    return ComplexVal(r);
}

GaussCoeff with_symbolic_j(const Params& pr, const GaussCoeff& x) {
    if (x.is_zero()) return x;
    return x * GaussCoeff::j_pow(1) * GaussCoeff::rational(Rational(1, pr.j));
}

GaussCoeff gauss_closed(const GaussSumSpec& s, Mode mode, const Params* pr) {
    check_spec(s);
    if (s.a == 0) {
        if (mode == Mode::Strict || s.b % s.M != 0) return GaussCoeff::zero();
        return GaussCoeff::rational(Rational(s.M));
    }
    if (s.b % s.a != 0) return GaussCoeff::zero();
    const i64 aa = s.a < 0 ? -s.a : s.a;
    GaussCoeff g = GaussCoeff::sqrt_of(Rational(s.M, aa)) * GaussCoeff::e8_pow(s.a > 0 ? 1 : -1) *
                   GaussCoeff::phase(-Rational::from128(static_cast<i128>(s.b) * s.b,
                                                        static_cast<i128>(2) * s.a * s.M),
                                     s.domain);
    if (pr && s.domain == Tag::U && s.M % pr->i == 0) g = with_symbolic_j(*pr, g);
    return g;
}

GaussCoeff gauss_closed_sm(const Params& pr, i64 a) {
    if (a <= 0 || pr.N_u % (4 * a) != 0)
        fail("precondition-violation", "4a must divide N_u (a=" + std::to_string(a) + ")");
    return GaussCoeff::e8_pow(1) * GaussCoeff::j_pow(1) * GaussCoeff::sqrt_of(Rational(1, a));
}

FpElem gauss_brute_sm(const Params& pr, i64 a) {
    if (a <= 0 || pr.N_u % a != 0) fail("precondition-violation", "a must divide N_u");
    const i64 n = pr.N_u / a;
    u64 acc = 0;
    for (i64 k = 1; k <= n; ++k) {
        i64 e = mod128(static_cast<i128>(a) * k * k, 2 * pr.N_u);
        acc = add_mod(acc, char_e(pr, Rational(e, 2 * pr.N_u)).value, pr.p);
    }
    return {mul_mod(acc, inv_mod_p(static_cast<u64>(pr.m), pr.p), pr.p)};
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) fail("bad-modulus", "jacobi symbol needs odd positive n");
    a = mod64(a, n);
    int r = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            if (n % 8 == 3 || n % 8 == 5) r = -r;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) r = -r;
        a %= n;
    }
    return n == 1 ? r : 0;
}

GaussGeneral gauss_general_sym(i64 a, const Poly& beta_in, i64 c) {
    if (c <= 0) fail("bad-modulus", "general Gauss sum needs c >= 1");
    GaussGeneral out;
    const i64 g = a == 0 ? c : gcd64(a, c);
    out.guards.push_back({g, beta_in});
    out.coeff = GaussCoeff::rational(Rational(g));
    a /= g;
    c /= g;
    Poly beta = beta_in * Poly(Rational(1, g));
    int k = 0;
    i64 co = c;
    while (co % 2 == 0) {
        co /= 2;
        ++k;
    }
    const i64 two_k = i64{1} << k;
    // CRT split: S(a, beta, 2^k co) = S(a 2^k, beta, co) * S(a co, beta, 2^k)
    if (co > 1) {
        const i64 A = mod128(static_cast<i128>(a) * two_k, co);
        const i64 inv = inv_mod(mod128(static_cast<i128>(4) * A, co), co);
        out.coeff *= GaussCoeff::rational(Rational(jacobi(A, co)));
        out.coeff *= GaussCoeff::sqrt_of(Rational(co));
        if (co % 4 == 3) out.coeff *= GaussCoeff::e8_pow(2);
        out.phase += beta * beta * Poly(Rational(-inv, co));
    }
    const i64 A2 = mod128(static_cast<i128>(a) * co, i64{8} * two_k);
    if (k == 1) {
        out.guards.push_back({2, beta + Poly(Rational(1))});
        out.coeff *= GaussCoeff::rational(Rational(2));
    } else if (k >= 2) {
        out.guards.push_back({2, beta});
        const Poly bp = beta * Poly(Rational(1, 2));
        const i64 inv = inv_mod(mod64(A2, two_k), two_k);
        // 1 + i^A2 = sqrt(2) e8^{+-1}
        out.coeff *= GaussCoeff::sqrt_of(Rational(2)) * GaussCoeff::e8_pow(A2 % 4 == 1 ? 1 : -1);
        const bool neg = !(A2 % 8 == 1 || A2 % 8 == 7);
        if (neg && k % 2 == 1) out.coeff = -out.coeff;
        out.coeff *= GaussCoeff::sqrt_of(Rational(two_k));
        out.phase += bp * bp * Poly(Rational(-inv, two_k));
    }
    return out;
}

GaussCoeff gauss_general(i64 a, i64 beta, i64 c, Tag tag) {
    GaussGeneral r = gauss_general_sym(a, Poly(Rational(beta)), c);
    for (const auto& gd : r.guards) {
        Rational v = gd.expr.constant_term();
        if (!v.is_integer() || v.num() % gd.k != 0) return GaussCoeff::zero();
    }
    return r.coeff * GaussCoeff::phase(r.phase.constant_term(), tag);
}

} // namespace pfg
