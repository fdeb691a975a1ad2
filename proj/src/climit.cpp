#include "pfg/climit.hpp"
#include "pfg/error.hpp"

#include <cmath>
#include <numbers>

namespace pfg {

namespace {
constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};
} // namespace

cplx ContinuumGaussian::operator()(double x) const {
    const double q = A * x * x + 2.0 * B * x;
    if (kind == InnerKind::Euclidean) return c * std::exp(-pi * q);
    return c * std::exp(I * (pi * q));
}

ContinuumGaussian lm_state(const Params& pr, const GaussState& s) {
    if (s.is_zero()) fail("non-normalizable", "zero state has no limit profile");
    if (s.support.k != 1) fail("non-normalizable", "restricted states have no single continuum profile");
    const Tag tag = s.domain.tag;
    const Rational p(s.p_param);
    GaussCoeff c = sqrt_N(pr, tag) * s.coeff *
                   GaussCoeff::phase(s.form.C * p * p / Rational(2 * s.domain.N), tag);
    ComplexVal v = to_complex(pr, c);
    if (v.overflow) fail("non-normalizable", "coefficient overflows under the limit map");
    ContinuumGaussian g;
    g.kind = tag == Tag::U ? InnerKind::Euclidean : InnerKind::Hermitian;
    g.c = v.z();
    g.A = -s.form.A.to_double();
    g.B = -(s.form.B * p).to_double() / static_cast<double>(pr.m);
    return g;
}

cplx fresnel(double A, double B) {
    if (A == 0.0) fail("divergent-pairing", "Fresnel integral with A = 0");
    const double sg = A > 0 ? 1.0 : -1.0;
    return std::exp(I * (pi * sg / 4.0)) / std::sqrt(std::abs(A)) * std::exp(-I * (pi * B * B / A));
}

double gaussian_integral(double A, double B) {
    if (!(A > 0)) fail("divergent-pairing", "Gaussian integral needs A > 0");
    return std::exp(pi * B * B / A) / std::sqrt(A);
}

cplx continuum_inner_closed(const ContinuumGaussian& g1, const ContinuumGaussian& g2) {
    if (g1.kind != g2.kind) fail("domain-mismatch", "pairing of different kinds");
    if (g1.kind == InnerKind::Euclidean) return g1.c * g2.c * gaussian_integral(g1.A + g2.A, g1.B + g2.B);
    return g1.c * std::conj(g2.c) * fresnel(g1.A - g2.A, g1.B - g2.B);
}

double simpson(const std::function<double(double)>& f, double a, double b, double step) {
    i64 n = static_cast<i64>(std::ceil((b - a) / step));
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (i64 k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
    return s * h / 3.0;
}

cplx simpson_c(const std::function<cplx(double)>& f, double a, double b, double step) {
    i64 n = static_cast<i64>(std::ceil((b - a) / step));
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    cplx s = f(a) + f(b);
    for (i64 k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
    return s * (h / 3.0);
}

QuadratureResult continuum_inner_quadrature(const ContinuumGaussian& g1, const ContinuumGaussian& g2,
                                            double window, double step, double tolerance) {
    if (!(window > 0) || !(step > 0) || step >= window / 100.0)
        fail("bad-argument", "quadrature needs 0 < step < window/100");
    if (g1.kind != g2.kind) fail("domain-mismatch", "pairing of different kinds");
    QuadratureResult out;
    if (g1.kind == InnerKind::Euclidean) {
        out.value = simpson_c([&](double x) { return g1(x) * g2(x); }, -window, window, step);
        return out;
    }
    const double A = g1.A - g2.A, B = g1.B - g2.B;
    const cplx pref = g1.c * std::conj(g2.c);
    const double eps[2] = {1e-2, 1e-3};
    for (double e : eps) {
        const double w = std::max(window, std::sqrt(40.0 / e));
        // resolve the local frequency |A x + B| at the window edge
        const double freq = std::abs(A) * w + std::abs(B) + 1.0;
        const double h = std::min(step, 1.0 / (16.0 * freq));
        out.mollified.push_back(
            pref * simpson_c([&](double x) { return std::exp(I * (pi * (A * x * x + 2.0 * B * x)) - e * x * x); },
                             -w, w, h));
    }
    if (std::abs(out.mollified[0] - out.mollified[1]) > tolerance)
        fail("nonconvergent", "mollified Fresnel values disagree across eps levels");
    out.value = (eps[0] * out.mollified[1] - eps[1] * out.mollified[0]) / (eps[0] - eps[1]);
    return out;
}

namespace {

i64 exact_sqrt(i64 n) {
    i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

LimitReport convergence_check(i64 A, double B, InnerKind kind, const std::vector<i64>& N_sequence, i64 k_mult,
                              Mode mode) {
    LimitReport rep;
    rep.N_sequence = N_sequence;
    const Tag tag = kind == InnerKind::Euclidean ? Tag::U : Tag::V;
    const ContinuumGaussian g1{kind, 1.0, static_cast<double>(A), B};
    const ContinuumGaussian g2{kind, 1.0, 0.0, 0.0};
    bool divergent = false;
    try {
        rep.continuum_value = ComplexVal(continuum_inner_closed(g1, g2));
    } catch (const Error& e) {
        if (e.kind() != "divergent-pairing") throw;
        divergent = true;
        rep.continuum_value = {std::nan(""), std::nan("")};
        rep.notes.push_back("continuum pairing diverges (A = 0): the finite value is a renormalized delta in "
                            "extended mode and 0 by fiat in strict mode");
    }
    for (i64 N : N_sequence) {
        const i64 m = exact_sqrt(N);
        if (m * m != N) fail("bad-argument", "N_v = " + std::to_string(N) + " is not a perfect square");
        ParamSpec spec;
        spec.m_base = m;
        spec.k_mult = k_mult;
        const Params pr = find_params(spec);
        const i64 Bf = -static_cast<i64>(std::llround(B * static_cast<double>(m)));
        GaussState s1 = normalized_ket(pr, tag, {Rational(-A), Rational(Bf), Rational(0)}, 1);
        GaussState s2 = normalized_ket(pr, tag, {Rational(0), Rational(0), Rational(0)}, 1);
        GaussCoeff v = GaussCoeff::rational(Rational(m)) * inner(pr, s1, s2, kind, mode);
        ComplexVal z = to_complex(pr, v);
        rep.finite_values.push_back(z);
        rep.errors.push_back(divergent ? std::nan("") : std::abs(z.z() - rep.continuum_value.z()));
    }
    const std::size_t n = rep.errors.size();
    rep.tail_monotone = n >= 3;
    for (std::size_t k = n >= 3 ? n - 2 : n; k < n; ++k)
        if (!(rep.errors[k] < rep.errors[k - 1])) rep.tail_monotone = false;
    return rep;
}

namespace {
// -pi/4 - (pi/2) floor(omega t / pi): one quarter turn per caustic crossed.
double maslov(double wt) { return -pi / 4.0 - pi / 2.0 * std::floor(wt / pi); }
} // namespace

cplx ho_propagator(double omega, double t, double x, double x0, double hbar) {
    const double s = std::sin(omega * t), c = std::cos(omega * t);
    if (std::abs(s) < 1e-14) fail("caustic", "sin(omega t) = 0");
    const cplx pref = std::exp(I * maslov(omega * t)) * std::sqrt(omega / (2.0 * pi * hbar * std::abs(s)));
    return pref * std::exp(I * (omega * ((x * x + x0 * x0) * c - 2.0 * x * x0) / (2.0 * hbar * s)));
}

cplx free_kernel(double t, double x, double x0, double hbar) {
    if (t == 0.0) fail("caustic", "t = 0");
    const double sg = t > 0 ? 1.0 : -1.0;
    return std::exp(-I * (pi * sg / 4.0)) * std::sqrt(1.0 / (2.0 * pi * hbar * std::abs(t))) *
           std::exp(I * ((x - x0) * (x - x0) / (2.0 * hbar * t)));
}

cplx ho_compose(double omega, double t1, double t2, double x, double x0, double hbar) {
    const double s1 = std::sin(omega * t1), c1 = std::cos(omega * t1);
    const double s2 = std::sin(omega * t2), c2 = std::cos(omega * t2);
    if (std::abs(s1) < 1e-14 || std::abs(s2) < 1e-14) fail("caustic", "sin(omega t) = 0");
    const double k = omega / (2.0 * pi * hbar);
    // exponent in y: i pi (a y^2 + 2 b y) + i phi0
    const double a = k * (c1 / s1 + c2 / s2);
    const double b = -k * (x / s1 + x0 / s2);
    const double phi0 = omega * (x * x * c1 / s1 + x0 * x0 * c2 / s2) / (2.0 * hbar);
    const cplx p1 = std::exp(I * maslov(omega * t1)) * std::sqrt(k / std::abs(s1));
    const cplx p2 = std::exp(I * maslov(omega * t2)) * std::sqrt(k / std::abs(s2));
    return p1 * p2 * std::exp(I * phi0) * fresnel(a, b);
}

} // namespace pfg
