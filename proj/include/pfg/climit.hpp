#pragma once

#include "pfg/hilbert.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace pfg {

using cplx = std::complex<double>;

// Euclidean: c e^{-pi (A x^2 + 2 B x)}; Hermitian: c e^{+pi i (A x^2 + 2 B x)}.
struct ContinuumGaussian {
    InnerKind kind = InnerKind::Euclidean;
    cplx c{1.0, 0.0};
    double A = 0.0;
    double B = 0.0;
    cplx operator()(double x) const;
};

// x = r/m. U-domain states become Euclidean, V-domain states Hermitian;
// the coefficient is the limit image of sqrt(N) * coeff.
ContinuumGaussian lm_state(const Params& pr, const GaussState& s);

// int e^{pi i (A x^2 + 2 B x)} dx = e^{i pi sgn(A)/4}/sqrt|A| * e^{-pi i B^2/A}
cplx fresnel(double A, double B);
// int e^{-pi (A x^2 + 2 B x)} dx = e^{pi B^2/A}/sqrt(A)
double gaussian_integral(double A, double B);

// Euclidean: int g1 g2; Hermitian: int g1 conj(g2). Throws divergent-pairing.
cplx continuum_inner_closed(const ContinuumGaussian& g1, const ContinuumGaussian& g2);

struct QuadratureResult {
    cplx value;
    // Hermitian only: mollified values at eps = 1e-2, 1e-3
    std::vector<cplx> mollified;
};
// Composite Simpson on [-window, window]. The Hermitian case integrates
// against e^{-eps x^2} and extrapolates eps -> 0; its window and step are
// widened/refined as the mollifier and the oscillation require.
QuadratureResult continuum_inner_quadrature(const ContinuumGaussian& g1, const ContinuumGaussian& g2,
                                            double window, double step, double tolerance = 5e-2);

double simpson(const std::function<double(double)>& f, double a, double b, double step);
cplx simpson_c(const std::function<cplx(double)>& f, double a, double b, double step);

struct LimitReport {
    std::vector<i64> N_sequence;
    std::vector<ComplexVal> finite_values;
    ComplexVal continuum_value;
    std::vector<double> errors;
    bool tail_monotone = false;
    std::vector<std::string> notes;
};

// Finite pair: s1 = (1/sqrt N) e(-(A r^2 + 2 B_f r)/2N), s2 uniform, in U
// (Euclidean) or V (Hermitian), with B_f = round(B sqrt N) so that the
// continuum pairing has linear coefficient B. Each N_v in the sequence must
// be m^2 for some m; the tower is rebuilt with k_mult.
LimitReport convergence_check(i64 A, double B, InnerKind kind, const std::vector<i64>& N_sequence,
                              i64 k_mult = 2, Mode mode = Mode::Extended);

// e^{i mu} sqrt(omega/(2 pi hbar |s|)) exp(i omega ((x^2+x0^2) c - 2 x x0)/(2 hbar s)),
// s = sin(omega t), c = cos(omega t), mu = -pi/4 - (pi/2) floor(omega t/pi).
// Throws caustic when s = 0.
cplx ho_propagator(double omega, double t, double x, double x0, double hbar = 1.0);
cplx free_kernel(double t, double x, double x0, double hbar = 1.0);
// int K(x, y; t1) K(y, x0; t2) dy through the Fresnel closed form.
cplx ho_compose(double omega, double t1, double t2, double x, double x0, double hbar = 1.0);

} // namespace pfg
