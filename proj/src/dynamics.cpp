#include "pfg/dynamics.hpp"
#include "pfg/error.hpp"

namespace pfg {

GaussState momentum_state(const Params& pr, i64 p, Tag tag) {
    const Domain d = domain_of(pr, tag);
    if (p < -d.N / 2 || p >= d.N / 2) fail("out-of-range", "momentum label outside [-N/2, N/2)");
    return normalized_ket(pr, tag, {Rational(0), Rational(-1), Rational(0)}, p);
}

WeylPair weyl_pair(const Params& pr, Tag tag) {
    WeylPair w;
    const Domain d = domain_of(pr, tag);
    const Poly q = Poly::var("q"), r = Poly::var("r");
    w.U.dom_in = w.U.dom_out = d;
    w.U.kernel = GTerm::exp(Poly(Rational(2)) * r, tag, d.N);
    w.U.kernel.add_guard(d.N, q - r);
    w.U.unitary = true;
    w.U.name = "U";
    w.V.dom_in = w.V.dom_out = d;
    w.V.kernel.add_guard(d.N, r - q - Poly(Rational(1)));
    w.V.unitary = true;
    w.V.name = "V";
    w.q = GaussCoeff::phase(Rational(1, d.N), tag);
    return w;
}

std::vector<i64> weyl_relation_failures(const Params& pr, const WeylPair& w) {
    const i64 N = w.U.dom_in.N;
    const u64 p = pr.p;
    std::vector<i64> bad;
    for (i64 r = -N / 2; r < N / 2; ++r) {
        PositionState u{r, w.U.dom_in};
        GaussState uv = apply(pr, w.U, apply(pr, w.V, u));
        GaussState vu = apply(pr, w.V, apply(pr, w.U, u));
        vu.coeff = vu.coeff * w.q;
        VectorState a = materialize(pr, uv), b = materialize(pr, vu);
        for (i64 k = 0; k < N; ++k) {
            if (sub_mod(a.coords[k], b.coords[k], p) != 0) {
                bad.push_back(r);
                break;
            }
        }
    }
    return bad;
}

GaussOperator free_propagator(const Params& pr, i64 t, Tag tag) {
    const Domain d = domain_of(pr, tag);
    if (t <= 0 || mod64(t, d.N) == 0) fail("bad-time", "time must be positive and nonzero mod N");
    if (d.N % (2 * t) != 0) fail("bad-time", "closed form needs 4t | 2N (t=" + std::to_string(t) + ")");
    const Poly diff = Poly::var("r") - Poly::var("q");
    GaussOperator op;
    op.dom_in = op.dom_out = d;
    op.kernel = GTerm::exp(diff * diff * Poly(Rational(-1, t)), tag, d.N);
    op.kernel.add_guard(t, diff);
    op.kernel = op.kernel.scaled(inv_sqrt_N(pr, tag) * GaussCoeff::sqrt_of(Rational(t)) * GaussCoeff::e8_pow(1));
    op.unitary = true;
    op.name = "free(" + std::to_string(t) + ")";
    return op;
}

GaussOperator sm_transfer(const Params& pr, const QuadForm& form) {
    GaussOperator op = kernel_op(pr, Tag::U, form);
    op.name = "transfer";
    return op;
}

} // namespace pfg
