#pragma once

#include "pfg/hilbert.hpp"

#include <random>
#include <utility>

namespace pfg {

// Ring map j -> 1, e(q@U) -> e(i q@V); c, rho and e8 unchanged. Because
// U-domain normalizations are stored as j^{-1}/m this sends 1/sqrt(N_u) to
// 1/sqrt(N_v). Throws wrong-domain on V-phases.
GaussCoeff wick_coeff(const Params& pr, const GaussCoeff& x);

// Same form, coefficient mapped, domain retagged; labels are shared.
GaussState wick_state(const Params& pr, const GaussState& s);
GaussOperator wick_operator(const Params& pr, const GaussOperator& op);
GTerm wick_term(const Params& pr, const GTerm& t);

struct InnerCorrespondence {
    bool holds = false;
    GaussCoeff mapped_u;  // wick of the U-domain inner product
    GaussCoeff v_inner;   // inner product of the wicked states
    u64 mapped_fp = 0, v_fp = 0;
};
InnerCorrespondence check_inner_correspondence(const Params& pr, const GaussState& s1, const GaussState& s2,
                                               InnerKind kind, Mode mode = Mode::Extended);

// Random admissible U-domain ket pair: A in [-3,-1], B in [-2,2], C in {-1,0},
// momentum label in [-4,4]. Draws use rng() directly so the sequence is the
// same on every platform.
std::pair<GaussState, GaussState> random_u_pair(const Params& pr, std::mt19937_64& rng);

// Random U-domain kernel operator with an admissible form.
GaussOperator random_u_operator(const Params& pr, std::mt19937_64& rng);

} // namespace pfg
