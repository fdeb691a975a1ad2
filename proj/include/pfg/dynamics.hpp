#pragma once

#include "pfg/hilbert.hpp"

namespace pfg {

// r -> (1/sqrt N) e(-2 r p/2N)
GaussState momentum_state(const Params& pr, i64 p, Tag tag = Tag::V);

// U u[r] = e(r/N) u[r], V u[r] = u[r+1], UV = q VU with q = e(1/N).
struct WeylPair {
    GaussOperator U, V;
    GaussCoeff q;
};
WeylPair weyl_pair(const Params& pr, Tag tag = Tag::V);

// Positions r in [-N/2, N/2) where (UV - qVU) u[r] has a nonzero coordinate.
std::vector<i64> weyl_relation_failures(const Params& pr, const WeylPair& w);

// Kernel sqrt(t/N) e8 e(-(r-q)^2/(2tN)) on t | (r-q); needs 2t | N.
GaussOperator free_propagator(const Params& pr, i64 t, Tag tag = Tag::V);

// Euclidean-domain kernel (1/sqrt N_u) e(a(q, r)/2N_u).
GaussOperator sm_transfer(const Params& pr, const QuadForm& form);

} // namespace pfg
