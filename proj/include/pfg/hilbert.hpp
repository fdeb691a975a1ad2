#pragma once

#include "pfg/gterm.hpp"

#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

namespace pfg {

struct Domain {
    Tag tag = Tag::V;
    i64 N = 0;
    std::string unit_label;
    bool operator==(const Domain& o) const { return tag == o.tag && N == o.N; }
};

Domain domain_of(const Params& pr, Tag tag);
// Representative of r in [-N/2, N/2).
i64 centered(i64 r, i64 N);
// 1/sqrt(N) with sqrt(N_u) = m j kept symbolic; sqrt(N) likewise.
GaussCoeff inv_sqrt_N(const Params& pr, Tag tag);
GaussCoeff sqrt_N(const Params& pr, Tag tag);

// f(x, y) = A x^2 + 2 B x y + C y^2; rational after Gauss summation.
struct QuadForm {
    Rational A, B, C;
    bool admissible() const { return A <= Rational(0) && C <= Rational(0); }
    bool operator==(const QuadForm&) const = default;
};

// Nonzero coordinates lie in k Z + d.
struct Support {
    i64 k = 1;
    i64 d = 0;
    bool operator==(const Support&) const = default;
};

// r -> coeff * e(f(r, p)/2N) on the support coset.
struct GaussState {
    GaussCoeff coeff;
    QuadForm form;
    i64 p_param = 0;
    Domain domain;
    Support support;

    bool is_zero() const { return coeff.is_zero(); }
    GTerm term(const std::string& var = "r") const;
    FpElem coord_fp(const Params& pr, i64 r) const;
    ComplexVal coord_complex(const Params& pr, i64 r) const;
    bool operator==(const GaussState&) const = default;
};

struct PositionState {
    i64 r = 0;
    Domain domain;
    GTerm term(const std::string& var = "r") const;
};

using State = std::variant<GaussState, PositionState>;

// Throws inadmissible-form unless allow_inadmissible.
GaussState make_ket(const Params& pr, Tag tag, const QuadForm& f, i64 p_param, const GaussCoeff& coeff,
                    bool allow_inadmissible = false);
// Same with coefficient 1/sqrt(N).
GaussState normalized_ket(const Params& pr, Tag tag, const QuadForm& f, i64 p_param = 1);
PositionState position(const Params& pr, Tag tag, i64 r);

// State from a term in one variable; guards become the support coset.
GaussState state_from_term(const GTerm& t, const std::string& var, const Domain& dom);

enum class InnerKind { Euclidean, Hermitian };
const char* kind_name(InnerKind k);
InnerKind parse_kind(const std::string& s);

// Formal complex conjugate of a term: coeff_conj and negated phase.
GTerm conj_term(const GTerm& t);

// Euclidean: sum s1 s2; Hermitian: sum s1 conj(s2). Between two Gaussian
// kets the sum is divided by |A|, A the combined quadratic coefficient.
GaussCoeff inner(const Params& pr, const State& s1, const State& s2, InnerKind kind, Mode mode = Mode::Extended);

// (A s)(r) = sum_q K(q, r) s(q); the kernel is a term in q (input) and r (output).
struct GaussOperator {
    GTerm kernel;
    Domain dom_in, dom_out;
    bool unitary = false;
    std::string name;
};

GaussOperator identity_op(const Params& pr, Tag tag);
// (1/sqrt N) e(-2 q r/2N)
GaussOperator fourier_op(const Params& pr, Tag tag);
// Kernel (1/sqrt N) c e(a(q, r)/2N) from a form in (q, r).
GaussOperator kernel_op(const Params& pr, Tag tag, const QuadForm& a, const GaussCoeff& extra = GaussCoeff(),
                        bool allow_inadmissible = false);

// Throws inadmissible-result when the image form has A > 0, unless allowed.
GaussState apply(const Params& pr, const GaussOperator& op, const State& s, Mode mode = Mode::Extended,
                 bool allow_inadmissible = false);
// op1 after op2.
GaussOperator compose(const Params& pr, const GaussOperator& op1, const GaussOperator& op2,
                      Mode mode = Mode::Extended);
FpElem kernel_fp(const Params& pr, const GaussOperator& op, i64 q, i64 r);

struct UnitaryReport {
    bool unitary = true;
    i64 checked = 0;
    std::vector<std::string> failures;
};
// Brute-force column orthonormality in F_p against the formal conjugate;
// feasible for N up to a few thousand.
UnitaryReport check_unitary(const Params& pr, const GaussOperator& op);

// Multiply by sqrt(k), support intersected with k Z + d.
GaussState restrict_state(const GaussState& s, i64 k, i64 d);

// Coordinates materialized in F_p, index r + N/2 for r in [-N/2, N/2).
struct VectorState {
    Domain domain;
    std::vector<u64> coords;
    u64 at(i64 r) const { return coords[static_cast<std::size_t>(centered(r, domain.N) + domain.N / 2)]; }
};
VectorState materialize(const Params& pr, const State& s);
// Conjugate coordinates of a state (for brute-force Hermitian pairings).
VectorState materialize_conj(const Params& pr, const GaussState& s);

// psi^sigma(r) = psi(sigma(r)); sigma given as sigma[r + N/2] = sigma(r).
VectorState permutation_unitary(const std::vector<i64>& sigma, const VectorState& s);
// Affine sigma(r) = u r + v with gcd(u, N) = 1, kept symbolic.
GaussState permute_affine(const GaussState& s, i64 u, i64 v);

struct ProductState {
    std::vector<GaussState> factors;
};
ProductState tensor(const std::vector<GaussState>& states);
GaussCoeff inner_tensor(const Params& pr, const ProductState& a, const ProductState& b, InnerKind kind,
                        Mode mode = Mode::Extended);

nlohmann::ordered_json state_to_json(const GaussState& s);
GaussState state_from_json(const Params& pr, const nlohmann::json& j);

} // namespace pfg
