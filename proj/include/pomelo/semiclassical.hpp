#pragma once

// Semiclassical limits of quantum affine space. Elements carry exact
// Laurent-polynomial coefficients in the deformation parameter q, so
// commutators keep their full q-dependence; at a primitive ell-th root of
// unity the ell-th powers of the generators commute with everything, and
// dividing their mutual commutators by (q - zeta_ell) before specialising
// equips the subalgebra they generate with a Poisson bracket.

#include <map>
#include <string>

#include "pomelo/field.hpp"
#include "pomelo/poisson.hpp"
#include "pomelo/polynomial.hpp"

namespace pomelo {

// Laurent polynomial in q: exponent -> coefficient, zero entries absent.
using QScalar = std::map<long, Coef>;

struct QuantumAffineSpace {
  int n = 0;     // generators X_1..X_n
  Field field;   // coefficient field under the q-powers
};

// input error for n < 1.
QuantumAffineSpace quantum_affine_space(int n, Field f = Field::rationals());

// Normal form: exponent vector of X_1^{a_1}...X_n^{a_n} -> Laurent
// coefficient. Exponents stay nonnegative; zero has no terms.
struct QElement {
  std::map<Expvec, QScalar> terms;

  bool is_zero() const { return terms.empty(); }
};

QElement q_zero(const QuantumAffineSpace& Q);
QElement q_one(const QuantumAffineSpace& Q);

// q^qpow * X^a, optionally scaled; negative entries in a are refused.
QElement q_monomial(const QuantumAffineSpace& Q, const Expvec& a, long qpow = 0);
QElement q_monomial(const QuantumAffineSpace& Q, const Expvec& a, long qpow,
                    const Coef& c);
// X_i^k for 0-based i.
QElement x_power(const QuantumAffineSpace& Q, int i, int k);

QElement q_add(const QuantumAffineSpace& Q, const QElement& u, const QElement& v);
QElement q_neg(const QuantumAffineSpace& Q, const QElement& u);
QElement q_sub(const QuantumAffineSpace& Q, const QElement& u, const QElement& v);

// Normal-ordered product. On monomials X^a * X^b = q^{sum_{i<j} b_i a_j}
// X^{a+b}; extended bilinearly, with Laurent multiplication on coefficients.
QElement q_mul(const QuantumAffineSpace& Q, const QElement& u, const QElement& v);

bool q_eq(const QElement& u, const QElement& v);

// "q*X1*X2", "(1 - q^4)*X1^2*X2^2", "0". Terms ascend in the exponent
// order; a coefficient with more than one q-term is parenthesised.
std::string q_str(const QuantumAffineSpace& Q, const QElement& u);

// The Poisson bracket induced on the ell-centre, on variables u_1..u_n over
// Q(zeta_ell) with u_i standing for the class of X_i^ell. For i < j the
// commutator [X_i^ell, X_j^ell] = (1 - q^{ell^2}) X_i^ell X_j^ell is divided
// exactly by (q - zeta_ell) and the quotient evaluated at zeta_ell; the
// bracket table holds that scalar times u_i u_j. ell < 2 is an input error,
// a nonzero division remainder an internal error.
PoissonAlgebra ell_centre_bracket(const QuantumAffineSpace& Q, int ell);

// True when every [X_i^ell, X_j] vanishes after specialising q to zeta_ell.
// ell < 2 is an input error.
bool centrality_check(const QuantumAffineSpace& Q, int ell);

} // namespace pomelo
