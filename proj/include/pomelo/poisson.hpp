#pragma once

// Poisson structures on polynomial rings. A bracket lives in its generator
// table {x_i, x_j} and extends to arbitrary elements as a biderivation;
// verifying Jacobi on generator triples then certifies it everywhere, since
// the Jacobiator of a biderivation-extended bracket is a triderivation.

#include <tuple>

#include "pomelo/matrix.hpp"

namespace pomelo {

struct PoissonAlgebra {
  Ring ring;
  std::vector<std::vector<Poly>> table;   // table[i][j] = {x_i, x_j}

  int nvars() const { return ring ? ring->nvars() : 0; }
};

// Validates shape and antisymmetry (zero diagonal, table[i][j] = -table[j][i]).
// Jacobi is not enforced here; jacobi_check reports on it.
PoissonAlgebra make_poisson(Ring r, std::vector<std::vector<Poly>> table);

// Sparse form: entries (i, j, p) with i < j set {x_i, x_j} = p; everything
// not mentioned commutes.
PoissonAlgebra make_poisson(Ring r,
                            const std::vector<std::tuple<int, int, Poly>>& entries);

Poly poisson_bracket(const PoissonAlgebra& P, const Poly& f, const Poly& g);

struct JacobiViolation {
  int i, j, k;    // generator indices, i < j < k
  Poly defect;    // value of the Jacobiator on that triple
};

struct JacobiReport {
  std::vector<JacobiViolation> violations;
  bool ok() const { return violations.empty(); }
};

JacobiReport jacobi_check(const PoissonAlgebra& P);

// Components {z, x_i}. Applied as a derivation (sum of comp_i * d/dx_i) this
// recovers bracket(z, -).
std::vector<Poly> hamiltonian(const PoissonAlgebra& P, const Poly& z);

// Basis of {z : deg z <= d, {z, x_i} = 0 for all i}, found by an exact
// linear solve over the monomials of degree <= d. Monic, descending by
// leading monomial; always contains 1.
std::vector<Poly> poisson_centre(const PoissonAlgebra& P, int degree_bound);

// Linear bracket from Lie structure constants: c[i][j][k] is the coefficient
// of x_k in {x_i, x_j}. Rejects tables that fail antisymmetry or Jacobi,
// naming the first bad triple.
PoissonAlgebra lie_poisson(const Ring& r,
                           const std::vector<std::vector<std::vector<Coef>>>& c);

// Rank of the bracket matrix evaluated at a point; the dimension of the
// symplectic leaf through it. Always even.
int leaf_rank(const PoissonAlgebra& P, const std::vector<Coef>& point);

// Localisation at the powers of one denominator s. An element is a pair
// (num, k) read as num / s^k; representations are reduced lazily and
// equality is decided by cross-multiplication.
struct LocalElem {
  Poly num;
  int k = 0;
};

class LocalizedPoisson {
public:
  LocalizedPoisson(PoissonAlgebra base, Poly s);

  const PoissonAlgebra& base() const { return base_; }
  const Poly& denominator() const { return s_; }

  LocalElem embed(const Poly& p) const { return {p, 0}; }
  LocalElem reduce(LocalElem a) const;   // strip s-divisible numerators
  bool equal(const LocalElem& a, const LocalElem& b) const;
  LocalElem add(const LocalElem& a, const LocalElem& b) const;
  LocalElem mul(const LocalElem& a, const LocalElem& b) const;
  LocalElem bracket(const LocalElem& a, const LocalElem& b) const;
  std::string str(const LocalElem& a) const;

private:
  PoissonAlgebra base_;
  Poly s_;
};

LocalizedPoisson localize(const PoissonAlgebra& P, const Poly& s);

} // namespace pomelo
