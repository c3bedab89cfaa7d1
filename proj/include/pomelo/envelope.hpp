#pragma once

// The enveloping algebra of a Poisson order: generated by the order itself
// together with one derivation symbol d[x] per base variable, subject to
//   d[x]*a   = a*d[x] + {x,a}        (a in the order)
//   d[x]*d[y] = d[y]*d[x] + d({x,y})  where d(p) = sum_k dp/dx_k * d[x_k].
// Elements are kept in PBW normal form: order parts on the left, derivation
// monomials ascending on the right. Also here: the finite-dimensional
// Poisson modules this algebra acts on, with their annihilator and torsion
// calculus.

#include <map>
#include <memory>
#include <optional>

#include "pomelo/order.hpp"

namespace pomelo {

using EnvParent = std::shared_ptr<const PoissonOrder>;

EnvParent make_envelope(PoissonOrder a);

// One normal-form monomial e_j * x^xexp * d^dexp.
struct EnvKey {
  int j = 0;
  Expvec xexp;
  Expvec dexp;

  bool operator==(const EnvKey& o) const {
    return j == o.j && xexp == o.xexp && dexp == o.dexp;
  }
  bool operator<(const EnvKey& o) const {
    if (j != o.j) return j < o.j;
    if (xexp != o.xexp) return xexp < o.xexp;
    return dexp < o.dexp;
  }
};

class EnvElement {
public:
  EnvElement() = default;                  // zero with no parent
  explicit EnvElement(EnvParent parent);   // zero

  const EnvParent& parent() const { return parent_; }
  const std::map<EnvKey, Coef>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  int delta_degree() const;                // max derivation degree, -1 on zero

  EnvElement operator+(const EnvElement& o) const;
  EnvElement operator-(const EnvElement& o) const;
  EnvElement operator-() const;
  EnvElement operator*(const EnvElement& o) const;
  bool operator==(const EnvElement& o) const;
  bool operator!=(const EnvElement& o) const { return !(*this == o); }

  EnvElement scaled(const Coef& c) const;

  // Terms with derivation degree exactly k, as an element.
  EnvElement delta_slice(int k) const;

  std::string str() const;

  void add_term(const EnvKey& k, const Coef& c);   // fuses, drops zeros

private:
  EnvParent parent_;
  std::map<EnvKey, Coef> terms_;
};

EnvElement env_zero(const EnvParent& e);
EnvElement env_one(const EnvParent& e);
EnvElement env_alpha(const EnvParent& e, const VecPoly& a);
EnvElement env_alpha(const EnvParent& e, const Poly& p);   // p * unit
EnvElement env_delta(const EnvParent& e, int var);
// d(p) = sum_k dp/dx_k * d[x_k]; kills constants.
EnvElement delta_of(const EnvParent& e, const Poly& p);

// Counts normal-form monomials e_j x^a d^b with |a| <= x_degree and
// |b| <= delta_degree two ways: the closed-form product
//   rank * C(x_degree + n, n) * sum_{k <= delta_degree} C(k + n - 1, n - 1)
// and by multiplying each monomial out of its factors and checking that the
// top derivation-degree slice is exactly that monomial (so products never
// merge distinct normal forms).
struct PbwReport {
  long predicted = 0;
  long actual = 0;
  bool ok = false;
};
PbwReport pbw_dimension_check(const EnvParent& e, int delta_degree, int x_degree);

// Associativity of the normalizing product on every generating triple that
// can be rewritten in two ways: (d_i, d_j, d_k) with i > j > k, (d_i, d_j, a)
// with i > j, and (d_i, a, b), where a, b run over the base variables and the
// order basis. A bracket that fails the Jacobi identity shows up here as an
// unresolved derivation triple; an order whose Hamiltonian action is not a
// Lie map (the construction does not demand that) shows up as an unresolved
// derivation pair against a basis element.
struct OverlapReport {
  std::vector<std::string> unresolved;
  bool ok() const { return unresolved.empty(); }
};
OverlapReport diamond_overlap_check(const EnvParent& e);

// Structure constants c[i][j][k] of a Lie algebra g define both the linear
// Poisson bracket on its dual and the Lie algebra g_D = g tensor k[eps]/(eps^2).
// The map sending x_i to d[x_i] and eps*x_i to alpha(x_i) should turn every
// g_D bracket into a commutator of the envelope; this checks all basis pairs.
struct UgdReport {
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};
UgdReport ugd_compare(const Ring& r,
                      const std::vector<std::vector<std::vector<Coef>>>& c);

// Finite-dimensional module: X[i] is the action of the i-th base variable,
// D[i] the action of its Hamiltonian derivation, E[j] the action of the j-th
// order basis element ({identity} in rank one).
struct PoissonModule {
  int dim = 0;
  std::vector<CoefMat> X;
  std::vector<CoefMat> D;
  std::vector<CoefMat> E;
};

// Rank-one module: E = {identity}.
PoissonModule make_module(const Field& F, int dim, std::vector<CoefMat> X,
                          std::vector<CoefMat> D);

// p(X) for commuting square matrices X.
CoefMat eval_matrix(const Poly& p, const std::vector<CoefMat>& X, int dim);

// Checks the module laws over the order: commuting base actions, the order's
// product table and unit, centrality of the base, and the three derivation
// axioms. Violations name the law and the offending generators.
struct ModuleReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
ModuleReport module_check(const PoissonModule& m, const PoissonOrder& a);
ModuleReport module_check(const PoissonModule& m, const PoissonAlgebra& p);

// Annihilator of the whole module in the base ring, found by degree-capped
// linear algebra (cap 0 means the module dimension). `complete` is set when
// the quotient by the result is spanned by monomials inside the cap and no
// larger than dim^2, which pins the full annihilator; otherwise the ideal is
// still sound but possibly a proper subideal.
struct AnnihilatorReport {
  Ideal ideal;
  bool complete = false;
};
AnnihilatorReport module_annihilator_Z(const Ring& r, const PoissonModule& m,
                                       int degree_cap = 0);

// Largest single-vector annihilator found among the standard basis vectors,
// with the vector that realizes it. Incomparable candidates keep the first.
struct TorsionReport {
  Ideal ideal;
  std::vector<Coef> witness;
  bool complete = false;
};
TorsionReport torsion_ideal(const Ring& r, const PoissonModule& m,
                            int degree_cap = 0);

// For a simple module the Poisson core of the torsion ideal should be the
// full annihilator; this evaluates that equality. Simplicity is the caller's
// responsibility; non-simple modules may legitimately return false.
bool ividealiii_check(const PoissonModule& m, const PoissonAlgebra& p);

// The order tensored over the base with a rank-one module: dimension
// rank * dim, base acting diagonally, Hamiltonians acting by the product
// rule through the ham table.
PoissonModule induced_module(const PoissonOrder& a, const PoissonModule& m);

} // namespace pomelo
