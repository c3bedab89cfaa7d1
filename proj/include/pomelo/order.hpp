#pragma once

// Poisson orders: finite free modules over a Poisson algebra Z carrying an
// associative Z-algebra structure (structure constants in Z) and an action
// of the Hamiltonians {x_i, -} by derivations. Elements are length-rank
// coordinate vectors over Z; two-sided ideals are Z-submodules closed under
// multiplication by every basis element.

#include "pomelo/modulegb.hpp"
#include "pomelo/poisson.hpp"

namespace pomelo {

struct PoissonOrder {
  PoissonAlgebra base;
  int rank = 0;
  std::vector<std::string> basis;            // coordinate names
  std::vector<std::vector<VecPoly>> mult;    // mult[j][k]: coords of e_j * e_k
  VecPoly unit;                              // coords of 1_A
  std::vector<std::vector<VecPoly>> ham;     // ham[i][j]: coords of {x_i, e_j}

  int nvars() const { return base.nvars(); }
  const Ring& ring() const { return base.ring; }
};

// Validates shape, then associativity, the unit laws, the derivation axiom
// (i) for every Hamiltonian on basis pairs, and that the Hamiltonians kill
// the unit (so they restrict to the base bracket on Z*1_A). The thrown
// input_error names the first violated axiom and the offending indices.
// Omitted basis names default to e1..em. The extension of the action to
// {z, -} for arbitrary z is forced by H(xy) = x H(y) + y H(x), so nothing
// beyond the generator table is stored or checked.
PoissonOrder make_order(PoissonAlgebra base,
                        std::vector<std::vector<VecPoly>> mult, VecPoly unit,
                        std::vector<std::vector<VecPoly>> ham,
                        std::vector<std::string> basis = {});

// Z as a rank-one order over itself.
PoissonOrder trivial_order(const PoissonAlgebra& base);

// Mat_n(Z) on matrix units E11, E12, ..., Enn with the entrywise action.
PoissonOrder matrix_order(const PoissonAlgebra& base, int n);

// Same module, reversed multiplication; the Hamiltonians still derive.
PoissonOrder opposite_order(const PoissonOrder& a);

// A (x)_Z B: rank multiplies, componentwise product, and
// {z, a (x) b} = {z,a} (x) b + a (x) {z,b}.
PoissonOrder tensor_order(const PoissonOrder& a, const PoissonOrder& b);

VecPoly a_zero(const PoissonOrder& a);
VecPoly a_one(const PoissonOrder& a);
VecPoly a_basis(const PoissonOrder& a, int j);
VecPoly a_scalar(const PoissonOrder& a, const Poly& z);   // z * 1_A
VecPoly a_mul(const PoissonOrder& a, const VecPoly& x, const VecPoly& y);

// {x_var, -}: coordinatewise base bracket plus the ham-table correction.
VecPoly ham_action(const PoissonOrder& a, int var, const VecPoly& x);

// {z, -} for arbitrary z in Z, through H(z) = sum_i dz/dx_i H(x_i).
VecPoly order_bracket(const PoissonOrder& a, const Poly& z, const VecPoly& x);

struct OrderIdeal {
  PoissonOrder order;
  std::vector<VecPoly> gens;
  Submodule closure;   // two-sided closure; module basis cached inside
};

// Two-sided ideal generated by gens: the smallest submodule of Z^rank
// containing them that is stable under left and right multiplication by
// every basis element (which gives stability under all of A by linearity).
OrderIdeal order_ideal_closure(const PoissonOrder& a, std::vector<VecPoly> gens);

bool order_ideal_member(const VecPoly& x, const OrderIdeal& I);
bool order_ideal_equal(const OrderIdeal& I, const OrderIdeal& J);

// True when every Hamiltonian maps the closure into itself.
bool order_ideal_is_stable(const OrderIdeal& I);

// Largest two-sided ideal inside I stable under every Hamiltonian. Same
// contract as the base-algebra core: exact on inputs that are already
// stable; exact for linear base tables with constant ham entries, where the
// Hamiltonians preserve the coordinate degree slabs and the core is found
// as the largest invariant subspace of closure-within-a-slab, escalating
// the degree until two consecutive slabs generate the same ideal (a
// plateau longer than two degrees would end the escalation early, so the
// settled answer is trusted, not certified). Anything else falls back to
// the descending cut a |-> {a : H(x_i) a stays inside}, re-closed two-sided
// each round, which returns only on a genuine fixed point and otherwise
// exhausts the round cap with a hard error rather than truncate.
OrderIdeal order_poisson_core(const OrderIdeal& I, int round_cap = 64);

// {z in Z : z * 1_A lies in I}.
Ideal contract_to_base(const OrderIdeal& I);

} // namespace pomelo
