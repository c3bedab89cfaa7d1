#pragma once

// Poisson-stable ideals: the stability test, the smallest Poisson ideal
// containing a given one (closure by bracket saturation), and the largest
// Poisson ideal inside one (the core, by a syzygy-driven shrinking
// iteration). Cores of maximal ideals are the symplectic-core ideals.

#include "pomelo/groebner.hpp"
#include "pomelo/modulegb.hpp"
#include "pomelo/poisson.hpp"

namespace pomelo {

struct StabilityWitness {
  int var;        // variable index i with {x_i, f_gen} outside the ideal
  int gen;        // index into the ideal's generator list
  Poly bracket;   // the offending value {x_i, f_gen}
};

struct PoissonIdealReport {
  Ideal ideal;
  bool is_poisson = false;
  std::vector<StabilityWitness> witnesses;
};

// Checks {x_i, f_j} in I over the ideal's own generators. Because the
// bracket is a derivation in each slot, passing on generators certifies
// stability for every element of the ideal.
PoissonIdealReport is_poisson_stable(const Ideal& I, const PoissonAlgebra& P);

// Smallest Poisson ideal containing I: append generator brackets until the
// basis stops growing. round_cap guards against engine bugs; exceeding it
// is an internal error, never a silent truncation.
Ideal poisson_closure(const Ideal& I, const PoissonAlgebra& P,
                      int round_cap = 64);

// Largest Poisson ideal contained in I, P(I) = {f : every iterated
// generator-Hamiltonian derivative of f stays in I}.
//
// Already-stable inputs come straight back. When every bracket-table entry
// has degree <= 1 the Hamiltonians preserve total degree, so the slab
// {deg <= d} is invariant and P(I) ∩ slab is exactly the largest
// H-invariant subspace of the finite-dimensional space I ∩ slab -- a
// terminating linear-algebra computation; the ideal it generates is
// Poisson-stable and contained in P(I) by construction, grows with d, and
// equals P(I) once d reaches the core's generation degree. The degree
// escalation stops after two consecutive degrees without growth, so a core
// whose generators first appear past such a plateau would need a larger
// round_cap and a nudge; hand-scale Lie-Poisson cores settle immediately.
//
// For nonlinear tables the shrinking iteration
//   I_{k+1} = {f in I_k : {x_i, f} in I_k for all i}
// runs instead (each step is a syzygy kernel); a reached fixed point is
// exact, but descending ideal chains carry no chain condition, so runs
// that have not stabilized at the cap are a hard error, never a silent
// truncation.
Ideal poisson_core(const Ideal& I, const PoissonAlgebra& P, int round_cap = 64);

// Core of the maximal ideal (x_1 - a_1, ..., x_n - a_n): the ideal of the
// closure of the symplectic core of the point.
Ideal symplectic_core_ideal(const std::vector<Coef>& point,
                            const PoissonAlgebra& P, int round_cap = 64);

} // namespace pomelo
