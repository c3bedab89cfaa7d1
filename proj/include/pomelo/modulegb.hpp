#pragma once

// Groebner bases for submodules of free modules Z^m, position-over-term
// order (position dominates, earlier positions larger), and the syzygy
// kernels the Poisson-ideal machinery is built on.

#include "pomelo/groebner.hpp"

namespace pomelo {

// One polynomial per position.
using VecPoly = std::vector<Poly>;

VecPoly vec_zero(const Ring& r, int rank);
bool vec_is_zero(const VecPoly& v);
VecPoly vec_add(const VecPoly& a, const VecPoly& b);
VecPoly vec_sub(const VecPoly& a, const VecPoly& b);
VecPoly vec_scale(const VecPoly& a, const Poly& p);
bool vec_eq(const VecPoly& a, const VecPoly& b);
std::string vec_str(const VecPoly& v);

// Reduced monic basis under position-over-term with `ord` on monomials.
std::vector<VecPoly> module_groebner(const std::vector<VecPoly>& gens,
                                     const MonomialOrder& ord);

VecPoly module_normal_form(const VecPoly& v, const std::vector<VecPoly>& basis,
                           const MonomialOrder& ord);

class Submodule {
public:
  Submodule() = default;
  Submodule(Ring r, int rank, std::vector<VecPoly> gens);

  const Ring& ring() const { return ring_; }
  int rank() const { return rank_; }
  const std::vector<VecPoly>& gens() const { return gens_; }
  const std::vector<VecPoly>& basis() const;   // ambient order, cached

  std::string str() const;

private:
  struct Cache {
    std::mutex mu;
    std::optional<std::vector<VecPoly>> basis;
  };
  Ring ring_;
  int rank_ = 0;
  std::vector<VecPoly> gens_;
  std::shared_ptr<Cache> cache_;
};

bool submodule_member(const VecPoly& v, const Submodule& W);
bool submodule_contains(const Submodule& big, const Submodule& small);
bool submodule_equal(const Submodule& a, const Submodule& b);

// Generators of {g in Z^s : sum_j g_j u_j = 0} for u_j in Z^n.
std::vector<VecPoly> syzygies(const Ring& r, int n, const std::vector<VecPoly>& u);

// Generators of {g in Z^s : sum_j g_j rows_j lies in I * Z^n componentwise},
// as a submodule of Z^s. Computed from a module basis of the rows augmented
// with I times the standard basis vectors, positions of the ambient block
// eliminated first.
Submodule syzygy_kernel(const std::vector<VecPoly>& rows, const Ideal& I);

// Same with an arbitrary submodule W of Z^n as the target.
Submodule kernel_mod_submodule(const std::vector<VecPoly>& rows, const Submodule& W);

// The rank-1 case read back as an ideal.
Ideal ideal_from_rank1(const Submodule& W);

} // namespace pomelo
