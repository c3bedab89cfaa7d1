#pragma once

// Dense exact linear algebra over the coefficient field, plus the monomial
// enumeration used to turn linear conditions on polynomials into matrices.
// Plain Gauss-Jordan; systems in this library stay small.

#include <vector>

#include "pomelo/polynomial.hpp"

namespace pomelo {

using CoefMat = std::vector<std::vector<Coef>>;

// In-place reduced row echelon form. Returns the pivot column of each
// nonzero row, in order.
std::vector<int> rref(const Field& F, CoefMat& m);

int matrix_rank(const Field& F, CoefMat m);

// Canonical basis of {v : m v = 0}: one vector per free column, a 1 there,
// pivot entries filled from the echelon form, ordered by free column.
CoefMat matrix_kernel(const Field& F, const CoefMat& m, int ncols);

// Exponent vectors of total degree <= d: ascending by degree, descending
// lexicographically inside one degree.
std::vector<Expvec> monomials_up_to_degree(int nvars, int d);

CoefMat mat_mul(const Field& F, const CoefMat& a, const CoefMat& b);

CoefMat mat_identity(const Field& F, int d);

CoefMat mat_add(const Field& F, const CoefMat& a, const CoefMat& b);

CoefMat mat_scale(const Field& F, const Coef& c, const CoefMat& a);

bool mat_eq(const CoefMat& a, const CoefMat& b);

bool mat_is_zero(const CoefMat& a);

// Largest subspace of span(v0) mapped into itself by every operator
// (vectors are columns; ops act by left multiplication). The chain
// V_{k+1} = {x in V_k : M x in V_k for all M} strictly decreases in
// dimension until it stabilizes, so this always terminates. Returns a
// canonical (echelon-kernel) row basis.
CoefMat largest_invariant_subspace(const Field& F, const CoefMat& v0,
                                   const std::vector<CoefMat>& ops, int ncols);

} // namespace pomelo
