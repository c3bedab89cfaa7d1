#pragma once

// Reduced Groebner bases and the ideal operations built on them. The engine
// is plain Buchberger with the Gebauer-Moeller pair elimination ("normal
// pair" criteria) and the sugar selection rule; bases are interreduced and
// monic, so each ideal has exactly one basis per order.

#include <mutex>
#include <optional>

#include "pomelo/polynomial.hpp"

namespace pomelo {

// Remainder of multivariate division of f by `basis` (need not be a GB).
// No term of the result is divisible by any leading monomial of the basis.
Poly normal_form(const Poly& f, const std::vector<Poly>& basis,
                 const MonomialOrder& ord);

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& ord);

// Reduced monic basis, sorted descending by leading monomial.
std::vector<Poly> groebner(const std::vector<Poly>& gens, const MonomialOrder& ord);

// Exact division by a single polynomial; internal error if g does not divide f.
Poly exact_div(const Poly& f, const Poly& g);

class Ideal {
public:
  Ideal() = default;
  Ideal(Ring r, std::vector<Poly> gens);

  const Ring& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }

  // Reduced basis under ord, cached; copies of the ideal share the cache.
  const std::vector<Poly>& basis(const MonomialOrder& ord) const;
  const std::vector<Poly>& basis() const;   // ambient order

  bool is_unit() const;   // basis == {1}
  std::string str() const;

private:
  struct Cache {
    std::mutex mu;
    std::map<std::string, std::vector<Poly>> by_order;
  };
  Ring ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

// The ideal with its reduced basis under ord already computed and cached.
Ideal groebner_basis(const Ideal& I, const MonomialOrder& ord);

bool ideal_member(const Poly& f, const Ideal& I);
bool ideal_equal(const Ideal& I, const Ideal& J);
bool ideal_contains(const Ideal& I, const Ideal& J);   // J subseteq I

Ideal ideal_intersect(const Ideal& I, const Ideal& J);
Ideal ideal_quotient(const Ideal& I, const Ideal& J);  // I : J

// Generators of I n k[remaining vars]; `vars` are indices to eliminate.
// The overload with an explicit order demands an elimination order for a
// prefix `vars` and reports an input error otherwise.
Ideal eliminate(const Ideal& I, const std::vector<int>& vars);
Ideal eliminate(const Ideal& I, const std::vector<int>& vars,
                const MonomialOrder& ord);

// Rabinowitsch trick: f in sqrt(I) iff 1 in I + (1 - y f).
bool radical_member(const Poly& f, const Ideal& I);

// Dimension of V(I) via maximal variable sets independent modulo the
// leading-term ideal; -1 for the unit ideal.
int krull_dimension(const Ideal& I);

// Monomial basis of R/I (the monomials outside the leading-term ideal),
// sorted ascending by degree, when R/I is finite-dimensional; nullopt
// otherwise. The unit ideal gives an empty list.
std::optional<std::vector<Expvec>> standard_monomials(const Ideal& I);

} // namespace pomelo
