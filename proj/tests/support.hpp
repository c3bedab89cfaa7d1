#pragma once

// Shared helpers for the test suites: ring shorthands and a deterministic
// random polynomial source.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pomelo/groebner.hpp"
#include "pomelo/polynomial.hpp"

namespace testsup {

using namespace pomelo;

inline Ring qring(const std::string& vars,
                  MonomialOrder ord = MonomialOrder::degrevlex()) {
  std::istringstream in(vars);
  std::vector<std::string> names;
  std::string v;
  while (in >> v) names.push_back(v);
  return make_ring(names, Field::rationals(), ord);
}

inline Poly pp(const Ring& r, const std::string& text) { return parse_poly(r, text); }

// Deterministic random polynomial: up to `terms` monomials of total degree
// <= deg, integer coefficients in [-4, 4].
inline Poly random_poly(const Ring& r, int deg, int terms, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> expo(0, deg);
  Poly p = Poly::zero(r);
  for (int t = 0; t < terms; ++t) {
    Expvec e(r->nvars(), 0);
    int budget = expo(rng);
    for (int i = 0; i < r->nvars() && budget > 0; ++i) {
      std::uniform_int_distribution<int> pick(0, budget);
      e[i] = pick(rng);
      budget -= e[i];
    }
    int c = coef(rng);
    if (c == 0) continue;
    p = p + Poly::monomial(r, e, r->field.from_int(c));
  }
  return p;
}

// Brute-force membership: search for cofactors q_i with
// deg(q_i) + deg(g_i) <= bound such that f = sum q_i g_i, by exact linear
// algebra over the coefficient field. Independent of the division engine.
bool linear_membership(const Poly& f, const std::vector<Poly>& gens, int bound);

} // namespace testsup
