#include "pomelo/poisson_ideals.hpp"

#include <algorithm>

namespace pomelo {

PoissonIdealReport is_poisson_stable(const Ideal& I, const PoissonAlgebra& P) {
  PoissonIdealReport rep;
  rep.ideal = I;
  rep.is_poisson = true;
  if (I.gens().empty()) return rep;   // the zero ideal is Poisson
  require_same_ring(P.ring, I.ring());
  const int n = P.nvars();
  for (int j = 0; j < static_cast<int>(I.gens().size()); ++j) {
    for (int i = 0; i < n; ++i) {
      Poly br = poisson_bracket(P, Poly::variable(P.ring, i), I.gens()[j]);
      if (!ideal_member(br, I)) {
        rep.is_poisson = false;
        rep.witnesses.push_back({i, j, br});
      }
    }
  }
  return rep;
}

Ideal poisson_closure(const Ideal& I, const PoissonAlgebra& P, int round_cap) {
  if (I.gens().empty()) return I;
  require_same_ring(P.ring, I.ring());
  const Ring& R = P.ring;
  const int n = P.nvars();
  Ideal cur = I;
  for (int round = 0; round < round_cap; ++round) {
    const std::vector<Poly>& gb = cur.basis();
    if (gb.empty()) return cur;
    std::vector<Poly> gens = gb;
    for (const Poly& f : gb)
      for (int i = 0; i < n; ++i) {
        Poly br = poisson_bracket(P, Poly::variable(R, i), f);
        if (!br.is_zero()) gens.push_back(br);
      }
    Ideal next(R, std::move(gens));
    if (ideal_equal(next, cur)) return cur;
    cur = next;
  }
  throw internal_error("poisson closure did not stabilize within the round cap");
}

namespace {

// P(I) ∩ {deg <= d} for a degree-preserving (linear-table) bracket: the
// largest subspace of I ∩ {deg <= d} invariant under every generator
// Hamiltonian, returned as polynomials.
std::vector<Poly> core_slab(const Ideal& I, const PoissonAlgebra& P, int d) {
  const Ring& R = P.ring;
  const Field& F = R->field;
  const int n = R->nvars();
  std::vector<Expvec> mons = monomials_up_to_degree(n, d);
  const int N = static_cast<int>(mons.size());
  std::map<Expvec, int> col_of;
  for (int c = 0; c < N; ++c) col_of[mons[c]] = c;

  // I ∩ slab: kernel of monomial |-> its normal form against I's basis
  const std::vector<Poly>& gb = I.basis();
  std::map<Expvec, int> nf_row;
  CoefMat nf_mat;
  for (int c = 0; c < N; ++c) {
    Poly nf = normal_form(Poly::monomial(R, mons[c], F.one()), gb, R->order);
    for (const auto& [e, coef] : nf.terms()) {
      auto it = nf_row.find(e);
      if (it == nf_row.end()) {
        it = nf_row.emplace(e, static_cast<int>(nf_mat.size())).first;
        nf_mat.emplace_back(N, F.zero());
      }
      nf_mat[it->second][c] = coef;
    }
  }
  CoefMat inside = matrix_kernel(F, nf_mat, N);

  // the Hamiltonians as matrices on the slab
  std::vector<CoefMat> ops;
  for (int i = 0; i < n; ++i) {
    CoefMat H(N, std::vector<Coef>(N, F.zero()));
    for (int c = 0; c < N; ++c) {
      Poly hm = Poly::zero(R);
      Poly mono = Poly::monomial(R, mons[c], F.one());
      for (int j = 0; j < n; ++j) {
        if (P.table[i][j].is_zero()) continue;
        hm = hm + P.table[i][j] * mono.derivative(j);
      }
      for (const auto& [e, coef] : hm.terms()) H[col_of.at(e)][c] = coef;
    }
    ops.push_back(std::move(H));
  }

  CoefMat core = largest_invariant_subspace(F, inside, ops, N);
  std::vector<Poly> out;
  for (const auto& row : core) {
    Poly p = Poly::zero(R);
    for (int c = 0; c < N; ++c)
      if (!row[c].is_zero()) p.add_term(mons[c], row[c]);
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

Ideal core_by_descent(const Ideal& I, const PoissonAlgebra& P, int round_cap) {
  const Ring& R = P.ring;
  const int n = P.nvars();
  Ideal cur = I;
  for (int round = 0; round < round_cap; ++round) {
    const std::vector<Poly>& gb = cur.basis();
    if (gb.empty()) return cur;   // shrank to zero: a fixed point
    const int m = static_cast<int>(gb.size());
    std::vector<VecPoly> rows;
    rows.reserve(m);
    for (int j = 0; j < m; ++j) {
      VecPoly v;
      v.reserve(n);
      for (int i = 0; i < n; ++i)
        v.push_back(poisson_bracket(P, Poly::variable(R, i), gb[j]));
      rows.push_back(std::move(v));
    }
    Submodule K = syzygy_kernel(rows, cur);
    std::vector<Poly> gens;
    for (const auto& g : K.gens()) {
      Poly s = Poly::zero(R);
      for (int j = 0; j < m; ++j) s = s + g[j] * gb[j];
      if (!s.is_zero()) gens.push_back(std::move(s));
    }
    Ideal next(R, std::move(gens));
    if (ideal_equal(next, cur)) return next;
    cur = next;
  }
  throw internal_error(
      "poisson core iteration did not stabilize within the round cap");
}

} // namespace

Ideal poisson_core(const Ideal& I, const PoissonAlgebra& P, int round_cap) {
  if (I.gens().empty()) return I;
  require_same_ring(P.ring, I.ring());
  if (is_poisson_stable(I, P).is_poisson) return I;

  bool linear_table = true;
  for (const auto& row : P.table)
    for (const Poly& p : row)
      if (p.degree() > 1) linear_table = false;
  if (!linear_table) return core_by_descent(I, P, round_cap);

  int d = 1;
  for (const Poly& g : I.gens()) d = std::max(d, g.degree());
  Ideal best(P.ring, core_slab(I, P, d));
  int quiet = 0;
  for (int step = 0; step < round_cap; ++step) {
    ++d;
    Ideal next(P.ring, core_slab(I, P, d));
    if (ideal_equal(next, best)) {
      if (++quiet >= 2) return best;
    } else {
      quiet = 0;
      best = next;
    }
  }
  throw internal_error(
      "poisson core slab escalation did not settle within the round cap");
}

Ideal symplectic_core_ideal(const std::vector<Coef>& point,
                            const PoissonAlgebra& P, int round_cap) {
  const Ring& R = P.ring;
  const int n = P.nvars();
  if (static_cast<int>(point.size()) != n)
    throw input_error("point needs one coordinate per variable");
  std::vector<Poly> gens;
  gens.reserve(n);
  for (int i = 0; i < n; ++i)
    gens.push_back(Poly::variable(R, i) - Poly::constant(R, point[i]));
  return poisson_core(Ideal(R, std::move(gens)), P, round_cap);
}

} // namespace pomelo
