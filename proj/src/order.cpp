#include "pomelo/order.hpp"

#include <algorithm>

namespace pomelo {

namespace {

Poly onto_ring(const Ring& r, const Poly& p) {
  if (p.is_zero()) return Poly::zero(r);
  require_same_ring(p.ring(), r);
  return p;
}

VecPoly onto_ring(const Ring& r, const VecPoly& v, int rank, const char* what) {
  if (static_cast<int>(v.size()) != rank)
    throw input_error(std::string(what) + " must have one coordinate per basis element");
  VecPoly out;
  out.reserve(rank);
  for (const Poly& p : v) out.push_back(onto_ring(r, p));
  return out;
}

} // namespace

VecPoly a_zero(const PoissonOrder& a) { return vec_zero(a.ring(), a.rank); }

VecPoly a_one(const PoissonOrder& a) { return a.unit; }

VecPoly a_basis(const PoissonOrder& a, int j) {
  VecPoly v = a_zero(a);
  v[j] = Poly::constant(a.ring(), 1L);
  return v;
}

VecPoly a_scalar(const PoissonOrder& a, const Poly& z) {
  return vec_scale(a.unit, z);
}

VecPoly a_mul(const PoissonOrder& a, const VecPoly& x, const VecPoly& y) {
  if (static_cast<int>(x.size()) != a.rank || static_cast<int>(y.size()) != a.rank)
    throw input_error("order element has the wrong number of coordinates");
  VecPoly out = a_zero(a);
  for (int j = 0; j < a.rank; ++j) {
    if (x[j].is_zero()) continue;
    for (int k = 0; k < a.rank; ++k) {
      if (y[k].is_zero()) continue;
      Poly c = x[j] * y[k];
      const VecPoly& mu = a.mult[j][k];
      for (int l = 0; l < a.rank; ++l)
        if (!mu[l].is_zero()) out[l] = out[l] + c * mu[l];
    }
  }
  return out;
}

VecPoly ham_action(const PoissonOrder& a, int var, const VecPoly& x) {
  if (static_cast<int>(x.size()) != a.rank)
    throw input_error("order element has the wrong number of coordinates");
  Poly xv = Poly::variable(a.ring(), var);
  VecPoly out = a_zero(a);
  for (int l = 0; l < a.rank; ++l)
    out[l] = poisson_bracket(a.base, xv, x[l]);
  for (int j = 0; j < a.rank; ++j) {
    if (x[j].is_zero()) continue;
    const VecPoly& h = a.ham[var][j];
    for (int l = 0; l < a.rank; ++l)
      if (!h[l].is_zero()) out[l] = out[l] + x[j] * h[l];
  }
  return out;
}

VecPoly order_bracket(const PoissonOrder& a, const Poly& z, const VecPoly& x) {
  VecPoly out = a_zero(a);
  for (int i = 0; i < a.nvars(); ++i) {
    Poly dz = z.derivative(i);
    if (dz.is_zero()) continue;
    out = vec_add(out, vec_scale(ham_action(a, i, x), dz));
  }
  return out;
}

PoissonOrder make_order(PoissonAlgebra base,
                        std::vector<std::vector<VecPoly>> mult, VecPoly unit,
                        std::vector<std::vector<VecPoly>> ham,
                        std::vector<std::string> basis) {
  Ring R = base.ring;   // keep a handle; `base` is consumed below
  const int m = static_cast<int>(mult.size());
  const int n = base.nvars();
  if (m == 0) throw input_error("an order needs at least one basis element");

  if (basis.empty())
    for (int j = 0; j < m; ++j) basis.push_back("e" + std::to_string(j + 1));
  if (static_cast<int>(basis.size()) != m)
    throw input_error("order basis needs one name per basis element");
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k)
      if (basis[j] == basis[k])
        throw input_error("duplicate basis name: " + basis[j]);

  for (auto& row : mult) {
    if (static_cast<int>(row.size()) != m)
      throw input_error("order multiplication table must be rank x rank x rank");
    for (auto& v : row) v = onto_ring(R, v, m, "an order multiplication entry");
  }
  unit = onto_ring(R, unit, m, "the order unit vector");
  if (static_cast<int>(ham.size()) != n)
    throw input_error("order hamiltonian table needs one row per variable");
  for (auto& row : ham) {
    if (static_cast<int>(row.size()) != m)
      throw input_error("order hamiltonian table must be nvars x rank x rank");
    for (auto& v : row) v = onto_ring(R, v, m, "an order hamiltonian entry");
  }

  PoissonOrder A{std::move(base), m, std::move(basis), std::move(mult),
                 std::move(unit), std::move(ham)};

  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) {
        VecPoly lhs = a_mul(A, A.mult[j][k], a_basis(A, l));
        VecPoly rhs = a_mul(A, a_basis(A, j), A.mult[k][l]);
        if (!vec_eq(lhs, rhs))
          throw input_error("order multiplication is not associative at (" +
                            A.basis[j] + ", " + A.basis[k] + ", " + A.basis[l] + ")");
      }

  for (int j = 0; j < m; ++j) {
    VecPoly e = a_basis(A, j);
    if (!vec_eq(a_mul(A, A.unit, e), e) || !vec_eq(a_mul(A, e, A.unit), e))
      throw input_error("order unit fails at " + A.basis[j]);
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        VecPoly lhs = ham_action(A, i, A.mult[j][k]);
        VecPoly rhs = vec_add(a_mul(A, A.ham[i][j], a_basis(A, k)),
                              a_mul(A, a_basis(A, j), A.ham[i][k]));
        if (!vec_eq(lhs, rhs))
          throw input_error("derivation axiom (i) fails at {" + R->vars[i] +
                            ", " + A.basis[j] + "*" + A.basis[k] + "}");
      }

  // Implied by the two axioms above, kept as a guard: a derivation with a
  // unit law kills 1_A, which is exactly compatibility with the base bracket.
  for (int i = 0; i < n; ++i)
    if (!vec_is_zero(ham_action(A, i, A.unit)))
      throw input_error("hamiltonian action fails to restrict to the base bracket at " +
                        R->vars[i]);

  return A;
}

PoissonOrder trivial_order(const PoissonAlgebra& base) {
  const Ring& R = base.ring;
  Poly one = Poly::constant(R, 1L);
  std::vector<std::vector<VecPoly>> mult{{{one}}};
  std::vector<std::vector<VecPoly>> ham(base.nvars(), {{Poly::zero(R)}});
  return make_order(base, std::move(mult), {one}, std::move(ham));
}

PoissonOrder matrix_order(const PoissonAlgebra& base, int n) {
  if (n < 1) throw input_error("matrix order needs n >= 1");
  const Ring& R = base.ring;
  const int m = n * n;
  Poly one = Poly::constant(R, 1L);
  auto idx = [n](int i, int j) { return i * n + j; };

  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));

  std::vector<std::vector<VecPoly>> mult(m, std::vector<VecPoly>(m, VecPoly(m, Poly::zero(R))));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (j == k) mult[idx(i, j)][idx(k, l)][idx(i, l)] = one;

  VecPoly unit(m, Poly::zero(R));
  for (int i = 0; i < n; ++i) unit[idx(i, i)] = one;

  std::vector<std::vector<VecPoly>> ham(base.nvars(),
                                        std::vector<VecPoly>(m, VecPoly(m, Poly::zero(R))));
  return make_order(base, std::move(mult), std::move(unit), std::move(ham),
                    std::move(names));
}

PoissonOrder opposite_order(const PoissonOrder& a) {
  std::vector<std::vector<VecPoly>> mult(a.rank, std::vector<VecPoly>(a.rank));
  for (int j = 0; j < a.rank; ++j)
    for (int k = 0; k < a.rank; ++k) mult[j][k] = a.mult[k][j];
  return make_order(a.base, std::move(mult), a.unit, a.ham, a.basis);
}

PoissonOrder tensor_order(const PoissonOrder& a, const PoissonOrder& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.base.table != b.base.table)
    throw input_error("tensor factors must be orders over the same base");
  const Ring& R = a.ring();
  const int ma = a.rank, mb = b.rank, m = ma * mb;
  auto idx = [mb](int s, int t) { return s * mb + t; };

  std::vector<std::string> names;
  for (int j = 0; j < ma; ++j)
    for (int k = 0; k < mb; ++k) names.push_back(a.basis[j] + "(x)" + b.basis[k]);

  std::vector<std::vector<VecPoly>> mult(m, std::vector<VecPoly>(m, VecPoly(m, Poly::zero(R))));
  for (int j = 0; j < ma; ++j)
    for (int k = 0; k < mb; ++k)
      for (int j2 = 0; j2 < ma; ++j2)
        for (int k2 = 0; k2 < mb; ++k2) {
          VecPoly& out = mult[idx(j, k)][idx(j2, k2)];
          for (int s = 0; s < ma; ++s) {
            if (a.mult[j][j2][s].is_zero()) continue;
            for (int t = 0; t < mb; ++t)
              if (!b.mult[k][k2][t].is_zero())
                out[idx(s, t)] = out[idx(s, t)] + a.mult[j][j2][s] * b.mult[k][k2][t];
          }
        }

  VecPoly unit(m, Poly::zero(R));
  for (int s = 0; s < ma; ++s)
    for (int t = 0; t < mb; ++t) unit[idx(s, t)] = a.unit[s] * b.unit[t];

  std::vector<std::vector<VecPoly>> ham(a.nvars(),
                                        std::vector<VecPoly>(m, VecPoly(m, Poly::zero(R))));
  for (int i = 0; i < a.nvars(); ++i)
    for (int j = 0; j < ma; ++j)
      for (int k = 0; k < mb; ++k) {
        VecPoly& out = ham[i][idx(j, k)];
        for (int s = 0; s < ma; ++s)
          if (!a.ham[i][j][s].is_zero())
            out[idx(s, k)] = out[idx(s, k)] + a.ham[i][j][s];
        for (int t = 0; t < mb; ++t)
          if (!b.ham[i][k][t].is_zero())
            out[idx(j, t)] = out[idx(j, t)] + b.ham[i][k][t];
      }

  return make_order(a.base, std::move(mult), std::move(unit), std::move(ham),
                    std::move(names));
}

OrderIdeal order_ideal_closure(const PoissonOrder& a, std::vector<VecPoly> gens) {
  const Ring& R = a.ring();
  std::vector<VecPoly> seed;
  for (auto& g : gens) {
    g = onto_ring(R, g, a.rank, "an order ideal generator");
    if (!vec_is_zero(g)) seed.push_back(g);
  }
  Submodule S(R, a.rank, std::move(seed));
  while (true) {
    std::vector<VecPoly> added;
    for (const VecPoly& w : S.basis())
      for (int j = 0; j < a.rank; ++j) {
        VecPoly e = a_basis(a, j);
        for (VecPoly v : {a_mul(a, e, w), a_mul(a, w, e)})
          if (!vec_is_zero(v) && !submodule_member(v, S))
            added.push_back(std::move(v));
      }
    if (added.empty()) break;
    std::vector<VecPoly> next = S.basis();
    next.insert(next.end(), added.begin(), added.end());
    S = Submodule(R, a.rank, std::move(next));
  }
  return OrderIdeal{a, std::move(gens), std::move(S)};
}

bool order_ideal_member(const VecPoly& x, const OrderIdeal& I) {
  if (static_cast<int>(x.size()) != I.order.rank)
    throw input_error("order element has the wrong number of coordinates");
  return submodule_member(x, I.closure);
}

bool order_ideal_equal(const OrderIdeal& I, const OrderIdeal& J) {
  return submodule_equal(I.closure, J.closure);
}

bool order_ideal_is_stable(const OrderIdeal& I) {
  for (const VecPoly& w : I.closure.basis())
    for (int i = 0; i < I.order.nvars(); ++i)
      if (!submodule_member(ham_action(I.order, i, w), I.closure)) return false;
  return true;
}

namespace {

// Core of the closure within the slab {all coordinates of degree <= d},
// valid when every Hamiltonian preserves the slab: the two-sided ideal
// generated by the largest subspace of closure-within-slab invariant under
// every coordinate-level Hamiltonian matrix.
Submodule order_core_slab(const PoissonOrder& A, const Submodule& closure, int d) {
  const Ring& R = A.ring();
  const Field& F = R->field;
  const int n = A.nvars(), m = A.rank;
  std::vector<Expvec> mons = monomials_up_to_degree(n, d);
  const int N = static_cast<int>(mons.size());
  const int cols = m * N;
  std::map<Expvec, int> col_of;
  for (int c = 0; c < N; ++c) col_of[mons[c]] = c;

  // closure within the slab: kernel of (position, monomial) |-> module
  // normal form, rows keyed by the (position, monomial) support of the forms
  const std::vector<VecPoly>& gb = closure.basis();
  std::map<std::pair<int, Expvec>, int> nf_row;
  CoefMat nf_mat;
  for (int l = 0; l < m; ++l)
    for (int c = 0; c < N; ++c) {
      VecPoly v = vec_zero(R, m);
      v[l] = Poly::monomial(R, mons[c], F.one());
      VecPoly nf = module_normal_form(v, gb, R->order);
      for (int p = 0; p < m; ++p)
        for (const auto& [e, coef] : nf[p].terms()) {
          auto key = std::make_pair(p, e);
          auto it = nf_row.find(key);
          if (it == nf_row.end()) {
            it = nf_row.emplace(key, static_cast<int>(nf_mat.size())).first;
            nf_mat.emplace_back(cols, F.zero());
          }
          nf_mat[it->second][l * N + c] = coef;
        }
    }
  CoefMat inside = matrix_kernel(F, nf_mat, cols);

  // each Hamiltonian as a matrix on the slab: coordinatewise base bracket
  // plus the ham-table correction
  std::vector<CoefMat> ops;
  for (int i = 0; i < n; ++i) {
    CoefMat H(cols, std::vector<Coef>(cols, F.zero()));
    Poly xv = Poly::variable(R, i);
    for (int l = 0; l < m; ++l)
      for (int c = 0; c < N; ++c) {
        Poly mono = Poly::monomial(R, mons[c], F.one());
        Poly br = poisson_bracket(A.base, xv, mono);
        for (const auto& [e, coef] : br.terms())
          H[l * N + col_of.at(e)][l * N + c] = coef;
        for (int p = 0; p < m; ++p) {
          if (A.ham[i][l][p].is_zero()) continue;
          Poly corr = mono * A.ham[i][l][p];
          for (const auto& [e, coef] : corr.terms()) {
            int r = p * N + col_of.at(e);
            H[r][l * N + c] = F.add(H[r][l * N + c], coef);
          }
        }
      }
    ops.push_back(std::move(H));
  }

  CoefMat core = largest_invariant_subspace(F, inside, ops, cols);
  std::vector<VecPoly> vecs;
  for (const auto& row : core) {
    VecPoly v = vec_zero(R, m);
    for (int l = 0; l < m; ++l)
      for (int c = 0; c < N; ++c)
        if (!row[l * N + c].is_zero()) v[l].add_term(mons[c], row[l * N + c]);
    if (!vec_is_zero(v)) vecs.push_back(std::move(v));
  }
  return order_ideal_closure(A, std::move(vecs)).closure;
}

OrderIdeal wrap(const PoissonOrder& A, const Submodule& S) {
  return OrderIdeal{A, S.basis(), S};
}

OrderIdeal order_core_by_descent(const OrderIdeal& I, int round_cap) {
  const PoissonOrder& A = I.order;
  const Ring& R = A.ring();
  const int n = A.nvars(), m = A.rank;
  Submodule cur = I.closure;
  for (int round = 0; round < round_cap; ++round) {
    const std::vector<VecPoly>& ws = cur.basis();
    if (ws.empty()) return wrap(A, cur);   // shrank to zero: a fixed point
    const int r = static_cast<int>(ws.size());

    // row_t = the stacked Hamiltonian images of basis vector t; a
    // combination sum g_t w_t stays cuttable iff sum g_t row_t lies in the
    // block-embedded copy of the current ideal
    std::vector<VecPoly> rows;
    rows.reserve(r);
    for (int t = 0; t < r; ++t) {
      VecPoly big;
      big.reserve(n * m);
      for (int i = 0; i < n; ++i) {
        VecPoly h = ham_action(A, i, ws[t]);
        big.insert(big.end(), h.begin(), h.end());
      }
      rows.push_back(std::move(big));
    }
    std::vector<VecPoly> wgens;
    wgens.reserve(static_cast<size_t>(r) * n);
    for (const VecPoly& w : ws)
      for (int i = 0; i < n; ++i) {
        VecPoly big = vec_zero(R, n * m);
        for (int l = 0; l < m; ++l) big[i * m + l] = w[l];
        wgens.push_back(std::move(big));
      }
    Submodule K = kernel_mod_submodule(rows, Submodule(R, n * m, std::move(wgens)));

    std::vector<VecPoly> imgs;
    for (const auto& g : K.gens()) {
      VecPoly v = vec_zero(R, m);
      for (int t = 0; t < r; ++t)
        if (!g[t].is_zero()) v = vec_add(v, vec_scale(ws[t], g[t]));
      if (!vec_is_zero(v)) imgs.push_back(std::move(v));
    }
    Submodule next = order_ideal_closure(A, std::move(imgs)).closure;
    if (submodule_equal(next, cur)) return wrap(A, cur);
    cur = std::move(next);
  }
  throw internal_error(
      "order poisson core iteration did not stabilize within the round cap");
}

} // namespace

OrderIdeal order_poisson_core(const OrderIdeal& I, int round_cap) {
  const PoissonOrder& A = I.order;
  if (I.closure.basis().empty()) return I;
  if (order_ideal_is_stable(I)) return I;

  bool slab_safe = true;
  for (const auto& row : A.base.table)
    for (const Poly& p : row)
      if (p.degree() > 1) slab_safe = false;
  for (const auto& row : A.ham)
    for (const VecPoly& v : row)
      for (const Poly& p : v)
        if (p.degree() > 0) slab_safe = false;
  if (!slab_safe) return order_core_by_descent(I, round_cap);

  int d = 1;
  for (const VecPoly& w : I.closure.basis())
    for (const Poly& p : w) d = std::max(d, p.degree());
  Submodule best = order_core_slab(A, I.closure, d);
  int quiet = 0;
  for (int step = 0; step < round_cap; ++step) {
    ++d;
    Submodule next = order_core_slab(A, I.closure, d);
    if (submodule_equal(next, best)) {
      if (++quiet >= 2) return wrap(A, best);
    } else {
      quiet = 0;
      best = std::move(next);
    }
  }
  throw internal_error(
      "order poisson core slab escalation did not settle within the round cap");
}

Ideal contract_to_base(const OrderIdeal& I) {
  Submodule K = kernel_mod_submodule({a_one(I.order)}, I.closure);
  return ideal_from_rank1(K);
}

} // namespace pomelo
