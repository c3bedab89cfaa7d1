#include "pomelo/poisson.hpp"

#include <algorithm>

#include "pomelo/groebner.hpp"

namespace pomelo {

PoissonAlgebra make_poisson(Ring r, std::vector<std::vector<Poly>> table) {
  if (!r) throw input_error("poisson algebra needs a ring");
  const int n = r->nvars();
  if (static_cast<int>(table.size()) != n)
    throw input_error("bracket table must be square of the variable count");
  for (auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw input_error("bracket table must be square of the variable count");
    for (auto& p : row)
      if (!p.is_zero()) require_same_ring(r, p.ring());
  }
  for (int i = 0; i < n; ++i) {
    if (!table[i][i].is_zero())
      throw input_error("bracket table has a nonzero diagonal entry at " +
                        r->vars[i]);
    for (int j = i + 1; j < n; ++j)
      if (table[i][j] != -table[j][i])
        throw input_error("bracket table not antisymmetric at (" + r->vars[i] +
                          ", " + r->vars[j] + ")");
  }
  // normalize zero entries onto the shared ring so later arithmetic never
  // sees a ring-less polynomial
  for (auto& row : table)
    for (auto& p : row)
      if (p.is_zero()) p = Poly::zero(r);
  return PoissonAlgebra{std::move(r), std::move(table)};
}

PoissonAlgebra make_poisson(
    Ring r, const std::vector<std::tuple<int, int, Poly>>& entries) {
  if (!r) throw input_error("poisson algebra needs a ring");
  const int n = r->nvars();
  std::vector<std::vector<Poly>> table(n, std::vector<Poly>(n, Poly::zero(r)));
  for (const auto& [i, j, p] : entries) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw input_error("bracket entry index out of range");
    if (i >= j)
      throw input_error("bracket entries must have i < j; the lower triangle "
                        "is implied by antisymmetry");
    table[i][j] = p;
    table[j][i] = -p;
  }
  return make_poisson(std::move(r), std::move(table));
}

Poly poisson_bracket(const PoissonAlgebra& P, const Poly& f, const Poly& g) {
  require_same_ring(P.ring, f.ring());
  require_same_ring(P.ring, g.ring());
  const int n = P.nvars();
  std::vector<Poly> fd(n), gd(n);
  for (int i = 0; i < n; ++i) {
    fd[i] = f.derivative(i);
    gd[i] = g.derivative(i);
  }
  Poly acc = Poly::zero(P.ring);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (P.table[i][j].is_zero()) continue;
      acc = acc + P.table[i][j] * (fd[i] * gd[j] - fd[j] * gd[i]);
    }
  return acc;
}

JacobiReport jacobi_check(const PoissonAlgebra& P) {
  JacobiReport rep;
  const int n = P.nvars();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Poly xi = Poly::variable(P.ring, i);
        Poly xj = Poly::variable(P.ring, j);
        Poly xk = Poly::variable(P.ring, k);
        Poly jac = poisson_bracket(P, xi, P.table[j][k]) +
                   poisson_bracket(P, xj, P.table[k][i]) +
                   poisson_bracket(P, xk, P.table[i][j]);
        if (!jac.is_zero()) rep.violations.push_back({i, j, k, jac});
      }
  return rep;
}

std::vector<Poly> hamiltonian(const PoissonAlgebra& P, const Poly& z) {
  require_same_ring(P.ring, z.ring());
  const int n = P.nvars();
  std::vector<Poly> zd(n);
  for (int j = 0; j < n; ++j) zd[j] = z.derivative(j);
  // {z, x_i} = sum_j table[j][i] * dz/dx_j
  std::vector<Poly> comps(n, Poly::zero(P.ring));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (P.table[j][i].is_zero() || zd[j].is_zero()) continue;
      comps[i] = comps[i] + P.table[j][i] * zd[j];
    }
  return comps;
}

std::vector<Poly> poisson_centre(const PoissonAlgebra& P, int degree_bound) {
  if (degree_bound < 0) throw input_error("degree bound must be >= 0");
  const Ring& R = P.ring;
  const int n = P.nvars();
  std::vector<Expvec> mons = monomials_up_to_degree(n, degree_bound);
  const int ncols = static_cast<int>(mons.size());
  const Field& F = R->field;

  // rows: the coefficient of each monomial appearing in {m, x_i}, stacked
  // over all generators i
  std::map<Expvec, int> row_of;
  CoefMat mat;
  for (int i = 0; i < n; ++i) {
    for (int col = 0; col < ncols; ++col) {
      Poly m = Poly::monomial(R, mons[col], F.one());
      Poly br = Poly::zero(R);
      for (int j = 0; j < n; ++j) {
        if (P.table[j][i].is_zero()) continue;
        br = br + P.table[j][i] * m.derivative(j);
      }
      for (const auto& [e, c] : br.terms()) {
        Expvec key = e;
        key.push_back(i);   // separate the blocks per generator
        auto it = row_of.find(key);
        if (it == row_of.end()) {
          it = row_of.emplace(key, static_cast<int>(mat.size())).first;
          mat.emplace_back(ncols, F.zero());
        }
        mat[it->second][col] = c;
      }
    }
  }

  CoefMat ker = matrix_kernel(F, mat, ncols);
  std::vector<Poly> out;
  for (const auto& v : ker) {
    Poly z = Poly::zero(R);
    for (int col = 0; col < ncols; ++col)
      if (!v[col].is_zero()) z.add_term(mons[col], v[col]);
    out.push_back(z.monic(R->order));
  }
  std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
    return R->order.cmp(a.leading_monomial(R->order),
                        b.leading_monomial(R->order)) > 0;
  });
  return out;
}

PoissonAlgebra lie_poisson(
    const Ring& r, const std::vector<std::vector<std::vector<Coef>>>& c) {
  if (!r) throw input_error("lie_poisson needs a ring");
  const int n = r->nvars();
  if (static_cast<int>(c.size()) != n)
    throw input_error("structure constants must form an n x n x n array");
  for (const auto& plane : c) {
    if (static_cast<int>(plane.size()) != n)
      throw input_error("structure constants must form an n x n x n array");
    for (const auto& row : plane)
      if (static_cast<int>(row.size()) != n)
        throw input_error("structure constants must form an n x n x n array");
  }
  const Field& F = r->field;
  std::vector<std::vector<Poly>> table(n, std::vector<Poly>(n, Poly::zero(r)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly b = Poly::zero(r);
      for (int k = 0; k < n; ++k) {
        if (c[i][j][k].is_zero()) continue;
        if (c[i][j][k] != F.neg(c[j][i][k]))
          throw input_error("structure constants not antisymmetric at (" +
                            r->vars[i] + ", " + r->vars[j] + ")");
        Expvec e(n, 0);
        e[k] = 1;
        b.add_term(e, c[i][j][k]);
      }
      table[i][j] = b;
    }
  PoissonAlgebra P = make_poisson(r, std::move(table));
  JacobiReport rep = jacobi_check(P);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw input_error("structure constants fail the Jacobi identity at (" +
                      r->vars[v.i] + ", " + r->vars[v.j] + ", " + r->vars[v.k] +
                      ")");
  }
  return P;
}

int leaf_rank(const PoissonAlgebra& P, const std::vector<Coef>& point) {
  const int n = P.nvars();
  if (static_cast<int>(point.size()) != n)
    throw input_error("point needs one coordinate per variable");
  const Field& F = P.ring->field;
  CoefMat m(n, std::vector<Coef>(n, F.zero()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!P.table[i][j].is_zero()) m[i][j] = P.table[i][j].eval(point);
  return matrix_rank(F, std::move(m));
}

LocalizedPoisson::LocalizedPoisson(PoissonAlgebra base, Poly s)
    : base_(std::move(base)), s_(std::move(s)) {
  if (s_.is_zero()) throw input_error("cannot localize at zero");
  require_same_ring(base_.ring, s_.ring());
}

LocalElem LocalizedPoisson::reduce(LocalElem a) const {
  if (a.num.is_zero()) return {Poly::zero(base_.ring), 0};
  const MonomialOrder& ord = base_.ring->order;
  while (a.k > 0 && normal_form(a.num, {s_}, ord).is_zero()) {
    a.num = exact_div(a.num, s_);
    --a.k;
  }
  return a;
}

bool LocalizedPoisson::equal(const LocalElem& a, const LocalElem& b) const {
  return a.num * s_.pow(b.k) == b.num * s_.pow(a.k);
}

LocalElem LocalizedPoisson::add(const LocalElem& a, const LocalElem& b) const {
  int m = std::max(a.k, b.k);
  return reduce({a.num * s_.pow(m - a.k) + b.num * s_.pow(m - b.k), m});
}

LocalElem LocalizedPoisson::mul(const LocalElem& a, const LocalElem& b) const {
  return reduce({a.num * b.num, a.k + b.k});
}

LocalElem LocalizedPoisson::bracket(const LocalElem& a,
                                    const LocalElem& b) const {
  // {p/s^k, q/s^l} = (s{p,q} - l q {p,s} + k p {q,s}) / s^(k+l+1),
  // the quotient rule applied in both slots
  Poly num = s_ * poisson_bracket(base_, a.num, b.num);
  if (b.k != 0)
    num = num - (b.num * poisson_bracket(base_, a.num, s_)).scaled(
                    base_.ring->field.from_int(b.k));
  if (a.k != 0)
    num = num + (a.num * poisson_bracket(base_, b.num, s_)).scaled(
                    base_.ring->field.from_int(a.k));
  return reduce({num, a.k + b.k + 1});
}

std::string LocalizedPoisson::str(const LocalElem& a) const {
  if (a.k == 0) return a.num.str();
  std::string out = "(" + a.num.str() + ") / (" + s_.str() + ")";
  if (a.k > 1) out += "^" + std::to_string(a.k);
  return out;
}

LocalizedPoisson localize(const PoissonAlgebra& P, const Poly& s) {
  return LocalizedPoisson(P, s);
}

} // namespace pomelo
