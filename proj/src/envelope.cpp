#include "pomelo/envelope.hpp"

#include <set>
#include <sstream>

#include "pomelo/groebner.hpp"
#include "pomelo/matrix.hpp"
#include "pomelo/poisson_ideals.hpp"

namespace pomelo {

EnvParent make_envelope(PoissonOrder a) {
  return std::make_shared<const PoissonOrder>(std::move(a));
}

EnvElement::EnvElement(EnvParent parent) : parent_(std::move(parent)) {
  if (!parent_) throw internal_error("envelope element without a parent");
}

void EnvElement::add_term(const EnvKey& k, const Coef& c) {
  if (c.is_zero()) return;
  const Field& F = parent_->ring()->field;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second = F.add(it->second, c);
  if (it->second.is_zero()) terms_.erase(it);
}

int EnvElement::delta_degree() const {
  int best = -1;
  for (const auto& [k, c] : terms_) best = std::max(best, total_degree(k.dexp));
  return best;
}

EnvElement EnvElement::delta_slice(int deg) const {
  EnvElement out = *this;
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    if (total_degree(it->first.dexp) == deg)
      ++it;
    else
      it = out.terms_.erase(it);
  }
  return out;
}

namespace {

const EnvParent& common_parent(const EnvElement& a, const EnvElement& b) {
  if (!a.parent() && !b.parent())
    throw input_error("envelope elements have no parent");
  if (!a.parent()) return b.parent();
  if (!b.parent()) return a.parent();
  if (a.parent() == b.parent()) return a.parent();
  const PoissonOrder& x = *a.parent();
  const PoissonOrder& y = *b.parent();
  require_same_ring(x.ring(), y.ring());
  if (x.base.table != y.base.table || x.rank != y.rank || x.mult != y.mult ||
      x.unit != y.unit || x.ham != y.ham)
    throw input_error("envelope elements have different parents");
  return a.parent();
}

} // namespace

EnvElement EnvElement::operator+(const EnvElement& o) const {
  if (is_zero() && !parent_) return o;
  if (o.is_zero() && !o.parent_) return *this;
  EnvElement out(common_parent(*this, o));
  out.terms_ = terms_;
  for (const auto& [k, c] : o.terms_) out.add_term(k, c);
  return out;
}

EnvElement EnvElement::operator-() const {
  EnvElement out = *this;
  if (!parent_) return out;
  const Field& F = parent_->ring()->field;
  for (auto& [k, c] : out.terms_) c = F.neg(c);
  return out;
}

EnvElement EnvElement::operator-(const EnvElement& o) const { return *this + (-o); }

EnvElement EnvElement::scaled(const Coef& c) const {
  if (!parent_) return *this;
  EnvElement out(parent_);
  const Field& F = parent_->ring()->field;
  for (const auto& [k, v] : terms_) out.add_term(k, F.mul(v, c));
  return out;
}

bool EnvElement::operator==(const EnvElement& o) const {
  if (is_zero() && o.is_zero()) return true;
  common_parent(*this, o);
  return terms_ == o.terms_;
}

namespace {

VecPoly basis_monomial(const PoissonOrder& A, int j, const Expvec& e) {
  VecPoly v(A.rank, Poly::zero(A.ring()));
  v[j] = Poly::monomial(A.ring(), e, A.ring()->field.one());
  return v;
}

// alpha(a) * v: order parts multiply, derivation parts pass through.
EnvElement alpha_mul(const EnvParent& P, const VecPoly& a, const EnvElement& v) {
  const PoissonOrder& A = *P;
  const Field& F = A.ring()->field;
  EnvElement out(P);
  for (const auto& [k, c] : v.terms()) {
    VecPoly prod = a_mul(A, a, basis_monomial(A, k.j, k.xexp));
    for (int l = 0; l < A.rank; ++l)
      for (const auto& [mono, cc] : prod[l].terms())
        out.add_term({l, mono, k.dexp}, F.mul(c, cc));
  }
  return out;
}

EnvElement delta_mul(const EnvParent& P, int i, const EnvElement& v);

// d[x_i] * d^dexp as a normal-form element. Straight prepend when i is no
// larger than the first letter; otherwise commute past it, which costs one
// d({x_i, x_j}) correction of lower derivation degree.
EnvElement delta_insert(const EnvParent& P, int i, const Expvec& dexp) {
  const PoissonOrder& A = *P;
  int first = -1;
  for (int k = 0; k < static_cast<int>(dexp.size()); ++k)
    if (dexp[k] > 0) { first = k; break; }
  if (first < 0 || i <= first) {
    EnvElement out(P);
    Expvec nd = dexp;
    ++nd[i];
    for (int l = 0; l < A.rank; ++l)
      for (const auto& [mono, c] : A.unit[l].terms())
        out.add_term({l, mono, nd}, c);
    return out;
  }
  Expvec rest = dexp;
  --rest[first];
  EnvElement tail = delta_insert(P, i, rest);
  EnvElement out = delta_mul(P, first, tail);
  const Poly& b = A.base.table[i][first];
  for (int k = 0; k < A.nvars(); ++k) {
    Poly pd = b.derivative(k);
    if (pd.is_zero()) continue;
    out = out + alpha_mul(P, a_scalar(A, pd), delta_insert(P, k, rest));
  }
  return out;
}

// d[x_i] * v: each term a*d^w contributes {x_i,a}*d^w plus a*(d[x_i]*d^w).
EnvElement delta_mul(const EnvParent& P, int i, const EnvElement& v) {
  const PoissonOrder& A = *P;
  const Field& F = A.ring()->field;
  EnvElement out(P);
  for (const auto& [k, c] : v.terms()) {
    VecPoly a = basis_monomial(A, k.j, k.xexp);
    VecPoly br = ham_action(A, i, a);
    for (int l = 0; l < A.rank; ++l)
      for (const auto& [mono, cc] : br[l].terms())
        out.add_term({l, mono, k.dexp}, F.mul(c, cc));
    out = out + alpha_mul(P, a, delta_insert(P, i, k.dexp)).scaled(c);
  }
  return out;
}

} // namespace

EnvElement EnvElement::operator*(const EnvElement& o) const {
  if (is_zero() && !parent_) return *this;
  if (o.is_zero() && !o.parent_) return o;
  const EnvParent& P = common_parent(*this, o);
  const PoissonOrder& A = *P;
  EnvElement out(P);
  for (const auto& [k, c] : terms_) {
    EnvElement cur = o;
    for (int i = A.nvars() - 1; i >= 0; --i)
      for (int rep = 0; rep < k.dexp[i]; ++rep) cur = delta_mul(P, i, cur);
    cur = alpha_mul(P, basis_monomial(A, k.j, k.xexp), cur);
    out = out + cur.scaled(c);
  }
  return out;
}

std::string EnvElement::str() const {
  if (is_zero()) return "0";
  const PoissonOrder& A = *parent_;
  const Ring& R = A.ring();
  // group terms by order-basis index and derivation exponent
  std::map<std::pair<int, Expvec>, Poly> groups;
  for (const auto& [k, c] : terms_) {
    auto key = std::make_pair(k.j, k.dexp);
    auto it = groups.find(key);
    if (it == groups.end()) it = groups.emplace(key, Poly::zero(R)).first;
    it->second.add_term(k.xexp, c);
  }
  std::ostringstream out;
  bool firstgroup = true;
  for (const auto& [key, p] : groups) {
    if (!firstgroup) out << " + ";
    firstgroup = false;
    out << A.basis[key.first];
    if (!(p.is_constant() && p.str() == "1")) out << "*(" << p.str() << ")";
    for (int i = 0; i < A.nvars(); ++i) {
      if (key.second[i] == 0) continue;
      out << "*d[" << R->vars[i] << "]";
      if (key.second[i] > 1) out << "^" << key.second[i];
    }
  }
  return out.str();
}

EnvElement env_zero(const EnvParent& e) { return EnvElement(e); }

EnvElement env_alpha(const EnvParent& e, const VecPoly& a) {
  const PoissonOrder& A = *e;
  if (static_cast<int>(a.size()) != A.rank)
    throw input_error("order element has the wrong number of coordinates");
  EnvElement out(e);
  Expvec nod(A.nvars(), 0);
  for (int l = 0; l < A.rank; ++l) {
    require_same_ring(a[l].ring() ? a[l].ring() : A.ring(), A.ring());
    for (const auto& [mono, c] : a[l].terms()) out.add_term({l, mono, nod}, c);
  }
  return out;
}

EnvElement env_alpha(const EnvParent& e, const Poly& p) {
  return env_alpha(e, a_scalar(*e, p));
}

EnvElement env_one(const EnvParent& e) { return env_alpha(e, a_one(*e)); }

EnvElement env_delta(const EnvParent& e, int var) {
  const PoissonOrder& A = *e;
  if (var < 0 || var >= A.nvars())
    throw input_error("derivation index out of range");
  EnvElement out(e);
  Expvec d(A.nvars(), 0);
  d[var] = 1;
  for (int l = 0; l < A.rank; ++l)
    for (const auto& [mono, c] : A.unit[l].terms()) out.add_term({l, mono, d}, c);
  return out;
}

EnvElement delta_of(const EnvParent& e, const Poly& p) {
  const PoissonOrder& A = *e;
  require_same_ring(p.ring() ? p.ring() : A.ring(), A.ring());
  EnvElement out(e);
  for (int k = 0; k < A.nvars(); ++k) {
    Poly pd = p.derivative(k);
    if (pd.is_zero()) continue;
    out = out + alpha_mul(e, a_scalar(A, pd), env_delta(e, k));
  }
  return out;
}

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

} // namespace

PbwReport pbw_dimension_check(const EnvParent& e, int delta_degree, int x_degree) {
  const PoissonOrder& A = *e;
  const int n = A.nvars();
  PbwReport rep;
  long dsum = 0;
  for (int k = 0; k <= delta_degree; ++k) dsum += binom(k + n - 1, n - 1);
  rep.predicted = A.rank * binom(x_degree + n, n) * dsum;

  std::set<EnvKey> seen;
  bool merged = false;
  const auto xs = monomials_up_to_degree(n, x_degree);
  const auto ds = monomials_up_to_degree(n, delta_degree);
  for (int j = 0; j < A.rank && !merged; ++j) {
    for (const auto& xe : xs) {
      for (const auto& de : ds) {
        EnvElement prod = env_alpha(e, a_basis(A, j)) *
                          env_alpha(e, Poly::monomial(A.ring(), xe, A.ring()->field.one()));
        for (int i = 0; i < n; ++i)
          for (int rep2 = 0; rep2 < de[i]; ++rep2) prod = prod * env_delta(e, i);
        // the top derivation slice must be exactly this monomial
        EnvElement top = prod.delta_slice(total_degree(de));
        EnvKey want{j, xe, de};
        if (top.terms().size() != 1 ||
            top.terms().begin()->first != want ||
            !(top.terms().begin()->second == A.ring()->field.one()) ||
            !seen.insert(want).second) {
          merged = true;
          break;
        }
      }
      if (merged) break;
    }
  }
  rep.actual = static_cast<long>(seen.size());
  rep.ok = !merged && rep.actual == rep.predicted;
  return rep;
}

namespace {

struct NamedFactor {
  std::string name;
  EnvElement value;
};

} // namespace

OverlapReport diamond_overlap_check(const EnvParent& e) {
  const PoissonOrder& A = *e;
  const Ring& R = A.ring();
  const int n = A.nvars();
  OverlapReport rep;

  std::vector<NamedFactor> flats;   // base variables and order basis elements
  for (int i = 0; i < n; ++i)
    flats.push_back({R->vars[i], env_alpha(e, Poly::variable(R, i))});
  for (int j = 0; j < A.rank; ++j)
    flats.push_back({A.basis[j], env_alpha(e, a_basis(A, j))});

  auto associates = [&](const EnvElement& u, const EnvElement& v,
                        const EnvElement& w) {
    return ((u * v) * w) == (u * (v * w));
  };
  auto dname = [&](int i) { return "d[" + R->vars[i] + "]"; };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < j; ++k)
        if (!associates(env_delta(e, i), env_delta(e, j), env_delta(e, k)))
          rep.unresolved.push_back("(" + dname(k) + ", " + dname(j) + ", " +
                                   dname(i) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (const auto& f : flats)
        if (!associates(env_delta(e, i), env_delta(e, j), f.value))
          rep.unresolved.push_back("(" + dname(j) + ", " + dname(i) + ", " +
                                   f.name + ")");
  for (int i = 0; i < n; ++i)
    for (const auto& f : flats)
      for (const auto& g : flats)
        if (!associates(env_delta(e, i), f.value, g.value))
          rep.unresolved.push_back("(" + dname(i) + ", " + f.name + ", " +
                                   g.name + ")");
  return rep;
}

UgdReport ugd_compare(const Ring& r,
                      const std::vector<std::vector<std::vector<Coef>>>& c) {
  PoissonAlgebra P = lie_poisson(r, c);
  const int n = r->nvars();
  EnvParent e = make_envelope(trivial_order(P));
  UgdReport rep;

  // images of the g_D basis: x_i -> d[x_i], eps x_i -> alpha(x_i)
  std::vector<EnvElement> img;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    img.push_back(env_delta(e, i));
    names.push_back("d[" + r->vars[i] + "]");
  }
  for (int i = 0; i < n; ++i) {
    img.push_back(env_alpha(e, Poly::variable(r, i)));
    names.push_back("a(" + r->vars[i] + ")");
  }

  // bracket of basis elements u_a, u_b of g_D, mapped into the envelope
  auto bracket_image = [&](int a, int b) {
    EnvElement out(e);
    bool aeps = a >= n, beps = b >= n;
    if (aeps && beps) return out;   // eps^2 = 0
    int i = a % n, j = b % n;
    for (int k = 0; k < n; ++k) {
      if (c[i][j][k].is_zero()) continue;
      EnvElement term = (aeps || beps)
                            ? env_alpha(e, Poly::variable(r, k))
                            : env_delta(e, k);
      out = out + term.scaled(c[i][j][k]);
    }
    return out;
  };

  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      EnvElement lhs = img[a] * img[b] - img[b] * img[a];
      if (lhs != bracket_image(a, b))
        rep.mismatches.push_back("(" + names[a] + ", " + names[b] + ")");
    }
  return rep;
}

PoissonModule make_module(const Field& F, int dim, std::vector<CoefMat> X,
                          std::vector<CoefMat> D) {
  PoissonModule m;
  m.dim = dim;
  m.X = std::move(X);
  m.D = std::move(D);
  m.E = {mat_identity(F, dim)};
  return m;
}

CoefMat eval_matrix(const Poly& p, const std::vector<CoefMat>& X, int dim) {
  if (!p.ring()) throw input_error("cannot evaluate the unattached zero polynomial");
  const Field& F = p.ring()->field;
  const int n = p.ring()->nvars();
  if (static_cast<int>(X.size()) != n)
    throw input_error("one matrix per variable is required");
  CoefMat out(dim, std::vector<Coef>(dim, F.zero()));
  std::map<Expvec, CoefMat> powers;
  powers[Expvec(n, 0)] = mat_identity(F, dim);
  auto power_of = [&](const Expvec& e) {
    auto self = [&](const Expvec& ee, auto& rec) -> const CoefMat& {
      auto it = powers.find(ee);
      if (it != powers.end()) return it->second;
      Expvec prev = ee;
      int i = 0;
      while (prev[i] == 0) ++i;
      --prev[i];
      CoefMat val = mat_mul(F, X[i], rec(prev, rec));
      return powers.emplace(ee, std::move(val)).first->second;
    };
    return self(e, self);
  };
  for (const auto& [e, c] : p.terms())
    out = mat_add(F, out, mat_scale(F, c, power_of(e)));
  return out;
}

namespace {

CoefMat commutator(const Field& F, const CoefMat& a, const CoefMat& b) {
  return mat_add(F, mat_mul(F, a, b), mat_scale(F, F.from_int(-1), mat_mul(F, b, a)));
}

// sum_k dp/dx_k (X) * D_k
CoefMat nabla_of(const Field& F, const Poly& p, const PoissonModule& m) {
  CoefMat out(m.dim, std::vector<Coef>(m.dim, F.zero()));
  for (size_t k = 0; k < m.X.size(); ++k) {
    Poly pd = p.derivative(static_cast<int>(k));
    if (pd.is_zero()) continue;
    out = mat_add(F, out, mat_mul(F, eval_matrix(pd, m.X, m.dim), m.D[k]));
  }
  return out;
}

} // namespace

ModuleReport module_check(const PoissonModule& m, const PoissonOrder& a) {
  const Ring& R = a.ring();
  const Field& F = R->field;
  const int n = a.nvars();
  if (static_cast<int>(m.X.size()) != n || static_cast<int>(m.D.size()) != n)
    throw input_error("module needs one X and one D matrix per variable");
  if (static_cast<int>(m.E.size()) != a.rank)
    throw input_error("module needs one matrix per order basis element");
  auto square = [&](const CoefMat& mat) {
    if (static_cast<int>(mat.size()) != m.dim) return false;
    for (const auto& row : mat)
      if (static_cast<int>(row.size()) != m.dim) return false;
    return true;
  };
  for (const auto& mat : m.X)
    if (!square(mat)) throw input_error("module matrices must be square of the stated dimension");
  for (const auto& mat : m.D)
    if (!square(mat)) throw input_error("module matrices must be square of the stated dimension");
  for (const auto& mat : m.E)
    if (!square(mat)) throw input_error("module matrices must be square of the stated dimension");

  ModuleReport rep;
  auto vname = [&](int i) { return R->vars[i]; };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!mat_eq(mat_mul(F, m.X[i], m.X[j]), mat_mul(F, m.X[j], m.X[i])))
        rep.violations.push_back("base actions do not commute at (" + vname(i) +
                                 ", " + vname(j) + ")");

  for (int j = 0; j < a.rank; ++j)
    for (int k = 0; k < a.rank; ++k) {
      CoefMat want(m.dim, std::vector<Coef>(m.dim, F.zero()));
      for (int l = 0; l < a.rank; ++l) {
        const Poly& mu = a.mult[j][k][l];
        if (mu.is_zero()) continue;
        want = mat_add(F, want, mat_mul(F, eval_matrix(mu, m.X, m.dim), m.E[l]));
      }
      if (!mat_eq(mat_mul(F, m.E[j], m.E[k]), want))
        rep.violations.push_back("order product fails at (" + a.basis[j] + ", " +
                                 a.basis[k] + ")");
    }

  {
    CoefMat u(m.dim, std::vector<Coef>(m.dim, F.zero()));
    for (int l = 0; l < a.rank; ++l) {
      if (a.unit[l].is_zero()) continue;
      u = mat_add(F, u, mat_mul(F, eval_matrix(a.unit[l], m.X, m.dim), m.E[l]));
    }
    if (!mat_eq(u, mat_identity(F, m.dim)))
      rep.violations.push_back("unit decomposition fails");
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < a.rank; ++j)
      if (!mat_eq(mat_mul(F, m.X[i], m.E[j]), mat_mul(F, m.E[j], m.X[i])))
        rep.violations.push_back("base action is not central at (" + vname(i) +
                                 ", " + a.basis[j] + ")");

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Poly prod = Poly::variable(R, i) * Poly::variable(R, j);
      CoefMat rhs = mat_add(F, mat_mul(F, m.X[i], m.D[j]), mat_mul(F, m.X[j], m.D[i]));
      if (!mat_eq(nabla_of(F, prod, m), rhs))
        rep.violations.push_back("(i) fails at (" + vname(i) + ", " + vname(j) + ")");
    }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CoefMat want = eval_matrix(a.base.table[i][j], m.X, m.dim);
      if (!mat_eq(commutator(F, m.D[i], m.X[j]), want))
        rep.violations.push_back("(ii) fails at {" + vname(i) + ", " + vname(j) + "}");
    }
    for (int j = 0; j < a.rank; ++j) {
      CoefMat want(m.dim, std::vector<Coef>(m.dim, F.zero()));
      for (int s = 0; s < a.rank; ++s) {
        const Poly& h = a.ham[i][j][s];
        if (h.is_zero()) continue;
        want = mat_add(F, want, mat_mul(F, eval_matrix(h, m.X, m.dim), m.E[s]));
      }
      if (!mat_eq(commutator(F, m.D[i], m.E[j]), want))
        rep.violations.push_back("(ii) fails at {" + vname(i) + ", " + a.basis[j] + "}");
    }
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!mat_eq(nabla_of(F, a.base.table[i][j], m), commutator(F, m.D[i], m.D[j])))
        rep.violations.push_back("(iii) fails at (" + vname(i) + ", " + vname(j) + ")");

  return rep;
}

ModuleReport module_check(const PoissonModule& m, const PoissonAlgebra& p) {
  return module_check(m, trivial_order(p));
}

namespace {

// Matrices X^e for every exponent in `mons`, which must be closed under
// removing one from a coordinate and sorted so prefixes come first.
std::vector<CoefMat> monomial_matrices(const Field& F,
                                       const std::vector<Expvec>& mons,
                                       const std::vector<CoefMat>& X, int dim) {
  std::map<Expvec, int> index;
  std::vector<CoefMat> out;
  out.reserve(mons.size());
  for (const auto& e : mons) {
    int i = 0;
    while (i < static_cast<int>(e.size()) && e[i] == 0) ++i;
    if (i == static_cast<int>(e.size())) {
      out.push_back(mat_identity(F, dim));
    } else {
      Expvec prev = e;
      --prev[i];
      out.push_back(mat_mul(F, X[i], out[index.at(prev)]));
    }
    index[e] = static_cast<int>(out.size()) - 1;
  }
  return out;
}

bool capped_complete(const Ideal& J, int cap, long dim_bound) {
  auto basis = standard_monomials(J);
  if (!basis) return false;
  if (static_cast<long>(basis->size()) > dim_bound) return false;
  for (const auto& e : *basis)
    if (total_degree(e) > cap) return false;
  return true;
}

} // namespace

AnnihilatorReport module_annihilator_Z(const Ring& r, const PoissonModule& m,
                                       int degree_cap) {
  const Field& F = r->field;
  const int n = r->nvars();
  if (static_cast<int>(m.X.size()) != n)
    throw input_error("module needs one matrix per variable");
  if (m.dim <= 0) throw input_error("annihilator of the zero module");
  int cap = degree_cap > 0 ? degree_cap : m.dim;
  const auto mons = monomials_up_to_degree(n, cap);
  const auto mats = monomial_matrices(F, mons, m.X, m.dim);

  // kernel of p -> p(X), entries of p(X) as rows
  CoefMat sys(m.dim * m.dim, std::vector<Coef>(mons.size(), F.zero()));
  for (size_t col = 0; col < mons.size(); ++col)
    for (int u = 0; u < m.dim; ++u)
      for (int v = 0; v < m.dim; ++v)
        sys[u * m.dim + v][col] = mats[col][u][v];
  CoefMat ker = matrix_kernel(F, sys, static_cast<int>(mons.size()));

  std::vector<Poly> gens;
  for (const auto& row : ker) {
    Poly p = Poly::zero(r);
    for (size_t col = 0; col < mons.size(); ++col) p.add_term(mons[col], row[col]);
    if (!mat_is_zero(eval_matrix(p, m.X, m.dim)))
      throw internal_error("annihilator generator fails to annihilate");
    gens.push_back(std::move(p));
  }
  AnnihilatorReport rep{Ideal(r, std::move(gens)), false};
  rep.complete = capped_complete(rep.ideal, cap, static_cast<long>(m.dim) * m.dim);
  return rep;
}

TorsionReport torsion_ideal(const Ring& r, const PoissonModule& m,
                            int degree_cap) {
  const Field& F = r->field;
  const int n = r->nvars();
  if (static_cast<int>(m.X.size()) != n)
    throw input_error("module needs one matrix per variable");
  if (m.dim <= 0) throw input_error("torsion of the zero module");
  int cap = degree_cap > 0 ? degree_cap : m.dim;
  const auto mons = monomials_up_to_degree(n, cap);
  const auto mats = monomial_matrices(F, mons, m.X, m.dim);

  TorsionReport best;
  bool have = false;
  for (int s = 0; s < m.dim; ++s) {
    // kernel of p -> p(X) e_s
    CoefMat sys(m.dim, std::vector<Coef>(mons.size(), F.zero()));
    for (size_t col = 0; col < mons.size(); ++col)
      for (int u = 0; u < m.dim; ++u) sys[u][col] = mats[col][u][s];
    CoefMat ker = matrix_kernel(F, sys, static_cast<int>(mons.size()));
    std::vector<Poly> gens;
    for (const auto& row : ker) {
      Poly p = Poly::zero(r);
      for (size_t col = 0; col < mons.size(); ++col) p.add_term(mons[col], row[col]);
      gens.push_back(std::move(p));
    }
    Ideal ann(r, std::move(gens));
    if (!have || (ideal_contains(ann, best.ideal) && !ideal_equal(ann, best.ideal))) {
      best.ideal = ann;
      best.witness.assign(m.dim, F.zero());
      best.witness[s] = F.one();
      best.complete = capped_complete(ann, cap, m.dim);
      have = true;
    }
  }
  return best;
}

bool ividealiii_check(const PoissonModule& m, const PoissonAlgebra& p) {
  const Ring& r = p.ring;
  TorsionReport tor = torsion_ideal(r, m);
  AnnihilatorReport ann = module_annihilator_Z(r, m);
  return ideal_equal(poisson_core(tor.ideal, p), ann.ideal);
}

PoissonModule induced_module(const PoissonOrder& a, const PoissonModule& m) {
  const Ring& R = a.ring();
  const Field& F = R->field;
  const int n = a.nvars();
  const int rank = a.rank;
  if (static_cast<int>(m.X.size()) != n || static_cast<int>(m.D.size()) != n)
    throw input_error("module needs one X and one D matrix per variable");
  const int dim = rank * m.dim;
  auto zero = [&] { return CoefMat(dim, std::vector<Coef>(dim, F.zero())); };
  auto put_block = [&](CoefMat& out, int bi, int bj, const CoefMat& blk) {
    for (int u = 0; u < m.dim; ++u)
      for (int v = 0; v < m.dim; ++v)
        out[bi * m.dim + u][bj * m.dim + v] =
            F.add(out[bi * m.dim + u][bj * m.dim + v], blk[u][v]);
  };

  PoissonModule out;
  out.dim = dim;
  for (int i = 0; i < n; ++i) {
    CoefMat xi = zero();
    for (int l = 0; l < rank; ++l) put_block(xi, l, l, m.X[i]);
    out.X.push_back(std::move(xi));
  }
  for (int i = 0; i < n; ++i) {
    CoefMat di = zero();
    for (int l = 0; l < rank; ++l) {
      put_block(di, l, l, m.D[i]);
      for (int s = 0; s < rank; ++s) {
        const Poly& h = a.ham[i][l][s];
        if (h.is_zero()) continue;
        put_block(di, s, l, eval_matrix(h, m.X, m.dim));
      }
    }
    out.D.push_back(std::move(di));
  }
  for (int j = 0; j < rank; ++j) {
    CoefMat ej = zero();
    for (int l = 0; l < rank; ++l)
      for (int s = 0; s < rank; ++s) {
        const Poly& mu = a.mult[j][l][s];
        if (mu.is_zero()) continue;
        put_block(ej, s, l, eval_matrix(mu, m.X, m.dim));
      }
    out.E.push_back(std::move(ej));
  }
  return out;
}

} // namespace pomelo
