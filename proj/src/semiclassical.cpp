#include "pomelo/semiclassical.hpp"

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pomelo/errors.hpp"

namespace pomelo {

namespace {

void check_exponents(const QuantumAffineSpace& Q, const Expvec& a) {
  if (static_cast<int>(a.size()) != Q.n)
    throw input_error("exponent vector length does not match the generator count");
  for (int e : a)
    if (e < 0) throw input_error("quantum affine space exponents must be nonnegative");
}

void accumulate(const Field& F, QElement& u, const Expvec& a, long e, const Coef& c) {
  if (c.is_zero()) return;
  QScalar& f = u.terms[a];
  auto it = f.find(e);
  if (it == f.end()) {
    f.emplace(e, c);
    return;
  }
  it->second = F.add(it->second, c);
  if (it->second.is_zero()) f.erase(it);
  if (f.empty()) u.terms.erase(a);
}

// Value of f at q = at; `at` must be a unit when f has negative exponents.
Coef scalar_eval(const Field& F, const QScalar& f, const Coef& at) {
  Coef out = F.zero();
  for (const auto& [e, c] : f) out = F.add(out, F.mul(c, F.pow(at, e)));
  return out;
}

// Quotient of f by (q - root); the remainder lands in rem. f must have no
// negative q-powers (commutator coefficients never do).
QScalar divide_linear(const Field& F, const QScalar& f, const Coef& root, Coef& rem) {
  rem = F.zero();
  if (f.empty()) return {};
  if (f.begin()->first < 0)
    throw internal_error("division by q - zeta expects a plain polynomial in q");
  long deg = f.rbegin()->first;
  std::vector<Coef> a(static_cast<size_t>(deg) + 1, F.zero());
  for (const auto& [e, c] : f) a[static_cast<size_t>(e)] = c;
  // synthetic division, top down: b_{k-1} = a_k + root*b_k
  std::vector<Coef> b(static_cast<size_t>(deg), F.zero());
  Coef carry = F.zero();
  for (long k = deg; k >= 1; --k) {
    carry = F.add(a[static_cast<size_t>(k)], F.mul(root, carry));
    b[static_cast<size_t>(k - 1)] = carry;
  }
  rem = F.add(a[0], F.mul(root, carry));
  QScalar out;
  for (long k = 0; k < deg; ++k)
    if (!b[static_cast<size_t>(k)].is_zero()) out.emplace(k, b[static_cast<size_t>(k)]);
  return out;
}

std::string laurent_str(const Field& F, const QScalar& f) {
  if (f.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f) {
    std::string qpow = e == 0 ? "" : e == 1 ? "q" : "q^" + std::to_string(e);
    std::string cs = F.to_string(c);
    bool negative = false;
    if (F.is_rationals() && cs.size() > 1 && cs[0] == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    std::string body;
    if (qpow.empty()) body = cs;
    else if (cs == "1") body = qpow;
    else if (cs.find(' ') != std::string::npos || cs.find('-') != std::string::npos)
      body = "(" + cs + ")*" + qpow;
    else body = cs + "*" + qpow;
    if (first) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

} // namespace

QuantumAffineSpace quantum_affine_space(int n, Field f) {
  if (n < 1) throw input_error("quantum affine space needs at least one generator");
  return QuantumAffineSpace{n, std::move(f)};
}

QElement q_zero(const QuantumAffineSpace&) { return {}; }

QElement q_one(const QuantumAffineSpace& Q) {
  return q_monomial(Q, Expvec(static_cast<size_t>(Q.n), 0));
}

QElement q_monomial(const QuantumAffineSpace& Q, const Expvec& a, long qpow) {
  return q_monomial(Q, a, qpow, Q.field.one());
}

QElement q_monomial(const QuantumAffineSpace& Q, const Expvec& a, long qpow,
                    const Coef& c) {
  check_exponents(Q, a);
  QElement out;
  if (!c.is_zero()) out.terms[a].emplace(qpow, c);
  return out;
}

QElement x_power(const QuantumAffineSpace& Q, int i, int k) {
  if (i < 0 || i >= Q.n) throw input_error("generator index out of range");
  if (k < 0) throw input_error("quantum affine space exponents must be nonnegative");
  Expvec a(static_cast<size_t>(Q.n), 0);
  a[static_cast<size_t>(i)] = k;
  return q_monomial(Q, a);
}

QElement q_add(const QuantumAffineSpace& Q, const QElement& u, const QElement& v) {
  QElement out = u;
  for (const auto& [a, f] : v.terms) {
    for (const auto& [e, c] : f) accumulate(Q.field, out, a, e, c);
  }
  return out;
}

QElement q_neg(const QuantumAffineSpace& Q, const QElement& u) {
  QElement out;
  for (const auto& [a, f] : u.terms)
    for (const auto& [e, c] : f) out.terms[a].emplace(e, Q.field.neg(c));
  return out;
}

QElement q_sub(const QuantumAffineSpace& Q, const QElement& u, const QElement& v) {
  return q_add(Q, u, q_neg(Q, v));
}

QElement q_mul(const QuantumAffineSpace& Q, const QElement& u, const QElement& v) {
  const Field& F = Q.field;
  QElement out;
  for (const auto& [a, f] : u.terms) {
    for (const auto& [b, g] : v.terms) {
      // X^a * X^b: every X_i from b crosses every X_j from a with j > i
      long cross = 0;
      for (int i = 0; i < Q.n; ++i)
        for (int j = i + 1; j < Q.n; ++j)
          cross += static_cast<long>(b[static_cast<size_t>(i)]) * a[static_cast<size_t>(j)];
      Expvec ab(static_cast<size_t>(Q.n));
      for (int k = 0; k < Q.n; ++k)
        ab[static_cast<size_t>(k)] = a[static_cast<size_t>(k)] + b[static_cast<size_t>(k)];
      for (const auto& [e1, c1] : f)
        for (const auto& [e2, c2] : g)
          accumulate(F, out, ab, e1 + e2 + cross, F.mul(c1, c2));
    }
  }
  return out;
}

bool q_eq(const QElement& u, const QElement& v) { return u.terms == v.terms; }

std::string q_str(const QuantumAffineSpace& Q, const QElement& u) {
  if (u.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [a, f] : u.terms) {
    std::string mono;
    for (int i = 0; i < Q.n; ++i) {
      int e = a[static_cast<size_t>(i)];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "X" + std::to_string(i + 1);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    std::string s = laurent_str(Q.field, f);
    std::string term;
    if (mono.empty()) term = s;
    else if (s == "1") term = mono;
    else if (s.find(' ') != std::string::npos) term = "(" + s + ")*" + mono;
    else term = s + "*" + mono;
    if (!first) out += " + ";
    out += term;
    first = false;
  }
  return out;
}

PoissonAlgebra ell_centre_bracket(const QuantumAffineSpace& Q, int ell) {
  if (ell < 2) throw input_error("the ell-centre needs ell >= 2");
  Field F = Field::cyclotomic(ell);
  QuantumAffineSpace S{Q.n, F};
  Coef zeta = F.zeta();
  std::vector<std::string> vars;
  vars.reserve(static_cast<size_t>(Q.n));
  for (int i = 0; i < Q.n; ++i) vars.push_back("u" + std::to_string(i + 1));
  Ring r = make_ring(vars, F);
  std::vector<std::tuple<int, int, Poly>> entries;
  for (int i = 0; i < Q.n; ++i) {
    for (int j = i + 1; j < Q.n; ++j) {
      QElement A = x_power(S, i, ell);
      QElement B = x_power(S, j, ell);
      QElement comm = q_sub(S, q_mul(S, A, B), q_mul(S, B, A));
      Poly val = Poly::zero(r);
      for (const auto& [a, f] : comm.terms) {
        Coef rem;
        QScalar h = divide_linear(F, f, zeta, rem);
        if (!rem.is_zero())
          throw internal_error("ell-centre commutator is not divisible by q - zeta");
        Coef s = scalar_eval(F, h, zeta);
        if (s.is_zero()) continue;
        Expvec ue(a.size());
        for (size_t k = 0; k < a.size(); ++k) {
          if (a[k] % ell != 0)
            throw internal_error("ell-centre commutator leaves the span of ell-th powers");
          ue[k] = a[k] / ell;
        }
        val = val + Poly::monomial(r, ue, s);
      }
      entries.emplace_back(i, j, val);
    }
  }
  return make_poisson(r, entries);
}

bool centrality_check(const QuantumAffineSpace& Q, int ell) {
  if (ell < 2) throw input_error("the ell-centre needs ell >= 2");
  Field F = Field::cyclotomic(ell);
  QuantumAffineSpace S{Q.n, F};
  Coef zeta = F.zeta();
  for (int i = 0; i < Q.n; ++i) {
    for (int j = 0; j < Q.n; ++j) {
      if (i == j) continue;
      QElement A = x_power(S, i, ell);
      QElement Xj = x_power(S, j, 1);
      QElement comm = q_sub(S, q_mul(S, A, Xj), q_mul(S, Xj, A));
      for (const auto& [a, f] : comm.terms)
        if (!scalar_eval(F, f, zeta).is_zero()) return false;
    }
  }
  return true;
}

} // namespace pomelo
