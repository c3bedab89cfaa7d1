#include "pomelo/field.hpp"

#include <sstream>

namespace pomelo {

namespace {

// Univariate polynomials over Q, ascending coefficients, used only for the
// residue arithmetic behind Field.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Quotient and remainder; divisor must be nonzero.
std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly& b) {
  trim(a);
  UPoly q;
  if (b.empty()) throw internal_error("univariate division by zero");
  while (a.size() >= b.size()) {
    Rational c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    if (q.size() < shift + 1) q.resize(shift + 1, Rational(0));
    q[shift] += c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
    if (a.empty()) break;
  }
  trim(q);
  return {q, a};
}

// g = gcd(a, b) monic, with u*a + v*b = g.
void uxgcd(UPoly a, UPoly b, UPoly& g, UPoly& u, UPoly& v) {
  UPoly u0 = {Rational(1)}, v0 = {}, u1 = {}, v1 = {Rational(1)};
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = udivmod(a, b);
    UPoly qu = umul(q, u1), qv = umul(q, v1);
    UPoly nu = u0, nv = v0;
    if (nu.size() < qu.size()) nu.resize(qu.size(), Rational(0));
    for (size_t i = 0; i < qu.size(); ++i) nu[i] -= qu[i];
    if (nv.size() < qv.size()) nv.resize(qv.size(), Rational(0));
    for (size_t i = 0; i < qv.size(); ++i) nv[i] -= qv[i];
    trim(nu);
    trim(nv);
    a = b;
    b = r;
    u0 = u1;
    v0 = v1;
    u1 = nu;
    v1 = nv;
  }
  if (a.empty()) throw internal_error("xgcd of zero polynomials");
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  for (auto& c : u0) c /= lead;
  for (auto& c : v0) c /= lead;
  g = a;
  u = u0;
  v = v0;
}

} // namespace

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw input_error("empty rational literal");
  try {
    Rational r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw input_error("bad rational literal '" + s + "'");
  }
}

std::string rational_str(const Rational& r) { return r.get_str(); }

bool Coef::operator<(const Coef& o) const {
  if (c.size() != o.c.size()) return c.size() < o.c.size();
  for (size_t i = 0; i < c.size(); ++i) {
    int s = cmp(c[i], o.c[i]);
    if (s != 0) return s < 0;
  }
  return false;
}

bool Coef::is_zero() const {
  for (const auto& x : c)
    if (x != 0) return false;
  return true;
}

std::vector<Rational> cyclotomic_polynomial(int ell) {
  if (ell < 1) throw input_error("cyclotomic index must be >= 1");
  // t^ell - 1 divided by prod of Phi_d over proper divisors d.
  UPoly num(ell + 1, Rational(0));
  num[0] = -1;
  num[ell] = 1;
  for (int d = 1; d < ell; ++d) {
    if (ell % d != 0) continue;
    auto [q, r] = udivmod(num, cyclotomic_polynomial(d));
    if (!r.empty()) throw internal_error("cyclotomic division left a remainder");
    num = q;
  }
  return num;
}

Field Field::rationals() {
  Field f;
  f.ell_ = 0;
  f.modulus_ = {Rational(0), Rational(1)};
  return f;
}

Field Field::cyclotomic(int ell, int ell_cap) {
  if (ell < 1) throw input_error("cyclotomic index must be >= 1");
  if (ell > ell_cap)
    throw input_error("cyclotomic index " + std::to_string(ell) +
                      " exceeds the cap " + std::to_string(ell_cap));
  Field f;
  f.ell_ = ell;
  f.modulus_ = cyclotomic_polynomial(ell);
  int d = f.degree();
  // Reduction table: zeta^(d+k) as a residue, for k = 0 .. d-2.
  UPoly cur(d, Rational(0));   // will hold zeta^(d+k) reduced
  // zeta^d = -(lower part of Phi).
  for (int i = 0; i < d; ++i) cur[i] = -f.modulus_[i];
  f.red_.push_back(cur);
  for (int k = 1; k + 1 < d; ++k) {
    UPoly nxt(d, Rational(0));
    // multiply by zeta, reduce the overflow term with the first table row
    for (int i = 0; i + 1 < d; ++i) nxt[i + 1] = cur[i];
    if (cur[d - 1] != 0)
      for (int i = 0; i < d; ++i) nxt[i] += cur[d - 1] * f.red_[0][i];
    f.red_.push_back(nxt);
    cur = nxt;
  }
  return f;
}

Coef Field::zero() const { return Coef{std::vector<Rational>(degree(), Rational(0))}; }

Coef Field::one() const {
  Coef z = zero();
  z.c[0] = 1;
  return z;
}

Coef Field::from_rational(const Rational& r) const {
  Coef z = zero();
  z.c[0] = r;
  return z;
}

Coef Field::from_int(long n) const { return from_rational(Rational(n)); }

Coef Field::zeta() const {
  if (is_rationals()) throw input_error("zeta is not available over the rationals");
  Coef z = zero();
  if (degree() == 1) {
    // Phi_1 = t - 1, Phi_2 = t + 1: zeta is a rational number here.
    z.c[0] = -modulus_[0];
  } else {
    z.c[1] = 1;
  }
  return z;
}

Coef Field::add(const Coef& a, const Coef& b) const {
  Coef r = a;
  for (int i = 0; i < degree(); ++i) r.c[i] += b.c[i];
  return r;
}

Coef Field::sub(const Coef& a, const Coef& b) const {
  Coef r = a;
  for (int i = 0; i < degree(); ++i) r.c[i] -= b.c[i];
  return r;
}

Coef Field::neg(const Coef& a) const {
  Coef r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

Coef Field::mul(const Coef& a, const Coef& b) const {
  int d = degree();
  std::vector<Rational> full(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < d; ++j) full[i + j] += a.c[i] * b.c[j];
  }
  Coef r = zero();
  for (int i = 0; i < d; ++i) r.c[i] = full[i];
  for (int k = 0; k < d - 1; ++k) {
    if (full[d + k] == 0) continue;
    for (int i = 0; i < d; ++i) r.c[i] += full[d + k] * red_[k][i];
  }
  return r;
}

Coef Field::inv(const Coef& a) const {
  if (a.is_zero()) throw input_error("division by zero coefficient");
  if (degree() == 1) return Coef{{Rational(1) / a.c[0]}};
  UPoly ap(a.c);
  trim(ap);
  UPoly g, u, v;
  uxgcd(ap, modulus_, g, u, v);
  if (g.size() != 1)
    throw internal_error("residue not invertible mod the cyclotomic polynomial");
  Coef r = zero();
  auto [q, rem] = udivmod(u, modulus_);
  for (size_t i = 0; i < rem.size(); ++i) r.c[i] = rem[i];
  return r;
}

Coef Field::div(const Coef& a, const Coef& b) const { return mul(a, inv(b)); }

Coef Field::pow(const Coef& a, long e) const {
  Coef base = e < 0 ? inv(a) : a;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
  Coef r = one();
  while (n) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

std::string Field::to_string(const Coef& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree() - 1; i >= 0; --i) {
    const Rational& x = a.c[i];
    if (x == 0) continue;
    Rational ax = abs(x);
    if (first) {
      if (x < 0) out << "-";
      first = false;
    } else {
      out << (x < 0 ? " - " : " + ");
    }
    bool unit = (ax == 1);
    if (i == 0) {
      out << ax.get_str();
    } else {
      if (!unit) out << ax.get_str() << "*";
      out << "zeta";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

} // namespace pomelo
