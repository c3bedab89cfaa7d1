#pragma once

// Coefficient arithmetic: exact rationals (GMP-backed) and the cyclotomic
// extensions Q(zeta_ell) = Q[t]/(Phi_ell). Every scalar in the library is a
// Coef interpreted relative to a Field descriptor; residues are kept reduced
// mod Phi_ell at all times.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "pomelo/errors.hpp"

namespace pomelo {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

// Residue polynomial in zeta; entry i holds the coefficient of zeta^i.
// Size always equals Field::degree() of the owning field.
struct Coef {
  std::vector<Rational> c;

  bool operator==(const Coef& o) const { return c == o.c; }
  bool operator!=(const Coef& o) const { return !(*this == o); }
  bool operator<(const Coef& o) const;   // arbitrary total order, for map keys
  bool is_zero() const;
};

class Field {
public:
  static Field rationals();
  // Q(zeta_ell); ell above the cap is refused (degrees blow up past desk scale).
  static Field cyclotomic(int ell, int ell_cap = 12);

  bool is_rationals() const { return ell_ == 0; }
  int ell() const { return ell_; }
  int degree() const { return static_cast<int>(modulus_.size()) - 1; }

  Coef zero() const;
  Coef one() const;
  Coef from_rational(const Rational& r) const;
  Coef from_int(long n) const;
  Coef zeta() const;   // input error over plain Q

  Coef add(const Coef& a, const Coef& b) const;
  Coef sub(const Coef& a, const Coef& b) const;
  Coef neg(const Coef& a) const;
  Coef mul(const Coef& a, const Coef& b) const;
  Coef inv(const Coef& a) const;   // input error on zero
  Coef div(const Coef& a, const Coef& b) const;
  Coef pow(const Coef& a, long e) const;   // e may be negative for units

  // Rationals print as "a/b"; extension elements as polynomials in "zeta",
  // descending powers: "2*zeta^2 - 1/3".
  std::string to_string(const Coef& a) const;

  bool operator==(const Field& o) const { return ell_ == o.ell_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  // Phi_ell, ascending coefficients, monic ("t" itself for plain Q).
  const std::vector<Rational>& modulus() const { return modulus_; }

private:
  Field() = default;
  int ell_ = 0;                                // 0 marks plain rationals
  std::vector<Rational> modulus_;
  std::vector<std::vector<Rational>> red_;     // zeta^d .. zeta^(2d-2) reduced
};

// Phi_ell, ascending coefficients. Computed by exact division of t^ell - 1
// by the proper cyclotomic divisors.
std::vector<Rational> cyclotomic_polynomial(int ell);

} // namespace pomelo
