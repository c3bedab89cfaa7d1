#pragma once

// Exact multivariate polynomials over a shared ring descriptor. Values are
// immutable; arithmetic returns fresh polynomials. Terms are stored without
// zero coefficients, so equality is plain map comparison.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pomelo/field.hpp"

namespace pomelo {

using Expvec = std::vector<int>;

int total_degree(const Expvec& e);
bool exp_divides(const Expvec& a, const Expvec& b);   // a | b componentwise
Expvec exp_add(const Expvec& a, const Expvec& b);
Expvec exp_sub(const Expvec& a, const Expvec& b);     // requires b | a
Expvec exp_lcm(const Expvec& a, const Expvec& b);

// Term orders. A block order splits the variables into consecutive segments
// compared left to right with degrevlex inside each segment; putting the
// variables to eliminate into the leading segment yields an elimination order.
class MonomialOrder {
public:
  static MonomialOrder degrevlex();
  static MonomialOrder lex();
  static MonomialOrder block(std::vector<int> sizes);

  int cmp(const Expvec& a, const Expvec& b) const;   // -1 / 0 / +1
  bool less(const Expvec& a, const Expvec& b) const { return cmp(a, b) < 0; }

  // True iff every monomial touching vars 0..nfirst-1 dominates every
  // monomial supported on the remaining variables.
  bool eliminates(int nfirst, int nvars) const;

  std::string to_string() const;
  // "degrevlex" | "lex" | "block:<k1>,<k2>,..."
  static MonomialOrder parse(const std::string& text);

  bool operator==(const MonomialOrder&) const = default;

private:
  enum class Kind { degrevlex, lex, block };
  Kind kind_ = Kind::degrevlex;
  std::vector<int> sizes_;
};

struct RingDesc {
  std::vector<std::string> vars;
  Field field;
  MonomialOrder order;   // ambient order: term printing and default basis order

  int nvars() const { return static_cast<int>(vars.size()); }
  int var_index(const std::string& name) const;   // -1 if absent
  bool operator==(const RingDesc& o) const {
    return vars == o.vars && field == o.field && order == o.order;
  }
};

using Ring = std::shared_ptr<const RingDesc>;

Ring make_ring(std::vector<std::string> vars, Field f,
               MonomialOrder ord = MonomialOrder::degrevlex());

// Same ring contents (pointer identity not required); input_error if not.
void require_same_ring(const Ring& a, const Ring& b);

class Poly {
public:
  Poly() = default;

  static Poly zero(Ring r);
  static Poly constant(Ring r, const Coef& c);
  static Poly constant(Ring r, const Rational& c);
  static Poly constant(Ring r, long c);
  static Poly variable(Ring r, int i);
  static Poly monomial(Ring r, Expvec e, Coef c);

  const Ring& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;   // total degree, -1 for the zero polynomial
  const std::map<Expvec, Coef>& terms() const { return terms_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Coef& c) const;
  Poly pow(int k) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative(int var) const;
  Coef eval(const std::vector<Coef>& point) const;
  bool is_constant() const;
  Coef constant_value() const;   // coefficient of the constant term

  Expvec leading_monomial(const MonomialOrder& ord) const;   // error on zero
  Coef leading_coef(const MonomialOrder& ord) const;
  Poly monic(const MonomialOrder& ord) const;

  // Terms descending under the ambient order: "3/2*x^2*y - 1".
  std::string str() const;

  // Internal mutation helper shared by the arithmetic; removes the entry
  // when the sum cancels.
  void add_term(const Expvec& e, const Coef& c);

private:
  Ring ring_;
  std::map<Expvec, Coef> terms_;
};

// Recursive-descent parser for the canonical syntax: + - * ^, parentheses,
// rational literals (3, 3/2), variable names, "zeta" over extensions.
// Positions in errors are byte offsets into `text`.
Poly parse_poly(const Ring& r, const std::string& text);

// Ring surgery for tag-variable constructions. New variables are appended at
// the front or back; `map_to_ring` matches variables by name and fails if the
// polynomial uses one the target lacks.
Ring extend_ring(const Ring& r, const std::vector<std::string>& newvars,
                 bool front, MonomialOrder ord);
Poly map_to_ring(const Poly& p, const Ring& target);

} // namespace pomelo
