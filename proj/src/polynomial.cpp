#include "pomelo/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pomelo {

int total_degree(const Expvec& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool exp_divides(const Expvec& a, const Expvec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Expvec exp_add(const Expvec& a, const Expvec& b) {
  Expvec r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Expvec exp_sub(const Expvec& a, const Expvec& b) {
  Expvec r = a;
  for (size_t i = 0; i < a.size(); ++i) {
    r[i] -= b[i];
    if (r[i] < 0) throw internal_error("negative exponent in monomial division");
  }
  return r;
}

Expvec exp_lcm(const Expvec& a, const Expvec& b) {
  Expvec r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

namespace {

// degrevlex on a contiguous variable segment [lo, hi).
int drl_segment(const Expvec& a, const Expvec& b, int lo, int hi) {
  int da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  // reverse lex tie-break: scan from the last variable; the monomial with
  // the smaller exponent at the first difference is the larger one
  for (int i = hi - 1; i >= lo; --i)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

} // namespace

MonomialOrder MonomialOrder::degrevlex() { return MonomialOrder{}; }

MonomialOrder MonomialOrder::lex() {
  MonomialOrder o;
  o.kind_ = Kind::lex;
  return o;
}

MonomialOrder MonomialOrder::block(std::vector<int> sizes) {
  for (int s : sizes)
    if (s <= 0) throw input_error("block order segments must be positive");
  MonomialOrder o;
  o.kind_ = Kind::block;
  o.sizes_ = std::move(sizes);
  return o;
}

int MonomialOrder::cmp(const Expvec& a, const Expvec& b) const {
  switch (kind_) {
    case Kind::lex:
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::degrevlex:
      return drl_segment(a, b, 0, static_cast<int>(a.size()));
    case Kind::block: {
      int lo = 0;
      int n = static_cast<int>(a.size());
      for (int s : sizes_) {
        int hi = std::min(lo + s, n);
        int c = drl_segment(a, b, lo, hi);
        if (c != 0) return c;
        lo = hi;
        if (lo >= n) return 0;
      }
      return drl_segment(a, b, lo, n);   // implicit trailing segment
    }
  }
  return 0;
}

bool MonomialOrder::eliminates(int nfirst, int nvars) const {
  if (nfirst == 0) return true;
  if (kind_ == Kind::lex) return true;
  if (kind_ == Kind::block) {
    // the leading segments must cover exactly the eliminated variables
    int covered = 0;
    for (int s : sizes_) {
      if (covered == nfirst) return true;
      covered += s;
      if (covered > nfirst) return false;
      if (covered >= nvars) break;
    }
    return covered == nfirst || covered >= nvars;
  }
  return nfirst >= nvars;   // plain degrevlex eliminates nothing proper
}

std::string MonomialOrder::to_string() const {
  switch (kind_) {
    case Kind::degrevlex: return "degrevlex";
    case Kind::lex: return "lex";
    case Kind::block: {
      std::string s = "block:";
      for (size_t i = 0; i < sizes_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(sizes_[i]);
      }
      return s;
    }
  }
  return "degrevlex";
}

MonomialOrder MonomialOrder::parse(const std::string& text) {
  if (text == "degrevlex") return degrevlex();
  if (text == "lex") return lex();
  if (text.rfind("block:", 0) == 0) {
    std::vector<int> sizes;
    std::string rest = text.substr(6);
    std::istringstream in(rest);
    std::string piece;
    while (std::getline(in, piece, ',')) {
      try {
        sizes.push_back(std::stoi(piece));
      } catch (...) {
        throw input_error("bad block order '" + text + "'");
      }
    }
    if (sizes.empty()) throw input_error("bad block order '" + text + "'");
    return block(sizes);
  }
  throw input_error("unknown monomial order '" + text + "'");
}

int RingDesc::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

Ring make_ring(std::vector<std::string> vars, Field f, MonomialOrder ord) {
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].empty()) throw input_error("empty variable name");
    if (vars[i] == "zeta") throw input_error("'zeta' is reserved for the field generator");
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw input_error("duplicate variable '" + vars[i] + "'");
  }
  return std::make_shared<const RingDesc>(RingDesc{std::move(vars), std::move(f), std::move(ord)});
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b))
    throw input_error("operands live in different rings");
}

Poly Poly::zero(Ring r) {
  Poly p;
  p.ring_ = std::move(r);
  return p;
}

Poly Poly::constant(Ring r, const Coef& c) {
  Poly p = zero(std::move(r));
  if (!c.is_zero()) p.terms_.emplace(Expvec(p.ring_->nvars(), 0), c);
  return p;
}

Poly Poly::constant(Ring r, const Rational& c) {
  Coef v = r->field.from_rational(c);
  return constant(std::move(r), v);
}

Poly Poly::constant(Ring r, long c) { return constant(std::move(r), Rational(c)); }

Poly Poly::variable(Ring r, int i) {
  if (i < 0 || i >= r->nvars()) throw input_error("variable index out of range");
  Expvec e(r->nvars(), 0);
  e[i] = 1;
  Coef c = r->field.one();
  return monomial(std::move(r), std::move(e), std::move(c));
}

Poly Poly::monomial(Ring r, Expvec e, Coef c) {
  Poly p = zero(std::move(r));
  if (static_cast<int>(e.size()) != p.ring_->nvars())
    throw input_error("exponent vector length mismatch");
  if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

void Poly::add_term(const Expvec& e, const Coef& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = ring_->field.add(it->second, c);
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  require_same_ring(ring_, o.ring_);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  require_same_ring(ring_, o.ring_);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, o.ring_->field.neg(c));
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = ring_->field.neg(c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require_same_ring(ring_, o.ring_);
  Poly r = zero(ring_);
  const Field& F = ring_->field;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(exp_add(e1, e2), F.mul(c1, c2));
  return r;
}

Poly Poly::scaled(const Coef& c) const {
  Poly r = zero(ring_);
  if (c.is_zero()) return r;
  const Field& F = ring_->field;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, F.mul(x, c));
  return r;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw input_error("negative polynomial power");
  Poly r = constant(ring_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
  require_same_ring(ring_, o.ring_);
  return terms_ == o.terms_;
}

Poly Poly::derivative(int var) const {
  Poly r = zero(ring_);
  const Field& F = ring_->field;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Expvec d = e;
    d[var] -= 1;
    r.add_term(d, F.mul(c, F.from_int(e[var])));
  }
  return r;
}

Coef Poly::eval(const std::vector<Coef>& point) const {
  const Field& F = ring_->field;
  if (static_cast<int>(point.size()) != ring_->nvars())
    throw input_error("evaluation point has the wrong length");
  Coef acc = F.zero();
  for (const auto& [e, c] : terms_) {
    Coef t = c;
    for (size_t i = 0; i < point.size(); ++i)
      if (e[i]) t = F.mul(t, F.pow(point[i], e[i]));
    acc = F.add(acc, t);
  }
  return acc;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Coef Poly::constant_value() const {
  Expvec z(ring_->nvars(), 0);
  auto it = terms_.find(z);
  return it == terms_.end() ? ring_->field.zero() : it->second;
}

Expvec Poly::leading_monomial(const MonomialOrder& ord) const {
  if (terms_.empty()) throw internal_error("leading monomial of zero");
  const Expvec* best = nullptr;
  for (const auto& [e, c] : terms_)
    if (!best || ord.less(*best, e)) best = &e;
  return *best;
}

Coef Poly::leading_coef(const MonomialOrder& ord) const {
  return terms_.at(leading_monomial(ord));
}

Poly Poly::monic(const MonomialOrder& ord) const {
  if (is_zero()) return *this;
  Coef lc = leading_coef(ord);
  return scaled(ring_->field.inv(lc));
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  const Field& F = ring_->field;
  std::vector<const std::pair<const Expvec, Coef>*> ts;
  for (const auto& t : terms_) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
    return ring_->order.cmp(a->first, b->first) > 0;
  });
  std::ostringstream out;
  bool first = true;
  for (auto* t : ts) {
    const Expvec& e = t->first;
    std::string cs = F.to_string(t->second);
    bool negated = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
        cs.find(" - ") == std::string::npos) {
      // single-component negative coefficient: fold the sign into the term
      negated = true;
      cs = cs.substr(1);
    }
    bool multi = cs.find(' ') != std::string::npos;
    if (first) {
      if (negated) out << "-";
      first = false;
    } else {
      out << (negated ? " - " : " + ");
    }
    bool has_vars = total_degree(e) > 0;
    if (!has_vars) {
      out << (multi ? "(" + cs + ")" : cs);
      continue;
    }
    bool unit = (cs == "1");
    bool printed = false;
    if (!unit) {
      out << (multi ? "(" + cs + ")" : cs);
      printed = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) out << "*";
      out << ring_->vars[i];
      if (e[i] > 1) out << "^" << e[i];
      printed = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
  const Ring& ring;
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error("at offset " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos;
        acc = acc + term();
      } else if (c == '-') {
        ++pos;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos;
        Poly d = factor();
        if (!d.is_constant() || d.is_zero())
          fail("division is only allowed by nonzero constants");
        acc = acc.scaled(ring->field.inv(d.constant_value()));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
        // implicit product: "2x", "x(y+1)"
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly base = atom();
    if (peek() == '^') {
      ++pos;
      skip_ws();
      bool neg = eat('-');
      if (neg) fail("negative exponents are not allowed");
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected an exponent");
      int e = std::stoi(s.substr(start, pos - start));
      base = base.pow(e);
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos;
      return -factor();
    }
    if (c == '+') {
      ++pos;
      return factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      // a '/' directly followed by digits is part of the literal
      if (pos < s.size() && s[pos] == '/' && pos + 1 < s.size() &&
          std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      }
      return Poly::constant(ring, parse_rational(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "zeta") {
        if (ring->field.is_rationals())
          fail("'zeta' needs a cyclotomic coefficient field");
        return Poly::constant(ring, ring->field.zeta());
      }
      int idx = ring->var_index(name);
      if (idx < 0) fail("unknown variable '" + name + "'");
      return Poly::variable(ring, idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

} // namespace

Poly parse_poly(const Ring& r, const std::string& text) {
  Parser p{r, text};
  Poly result = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return result;
}

Ring extend_ring(const Ring& r, const std::vector<std::string>& newvars,
                 bool front, MonomialOrder ord) {
  std::vector<std::string> vars;
  if (front) {
    vars = newvars;
    vars.insert(vars.end(), r->vars.begin(), r->vars.end());
  } else {
    vars = r->vars;
    vars.insert(vars.end(), newvars.begin(), newvars.end());
  }
  return make_ring(std::move(vars), r->field, std::move(ord));
}

Poly map_to_ring(const Poly& p, const Ring& target) {
  if (p.ring()->field != target->field)
    throw input_error("cannot map between different coefficient fields");
  std::vector<int> where(p.ring()->nvars());
  for (int i = 0; i < p.ring()->nvars(); ++i)
    where[i] = target->var_index(p.ring()->vars[i]);
  Poly out = Poly::zero(target);
  for (const auto& [e, c] : p.terms()) {
    Expvec t(target->nvars(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0)
        throw input_error("variable '" + p.ring()->vars[i] +
                          "' is absent from the target ring");
      t[where[i]] = e[i];
    }
    out.add_term(t, c);
  }
  return out;
}

} // namespace pomelo
