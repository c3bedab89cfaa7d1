#include "pomelo/groebner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pomelo {

namespace {

// Internal representation: terms sorted descending under the active order,
// with the sugar degree carried along for the selection rule.
struct OTerm {
  Expvec e;
  Coef c;
  bool operator==(const OTerm& o) const { return e == o.e && c == o.c; }
};

struct OP {
  std::vector<OTerm> t;
  long sugar = 0;
  bool zero() const { return t.empty(); }
  const OTerm& lead() const { return t.front(); }
};

OP to_op(const Poly& p, const MonomialOrder& ord) {
  OP r;
  r.t.reserve(p.terms().size());
  for (const auto& [e, c] : p.terms()) r.t.push_back({e, c});
  std::sort(r.t.begin(), r.t.end(),
            [&](const OTerm& a, const OTerm& b) { return ord.cmp(a.e, b.e) > 0; });
  r.sugar = p.degree();
  return r;
}

Poly from_op(const Ring& ring, const OP& f) {
  Poly p = Poly::zero(ring);
  for (const auto& t : f.t) p.add_term(t.e, t.c);
  return p;
}

// f <- f - c * x^m * g, merging the two descending term lists.
void sub_mul(OP& f, const Coef& c, const Expvec& m, const OP& g,
             const MonomialOrder& ord, const Field& F) {
  std::vector<OTerm> out;
  out.reserve(f.t.size() + g.t.size());
  size_t i = 0, j = 0;
  while (i < f.t.size() || j < g.t.size()) {
    if (j == g.t.size()) {
      out.push_back(std::move(f.t[i++]));
      continue;
    }
    Expvec ge = exp_add(g.t[j].e, m);
    int cv = i == f.t.size() ? -1 : ord.cmp(f.t[i].e, ge);
    if (cv > 0) {
      out.push_back(std::move(f.t[i++]));
    } else if (cv < 0) {
      out.push_back({std::move(ge), F.neg(F.mul(c, g.t[j].c))});
      ++j;
    } else {
      Coef nc = F.sub(f.t[i].c, F.mul(c, g.t[j].c));
      if (!nc.is_zero()) out.push_back({std::move(ge), std::move(nc)});
      ++i;
      ++j;
    }
  }
  f.t = std::move(out);
  f.sugar = std::max(f.sugar, static_cast<long>(total_degree(m)) + g.sugar);
}

// Full division remainder; every term of the result escapes every leading
// monomial of the basis. Divisor choice (first match) is deterministic.
OP reduce(OP f, const std::vector<OP>& basis, const MonomialOrder& ord,
          const Field& F) {
  OP rem;
  rem.sugar = f.sugar;
  std::vector<OTerm> head;   // processed terms, already irreducible
  while (!f.zero()) {
    const OTerm& lt = f.lead();
    const OP* div = nullptr;
    for (const auto& g : basis) {
      if (!g.zero() && exp_divides(g.lead().e, lt.e)) {
        div = &g;
        break;
      }
    }
    if (!div) {
      head.push_back(lt);
      f.t.erase(f.t.begin());
      continue;
    }
    Coef c = F.div(lt.c, div->lead().c);
    Expvec m = exp_sub(lt.e, div->lead().e);
    sub_mul(f, c, m, *div, ord, F);
  }
  rem.t = std::move(head);
  rem.sugar = std::max(rem.sugar, f.sugar);
  return rem;
}

struct Pair {
  int i, j;
  Expvec lcm;
  long sugar;
  int deg;
};

bool pair_less(const Pair& a, const Pair& b) {
  if (a.sugar != b.sugar) return a.sugar < b.sugar;
  if (a.deg != b.deg) return a.deg < b.deg;
  if (a.j != b.j) return a.j < b.j;
  return a.i < b.i;
}

Pair make_pair_of(int i, int j, const std::vector<OP>& G) {
  Pair p;
  p.i = i;
  p.j = j;
  p.lcm = exp_lcm(G[i].lead().e, G[j].lead().e);
  p.deg = total_degree(p.lcm);
  long si = G[i].sugar + p.deg - total_degree(G[i].lead().e);
  long sj = G[j].sugar + p.deg - total_degree(G[j].lead().e);
  p.sugar = std::max(si, sj);
  return p;
}

// Gebauer-Moeller update: fold the element at index `t` into the pair set.
void update_pairs(std::vector<Pair>& pairs, const std::vector<OP>& G, int t) {
  const Expvec& lt = G[t].lead().e;

  // chain criterion against existing pairs
  std::vector<Pair> kept;
  kept.reserve(pairs.size());
  for (auto& p : pairs) {
    bool drop = exp_divides(lt, p.lcm) &&
                exp_lcm(G[p.i].lead().e, lt) != p.lcm &&
                exp_lcm(G[p.j].lead().e, lt) != p.lcm;
    if (!drop) kept.push_back(std::move(p));
  }
  pairs = std::move(kept);

  // candidate pairs with the new element, pruned to minimal lcms
  std::vector<Pair> fresh;
  for (int i = 0; i < t; ++i) {
    if (G[i].zero()) continue;
    fresh.push_back(make_pair_of(i, t, G));
  }
  std::vector<bool> dead(fresh.size(), false);
  for (size_t a = 0; a < fresh.size(); ++a) {
    if (dead[a]) continue;
    for (size_t b = 0; b < fresh.size(); ++b) {
      if (a == b || dead[a] || dead[b]) continue;
      if (fresh[b].lcm == fresh[a].lcm) {
        if (b > a) dead[b] = true;
      } else if (exp_divides(fresh[b].lcm, fresh[a].lcm)) {
        dead[a] = true;
      }
    }
  }
  for (size_t a = 0; a < fresh.size(); ++a) {
    if (dead[a]) continue;
    // product criterion: coprime leading monomials reduce to zero anyway
    if (fresh[a].lcm == exp_add(G[fresh[a].i].lead().e, lt)) continue;
    pairs.push_back(std::move(fresh[a]));
  }
}

OP s_poly_op(const OP& f, const OP& g, const MonomialOrder& ord, const Field& F) {
  Expvec l = exp_lcm(f.lead().e, g.lead().e);
  // (l / lt_f) * f normalized to leading coefficient 1, minus same for g
  Expvec mf = exp_sub(l, f.lead().e);
  Expvec mg = exp_sub(l, g.lead().e);
  OP a;
  a.sugar = f.sugar + total_degree(mf);
  a.t.reserve(f.t.size());
  Coef inv_f = F.inv(f.lead().c);
  for (const auto& t : f.t) a.t.push_back({exp_add(t.e, mf), F.mul(t.c, inv_f)});
  sub_mul(a, F.inv(g.lead().c), mg, g, ord, F);
  a.sugar = std::max(a.sugar, g.sugar + total_degree(mg));
  return a;
}

std::vector<OP> interreduce(std::vector<OP> G, const MonomialOrder& ord,
                            const Field& F) {
  // drop elements whose leading monomial another one divides
  std::vector<OP> kept;
  for (size_t i = 0; i < G.size(); ++i) {
    if (G[i].zero()) continue;
    bool redundant = false;
    for (size_t j = 0; j < G.size(); ++j) {
      if (i == j || G[j].zero()) continue;
      if (G[j].lead().e == G[i].lead().e ? j < i
                                         : exp_divides(G[j].lead().e, G[i].lead().e)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(std::move(G[i]));
  }
  // tail-reduce each against the rest until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<OP> others;
      others.reserve(kept.size() - 1);
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      OP r = reduce(kept[i], others, ord, F);
      if (r.t != kept[i].t) {
        changed = true;
        kept[i] = std::move(r);
      }
    }
    kept.erase(std::remove_if(kept.begin(), kept.end(),
                              [](const OP& f) { return f.zero(); }),
               kept.end());
  }
  // monic, sorted descending by leading monomial
  for (auto& f : kept) {
    Coef inv = F.inv(f.lead().c);
    for (auto& t : f.t) t.c = F.mul(t.c, inv);
  }
  std::sort(kept.begin(), kept.end(), [&](const OP& a, const OP& b) {
    return ord.cmp(a.lead().e, b.lead().e) > 0;
  });
  return kept;
}

} // namespace

Poly normal_form(const Poly& f, const std::vector<Poly>& basis,
                 const MonomialOrder& ord) {
  const Field& F = f.ring()->field;
  std::vector<OP> B;
  for (const auto& g : basis) {
    require_same_ring(f.ring(), g.ring());
    if (!g.is_zero()) B.push_back(to_op(g, ord));
  }
  return from_op(f.ring(), reduce(to_op(f, ord), B, ord, F));
}

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& ord) {
  require_same_ring(f.ring(), g.ring());
  if (f.is_zero() || g.is_zero()) return Poly::zero(f.ring());
  return from_op(f.ring(), s_poly_op(to_op(f, ord), to_op(g, ord),
                                     ord, f.ring()->field));
}

std::vector<Poly> groebner(const std::vector<Poly>& gens, const MonomialOrder& ord) {
  Ring ring;
  std::vector<OP> G;
  for (const auto& g : gens) {
    if (!ring) ring = g.ring();
    require_same_ring(ring, g.ring());
    if (!g.is_zero()) G.push_back(to_op(g, ord));
  }
  if (!ring) throw input_error("groebner basis of an empty generator list");
  const Field& F = ring->field;

  std::vector<Pair> pairs;
  for (int t = 0; t < static_cast<int>(G.size()); ++t) update_pairs(pairs, G, t);

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    Pair p = *it;
    pairs.erase(it);
    OP s = s_poly_op(G[p.i], G[p.j], ord, F);
    s.sugar = p.sugar;
    OP h = reduce(std::move(s), G, ord, F);
    if (h.zero()) continue;
    G.push_back(std::move(h));
    update_pairs(pairs, G, static_cast<int>(G.size()) - 1);
  }

  std::vector<Poly> out;
  for (const auto& f : interreduce(std::move(G), ord, F))
    out.push_back(from_op(ring, f));
  return out;
}

Poly exact_div(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw internal_error("exact division by zero");
  const Ring& ring = f.ring();
  const MonomialOrder& ord = ring->order;
  const Field& F = ring->field;
  OP num = to_op(f, ord);
  OP den = to_op(g, ord);
  Poly q = Poly::zero(ring);
  while (!num.zero()) {
    const OTerm& lt = num.lead();
    if (!exp_divides(den.lead().e, lt.e))
      throw internal_error("exact division left a remainder");
    Coef c = F.div(lt.c, den.lead().c);
    Expvec m = exp_sub(lt.e, den.lead().e);
    q.add_term(m, c);
    sub_mul(num, c, m, den, ord, F);
  }
  return q;
}

Ideal::Ideal(Ring r, std::vector<Poly> gens)
    : ring_(std::move(r)), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : gens_) require_same_ring(ring_, g.ring());
}

const std::vector<Poly>& Ideal::basis(const MonomialOrder& ord) const {
  if (!cache_) throw internal_error("basis of a default-constructed ideal");
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto key = ord.to_string();
  auto it = cache_->by_order.find(key);
  if (it != cache_->by_order.end()) return it->second;
  std::vector<Poly> nonzero;
  for (const auto& g : gens_)
    if (!g.is_zero()) nonzero.push_back(g);
  std::vector<Poly> b =
      nonzero.empty() ? std::vector<Poly>{} : groebner(nonzero, ord);
  return cache_->by_order.emplace(key, std::move(b)).first->second;
}

const std::vector<Poly>& Ideal::basis() const { return basis(ring_->order); }

bool Ideal::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b[0].is_constant() && !b[0].is_zero();
}

std::string Ideal::str() const {
  std::ostringstream out;
  out << "(";
  const auto& b = basis();
  if (b.empty()) out << "0";
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) out << ", ";
    out << b[i].str();
  }
  out << ")";
  return out.str();
}

Ideal groebner_basis(const Ideal& I, const MonomialOrder& ord) {
  I.basis(ord);
  return I;
}

bool ideal_member(const Poly& f, const Ideal& I) {
  require_same_ring(f.ring(), I.ring());
  if (f.is_zero()) return true;
  const auto& b = I.basis();
  if (b.empty()) return false;
  return normal_form(f, b, I.ring()->order).is_zero();
}

bool ideal_equal(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  const auto& a = I.basis();
  const auto& b = J.basis();
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool ideal_contains(const Ideal& I, const Ideal& J) {
  for (const auto& g : J.gens())
    if (!ideal_member(g, I)) return false;
  return true;
}

Ideal ideal_intersect(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  const Ring& R = I.ring();
  // fresh tag variable in front, eliminated by a block order
  std::string tag = "t@";
  Ring E = extend_ring(R, {tag}, true, MonomialOrder::block({1}));
  Poly t = Poly::variable(E, 0);
  Poly one = Poly::constant(E, 1);
  std::vector<Poly> gens;
  for (const auto& f : I.gens())
    if (!f.is_zero()) gens.push_back(t * map_to_ring(f, E));
  for (const auto& g : J.gens())
    if (!g.is_zero()) gens.push_back((one - t) * map_to_ring(g, E));
  if (gens.empty()) return Ideal(R, {});
  std::vector<Poly> result;
  for (const auto& h : groebner(gens, E->order)) {
    bool uses_tag = false;
    for (const auto& [e, c] : h.terms())
      if (e[0] > 0) { uses_tag = true; break; }
    if (!uses_tag) result.push_back(map_to_ring(h, R));
  }
  return Ideal(R, std::move(result));
}

Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  const Ring& R = I.ring();
  std::optional<Ideal> acc;
  for (const auto& g : J.gens()) {
    if (g.is_zero()) continue;
    // I : (g) = (1/g) * (I n (g))
    Ideal cap = ideal_intersect(I, Ideal(R, {g}));
    std::vector<Poly> quot;
    for (const auto& h : cap.basis()) quot.push_back(exact_div(h, g));
    Ideal part(R, std::move(quot));
    acc = acc ? ideal_intersect(*acc, part) : part;
  }
  if (!acc) return Ideal(R, {Poly::constant(R, 1)});   // I : (0) = (1)
  return *acc;
}

Ideal eliminate(const Ideal& I, const std::vector<int>& vars) {
  const Ring& R = I.ring();
  int n = R->nvars();
  std::vector<bool> drop(n, false);
  for (int v : vars) {
    if (v < 0 || v >= n) throw input_error("eliminate: variable index out of range");
    drop[v] = true;
  }
  int k = static_cast<int>(vars.size());
  // permuted ring: eliminated variables first, block order splitting them off
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    if (drop[i]) names.push_back(R->vars[i]);
  for (int i = 0; i < n; ++i)
    if (!drop[i]) names.push_back(R->vars[i]);
  Ring E = make_ring(names, R->field,
                     k == 0 || k == n ? MonomialOrder::degrevlex()
                                      : MonomialOrder::block({k}));
  std::vector<Poly> gens;
  for (const auto& f : I.gens()) gens.push_back(map_to_ring(f, E));
  std::vector<int> prefix(k);
  for (int i = 0; i < k; ++i) prefix[i] = i;
  Ideal out = eliminate(Ideal(E, std::move(gens)), prefix, E->order);
  std::vector<Poly> back;
  for (const auto& h : out.gens()) back.push_back(map_to_ring(h, R));
  return Ideal(R, std::move(back));
}

Ideal eliminate(const Ideal& I, const std::vector<int>& vars,
                const MonomialOrder& ord) {
  const Ring& R = I.ring();
  int n = R->nvars();
  int k = static_cast<int>(vars.size());
  for (int i = 0; i < k; ++i)
    if (i >= n || vars[i] != i)
      throw input_error("eliminate: variables must form a prefix of the ring");
  if (!ord.eliminates(k, n))
    throw input_error("eliminate: '" + ord.to_string() +
                      "' is not an elimination order for the first " +
                      std::to_string(k) + " variable(s)");
  std::vector<Poly> kept;
  for (const auto& h : I.basis(ord)) {
    bool uses = false;
    for (const auto& [e, c] : h.terms())
      for (int i = 0; i < k && !uses; ++i) uses = e[i] > 0;
    if (!uses) kept.push_back(h);
  }
  return Ideal(R, std::move(kept));
}

bool radical_member(const Poly& f, const Ideal& I) {
  require_same_ring(f.ring(), I.ring());
  if (f.is_zero()) return true;
  const Ring& R = I.ring();
  Ring E = extend_ring(R, {"y@"}, false, MonomialOrder::degrevlex());
  int yi = E->nvars() - 1;
  std::vector<Poly> gens;
  for (const auto& g : I.gens()) gens.push_back(map_to_ring(g, E));
  gens.push_back(Poly::constant(E, 1) -
                 Poly::variable(E, yi) * map_to_ring(f, E));
  Ideal T(E, std::move(gens));
  return T.is_unit();
}

int krull_dimension(const Ideal& I) {
  const auto& b = I.basis();
  if (I.is_unit()) return -1;
  int n = I.ring()->nvars();
  std::vector<Expvec> lms;
  for (const auto& g : b) lms.push_back(g.leading_monomial(I.ring()->order));
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& lm : lms) {
      bool inside = true;
      for (int i = 0; i < n && inside; ++i)
        if (lm[i] > 0 && !(mask & (1u << i))) inside = false;
      if (inside) { independent = false; break; }
    }
    if (independent) best = size;
  }
  return best;
}

std::optional<std::vector<Expvec>> standard_monomials(const Ideal& I) {
  const auto& b = I.basis();
  if (I.is_unit()) return std::vector<Expvec>{};
  const Ring& R = I.ring();
  int n = R->nvars();
  std::vector<Expvec> lms;
  for (const auto& g : b) lms.push_back(g.leading_monomial(R->order));
  // finite iff every variable has a pure power among the leading terms
  for (int i = 0; i < n; ++i) {
    bool pure = false;
    for (const auto& lm : lms) {
      bool only_i = lm[i] > 0;
      for (int k = 0; k < n && only_i; ++k)
        if (k != i && lm[k] > 0) only_i = false;
      if (only_i) { pure = true; break; }
    }
    if (!pure) return std::nullopt;
  }
  auto reduced = [&](const Expvec& e) {
    for (const auto& lm : lms)
      if (exp_divides(lm, e)) return false;
    return true;
  };
  std::set<Expvec> seen;
  std::vector<Expvec> queue{Expvec(n, 0)};
  seen.insert(queue[0]);
  for (size_t at = 0; at < queue.size(); ++at) {
    Expvec e = queue[at];
    for (int i = 0; i < n; ++i) {
      ++e[i];
      if (reduced(e) && seen.insert(e).second) queue.push_back(e);
      --e[i];
    }
  }
  std::sort(queue.begin(), queue.end(), [](const Expvec& a, const Expvec& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  return queue;
}

} // namespace pomelo
