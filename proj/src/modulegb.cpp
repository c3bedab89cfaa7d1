#include "pomelo/modulegb.hpp"

#include <algorithm>
#include <sstream>

namespace pomelo {

VecPoly vec_zero(const Ring& r, int rank) {
  return VecPoly(rank, Poly::zero(r));
}

bool vec_is_zero(const VecPoly& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

VecPoly vec_add(const VecPoly& a, const VecPoly& b) {
  if (a.size() != b.size()) throw input_error("module rank mismatch");
  VecPoly r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecPoly vec_sub(const VecPoly& a, const VecPoly& b) {
  if (a.size() != b.size()) throw input_error("module rank mismatch");
  VecPoly r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

VecPoly vec_scale(const VecPoly& a, const Poly& p) {
  VecPoly r = a;
  for (auto& x : r) x = x * p;
  return r;
}

bool vec_eq(const VecPoly& a, const VecPoly& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::string vec_str(const VecPoly& v) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i].str();
  }
  out << ")";
  return out.str();
}

namespace {

// Flat term representation: position, monomial, coefficient. Lists are kept
// descending under position-over-term.
struct MTerm {
  int pos;
  Expvec e;
  Coef c;
  bool operator==(const MTerm& o) const { return pos == o.pos && e == o.e && c == o.c; }
};

struct MP {
  std::vector<MTerm> t;
  bool zero() const { return t.empty(); }
  const MTerm& lead() const { return t.front(); }
};

// a > b iff a.pos < b.pos, ties broken by the monomial order.
int mcmp(int pa, const Expvec& ea, int pb, const Expvec& eb,
         const MonomialOrder& ord) {
  if (pa != pb) return pa < pb ? 1 : -1;
  return ord.cmp(ea, eb);
}

MP to_mp(const VecPoly& v, const MonomialOrder& ord) {
  MP r;
  for (size_t p = 0; p < v.size(); ++p)
    for (const auto& [e, c] : v[p].terms())
      r.t.push_back({static_cast<int>(p), e, c});
  std::sort(r.t.begin(), r.t.end(), [&](const MTerm& a, const MTerm& b) {
    return mcmp(a.pos, a.e, b.pos, b.e, ord) > 0;
  });
  return r;
}

VecPoly from_mp(const Ring& ring, int rank, const MP& f) {
  VecPoly v = vec_zero(ring, rank);
  for (const auto& t : f.t) v[t.pos].add_term(t.e, t.c);
  return v;
}

// f <- f - c * x^m * g
void msub_mul(MP& f, const Coef& c, const Expvec& m, const MP& g,
              const MonomialOrder& ord, const Field& F) {
  std::vector<MTerm> out;
  out.reserve(f.t.size() + g.t.size());
  size_t i = 0, j = 0;
  while (i < f.t.size() || j < g.t.size()) {
    if (j == g.t.size()) {
      out.push_back(std::move(f.t[i++]));
      continue;
    }
    Expvec ge = exp_add(g.t[j].e, m);
    int cv = i == f.t.size() ? -1 : mcmp(f.t[i].pos, f.t[i].e, g.t[j].pos, ge, ord);
    if (cv > 0) {
      out.push_back(std::move(f.t[i++]));
    } else if (cv < 0) {
      out.push_back({g.t[j].pos, std::move(ge), F.neg(F.mul(c, g.t[j].c))});
      ++j;
    } else {
      Coef nc = F.sub(f.t[i].c, F.mul(c, g.t[j].c));
      if (!nc.is_zero()) out.push_back({f.t[i].pos, std::move(ge), std::move(nc)});
      ++i;
      ++j;
    }
  }
  f.t = std::move(out);
}

MP mreduce(MP f, const std::vector<MP>& basis, const MonomialOrder& ord,
           const Field& F) {
  std::vector<MTerm> head;
  while (!f.zero()) {
    const MTerm& lt = f.lead();
    const MP* div = nullptr;
    for (const auto& g : basis) {
      if (g.zero()) continue;
      if (g.lead().pos == lt.pos && exp_divides(g.lead().e, lt.e)) {
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
    msub_mul(f, c, m, *div, ord, F);
  }
  MP r;
  r.t = std::move(head);
  return r;
}

std::vector<MP> minterreduce(std::vector<MP> G, const MonomialOrder& ord,
                             const Field& F) {
  std::vector<MP> kept;
  for (size_t i = 0; i < G.size(); ++i) {
    if (G[i].zero()) continue;
    bool redundant = false;
    for (size_t j = 0; j < G.size(); ++j) {
      if (i == j || G[j].zero()) continue;
      if (G[j].lead().pos != G[i].lead().pos) continue;
      if (G[j].lead().e == G[i].lead().e
              ? j < i
              : exp_divides(G[j].lead().e, G[i].lead().e)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(std::move(G[i]));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<MP> others;
      others.reserve(kept.size() - 1);
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      MP r = mreduce(kept[i], others, ord, F);
      if (!(r.t == kept[i].t)) {
        changed = true;
        kept[i] = std::move(r);
      }
    }
    kept.erase(std::remove_if(kept.begin(), kept.end(),
                              [](const MP& f) { return f.zero(); }),
               kept.end());
  }
  for (auto& f : kept) {
    Coef inv = F.inv(f.lead().c);
    for (auto& t : f.t) t.c = F.mul(t.c, inv);
  }
  std::sort(kept.begin(), kept.end(), [&](const MP& a, const MP& b) {
    return mcmp(a.lead().pos, a.lead().e, b.lead().pos, b.lead().e, ord) > 0;
  });
  return kept;
}

std::vector<MP> mbuchberger(std::vector<MP> G, const MonomialOrder& ord,
                            const Field& F) {
  struct MPair {
    int i, j;
    Expvec lcm;
    int deg;
  };
  auto pless = [](const MPair& a, const MPair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };
  std::vector<MPair> pairs;
  auto add_pairs_for = [&](int t) {
    for (int i = 0; i < t; ++i) {
      if (G[i].zero()) continue;
      if (G[i].lead().pos != G[t].lead().pos) continue;   // pairs need a common position
      MPair p;
      p.i = i;
      p.j = t;
      p.lcm = exp_lcm(G[i].lead().e, G[t].lead().e);
      p.deg = total_degree(p.lcm);
      pairs.push_back(std::move(p));
    }
  };
  for (int t = 0; t < static_cast<int>(G.size()); ++t) add_pairs_for(t);
  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pless);
    MPair p = *it;
    pairs.erase(it);
    const MP& f = G[p.i];
    const MP& g = G[p.j];
    Expvec mf = exp_sub(p.lcm, f.lead().e);
    Expvec mg = exp_sub(p.lcm, g.lead().e);
    MP s;
    s.t.reserve(f.t.size());
    Coef invf = F.inv(f.lead().c);
    for (const auto& t : f.t) s.t.push_back({t.pos, exp_add(t.e, mf), F.mul(t.c, invf)});
    msub_mul(s, F.inv(g.lead().c), mg, g, ord, F);
    MP h = mreduce(std::move(s), G, ord, F);
    if (h.zero()) continue;
    G.push_back(std::move(h));
    add_pairs_for(static_cast<int>(G.size()) - 1);
  }
  return G;
}

} // namespace

std::vector<VecPoly> module_groebner(const std::vector<VecPoly>& gens,
                                     const MonomialOrder& ord) {
  Ring ring;
  int rank = -1;
  std::vector<MP> G;
  for (const auto& v : gens) {
    if (rank < 0) rank = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != rank) throw input_error("module rank mismatch");
    for (const auto& p : v) {
      if (!ring && p.ring()) ring = p.ring();
      if (p.ring()) require_same_ring(ring, p.ring());
    }
    if (!vec_is_zero(v)) G.push_back(to_mp(v, ord));
  }
  if (!ring) return {};
  const Field& F = ring->field;
  auto full = mbuchberger(std::move(G), ord, F);
  std::vector<VecPoly> out;
  for (const auto& f : minterreduce(std::move(full), ord, F))
    out.push_back(from_mp(ring, rank, f));
  return out;
}

VecPoly module_normal_form(const VecPoly& v, const std::vector<VecPoly>& basis,
                           const MonomialOrder& ord) {
  Ring ring;
  for (const auto& p : v)
    if (p.ring()) { ring = p.ring(); break; }
  if (!ring) throw input_error("normal form of an empty vector");
  std::vector<MP> B;
  for (const auto& b : basis)
    if (!vec_is_zero(b)) B.push_back(to_mp(b, ord));
  return from_mp(ring, static_cast<int>(v.size()),
                 mreduce(to_mp(v, ord), B, ord, ring->field));
}

Submodule::Submodule(Ring r, int rank, std::vector<VecPoly> gens)
    : ring_(std::move(r)), rank_(rank), gens_(std::move(gens)),
      cache_(std::make_shared<Cache>()) {
  for (const auto& v : gens_) {
    if (static_cast<int>(v.size()) != rank_) throw input_error("module rank mismatch");
    for (const auto& p : v)
      if (p.ring()) require_same_ring(ring_, p.ring());
  }
}

const std::vector<VecPoly>& Submodule::basis() const {
  if (!cache_) throw internal_error("basis of a default-constructed submodule");
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->basis) cache_->basis = module_groebner(gens_, ring_->order);
  return *cache_->basis;
}

std::string Submodule::str() const {
  std::ostringstream out;
  out << "[";
  const auto& b = basis();
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) out << ", ";
    out << vec_str(b[i]);
  }
  out << "]";
  return out.str();
}

bool submodule_member(const VecPoly& v, const Submodule& W) {
  if (static_cast<int>(v.size()) != W.rank()) throw input_error("module rank mismatch");
  if (vec_is_zero(v)) return true;
  return vec_is_zero(module_normal_form(v, W.basis(), W.ring()->order));
}

bool submodule_contains(const Submodule& big, const Submodule& small) {
  for (const auto& g : small.gens())
    if (!submodule_member(g, big)) return false;
  return true;
}

bool submodule_equal(const Submodule& a, const Submodule& b) {
  if (a.rank() != b.rank()) return false;
  const auto& x = a.basis();
  const auto& y = b.basis();
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (!vec_eq(x[i], y[i])) return false;
  return true;
}

namespace {

// Shared engine: generators of {g in Z^s : sum_j g_j rows_j in span(rel)}.
// The rows are tagged with standard basis vectors in an s-position tail
// block; relation vectors are untagged. Position-over-term eliminates the
// leading n positions, so basis elements supported entirely on the tail
// carry exactly the kernel coefficients.
std::vector<VecPoly> kernel_engine(const Ring& ring, int n,
                                   const std::vector<VecPoly>& rows,
                                   const std::vector<VecPoly>& rel) {
  int s = static_cast<int>(rows.size());
  std::vector<VecPoly> aug;
  for (int j = 0; j < s; ++j) {
    if (static_cast<int>(rows[j].size()) != n) throw input_error("module rank mismatch");
    VecPoly v = vec_zero(ring, n + s);
    for (int p = 0; p < n; ++p) v[p] = rows[j][p];
    v[n + j] = Poly::constant(ring, 1);
    aug.push_back(std::move(v));
  }
  for (const auto& w : rel) {
    if (static_cast<int>(w.size()) != n) throw input_error("module rank mismatch");
    if (vec_is_zero(w)) continue;
    VecPoly v = vec_zero(ring, n + s);
    for (int p = 0; p < n; ++p) v[p] = w[p];
    aug.push_back(std::move(v));
  }
  std::vector<VecPoly> out;
  for (const auto& b : module_groebner(aug, ring->order)) {
    bool head_zero = true;
    for (int p = 0; p < n && head_zero; ++p) head_zero = b[p].is_zero();
    if (!head_zero) continue;
    VecPoly tail(b.begin() + n, b.end());
    out.push_back(std::move(tail));
  }
  return out;
}

} // namespace

std::vector<VecPoly> syzygies(const Ring& r, int n, const std::vector<VecPoly>& u) {
  return kernel_engine(r, n, u, {});
}

Submodule syzygy_kernel(const std::vector<VecPoly>& rows, const Ideal& I) {
  if (rows.empty()) throw input_error("syzygy kernel of an empty row list");
  const Ring& ring = I.ring();
  int n = static_cast<int>(rows[0].size());
  std::vector<VecPoly> rel;
  for (const auto& f : I.gens()) {
    if (f.is_zero()) continue;
    for (int p = 0; p < n; ++p) {
      VecPoly w = vec_zero(ring, n);
      w[p] = f;
      rel.push_back(std::move(w));
    }
  }
  return Submodule(ring, static_cast<int>(rows.size()),
                   kernel_engine(ring, n, rows, rel));
}

Submodule kernel_mod_submodule(const std::vector<VecPoly>& rows, const Submodule& W) {
  if (rows.empty()) throw input_error("kernel of an empty row list");
  return Submodule(W.ring(), static_cast<int>(rows.size()),
                   kernel_engine(W.ring(), W.rank(), rows, W.gens()));
}

Ideal ideal_from_rank1(const Submodule& W) {
  if (W.rank() != 1) throw internal_error("rank-1 contraction of a higher-rank module");
  std::vector<Poly> gens;
  for (const auto& v : W.gens())
    if (!v[0].is_zero()) gens.push_back(v[0]);
  return Ideal(W.ring(), std::move(gens));
}

} // namespace pomelo
