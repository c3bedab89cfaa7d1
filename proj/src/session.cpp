#include "pomelo/session.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "pomelo/errors.hpp"

namespace pomelo {

namespace {

[[noreturn]] void fail(const std::string& file, int line, int col,
                       const std::string& msg) {
  throw input_error(file + ":" + std::to_string(line) + ":" +
                    std::to_string(col) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

struct Entry {
  std::string key, value;
  int line = 0, col = 0;
};

struct Block {
  std::string kind, name;
  int line = 0, col = 0;
  std::vector<Entry> entries;

  const Entry* find(const std::string& key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }
};

std::vector<Block> lex_blocks(const std::string& text, const std::string& file) {
  std::vector<Block> blocks;
  Block cur;
  bool inside = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    int col = 1;
    while (col <= static_cast<int>(line.size()) &&
           std::isspace(static_cast<unsigned char>(line[static_cast<size_t>(col - 1)])))
      ++col;
    if (!inside) {
      if (body.back() != '{')
        fail(file, lineno, col, "expected a declaration of the form 'kind name {'");
      std::vector<std::string> head = split_ws(trim(body.substr(0, body.size() - 1)));
      if (head.size() != 2)
        fail(file, lineno, col, "expected a declaration of the form 'kind name {'");
      cur = Block{head[0], head[1], lineno, col, {}};
      if (!valid_name(cur.name))
        fail(file, lineno, col, "invalid name '" + cur.name + "'");
      inside = true;
      continue;
    }
    if (body == "}") {
      blocks.push_back(std::move(cur));
      cur = Block{};
      inside = false;
      continue;
    }
    size_t colon = body.find(':');
    if (colon == std::string::npos)
      fail(file, lineno, col, "expected 'key: value' or '}'");
    Entry e;
    e.key = trim(body.substr(0, colon));
    e.value = trim(body.substr(colon + 1));
    e.line = lineno;
    e.col = col;
    if (e.key.empty()) fail(file, lineno, col, "empty key");
    if (e.value.empty()) fail(file, lineno, col, "empty value for '" + e.key + "'");
    cur.entries.push_back(std::move(e));
  }
  if (inside) fail(file, cur.line, cur.col, "unterminated block '" + cur.name + "'");
  return blocks;
}

Poly poly_at(const Ring& r, const std::string& text, const std::string& file,
             int line, int col) {
  try {
    return parse_poly(r, text);
  } catch (const std::exception& err) {
    fail(file, line, col, err.what());
  }
}

VecPoly vecpoly_at(const Ring& r, const std::string& text, int rank,
                   const std::string& file, int line, int col) {
  std::vector<std::string> parts = split_on(text, '|');
  if (static_cast<int>(parts.size()) != rank)
    fail(file, line, col, "expected " + std::to_string(rank) +
                              " '|'-separated coordinates");
  VecPoly out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(poly_at(r, p, file, line, col));
  return out;
}

CoefMat matrix_at(const Field& F, const std::string& text, int dim,
                  const std::string& file, int line, int col) {
  std::vector<std::string> rows = split_on(text, ';');
  if (static_cast<int>(rows.size()) != dim)
    fail(file, line, col, "expected " + std::to_string(dim) + " ';'-separated rows");
  CoefMat out;
  for (const auto& row : rows) {
    std::vector<std::string> cells = split_on(row, ',');
    if (static_cast<int>(cells.size()) != dim)
      fail(file, line, col,
           "expected " + std::to_string(dim) + " ','-separated entries per row");
    std::vector<Coef> r;
    for (const auto& cell : cells) {
      try {
        r.push_back(F.from_rational(parse_rational(cell)));
      } catch (const std::exception& err) {
        fail(file, line, col, err.what());
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

long int_at(const std::string& text, const std::string& file, int line, int col) {
  try {
    size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail(file, line, col, "expected an integer, got '" + text + "'");
  }
}

bool bool_at(const std::string& text, const std::string& file, int line, int col) {
  if (text == "true") return true;
  if (text == "false") return false;
  fail(file, line, col, "expected true or false, got '" + text + "'");
}

void check_keys(const Block& b, const std::vector<std::string>& allowed,
                const std::string& file) {
  for (const auto& e : b.entries) {
    bool ok = false;
    for (const auto& k : allowed)
      if (e.key == k) ok = true;
    if (!ok)
      fail(file, e.line, e.col,
           "unknown key '" + e.key + "' in a " + b.kind + " block");
  }
}

// "{a, b} = poly" -> (a, b, poly-text)
std::tuple<std::string, std::string, std::string> parse_bracket_lhs(
    const std::string& value, const std::string& file, int line, int col) {
  size_t open = value.find('{');
  size_t close = value.find('}');
  size_t eq = value.find('=', close == std::string::npos ? 0 : close);
  if (open == std::string::npos || close == std::string::npos ||
      eq == std::string::npos || open > close)
    fail(file, line, col, "expected 'bracket: {a, b} = polynomial'");
  std::vector<std::string> names =
      split_on(value.substr(open + 1, close - open - 1), ',');
  if (names.size() != 2)
    fail(file, line, col, "expected two generator names inside {...}");
  std::string rhs = trim(value.substr(eq + 1));
  if (rhs.empty()) fail(file, line, col, "missing bracket value");
  return {names[0], names[1], rhs};
}

void load_algebra(SessionDocument& doc, const Block& b, const std::string& file) {
  check_keys(b, {"vars", "field", "order", "bracket", "allow_non_jacobi"}, file);
  const Entry* vars = b.find("vars");
  if (!vars) fail(file, b.line, b.col, "poisson_algebra needs a 'vars' line");
  std::vector<std::string> names = split_ws(vars->value);

  Field F = Field::rationals();
  if (const Entry* f = b.find("field")) {
    std::vector<std::string> w = split_ws(f->value);
    if (w.size() == 1 && w[0] == "Q") {
      F = Field::rationals();
    } else if (w.size() == 2 && w[0] == "zeta") {
      try {
        F = Field::cyclotomic(static_cast<int>(int_at(w[1], file, f->line, f->col)));
      } catch (const input_error& err) {
        fail(file, f->line, f->col, err.what());
      }
    } else {
      fail(file, f->line, f->col, "field must be 'Q' or 'zeta <ell>'");
    }
  }

  MonomialOrder ord = MonomialOrder::degrevlex();
  if (const Entry* o = b.find("order")) {
    try {
      ord = MonomialOrder::parse(o->value);
    } catch (const input_error& err) {
      fail(file, o->line, o->col, err.what());
    }
  }

  Ring r;
  try {
    r = make_ring(names, F, ord);
  } catch (const input_error& err) {
    fail(file, vars->line, vars->col, err.what());
  }

  std::map<std::pair<int, int>, Poly> table;
  for (const auto& e : b.entries) {
    if (e.key != "bracket") continue;
    auto [an, bn, rhs] = parse_bracket_lhs(e.value, file, e.line, e.col);
    int i = r->var_index(an);
    int j = r->var_index(bn);
    if (i < 0) fail(file, e.line, e.col, "unknown generator '" + an + "'");
    if (j < 0) fail(file, e.line, e.col, "unknown generator '" + bn + "'");
    Poly p = poly_at(r, rhs, file, e.line, e.col);
    if (i == j) {
      if (!(p == Poly::zero(r)))
        fail(file, e.line, e.col, "bracket {" + an + ", " + an + "} must vanish");
      continue;
    }
    Poly norm = i < j ? p : p.scaled(F.from_int(-1));
    std::pair<int, int> key{std::min(i, j), std::max(i, j)};
    auto it = table.find(key);
    if (it != table.end()) {
      if (!(it->second == norm))
        fail(file, e.line, e.col,
             "antisymmetry violated: {" + bn + ", " + an +
                 "} must be the negative of {" + an + ", " + bn + "}");
      continue;
    }
    table.emplace(key, norm);
  }

  std::vector<std::tuple<int, int, Poly>> entries;
  entries.reserve(table.size());
  for (const auto& [ij, p] : table) entries.emplace_back(ij.first, ij.second, p);
  PoissonAlgebra P = make_poisson(r, entries);

  bool allow = false;
  if (const Entry* a = b.find("allow_non_jacobi"))
    allow = bool_at(a->value, file, a->line, a->col);
  if (!allow) {
    JacobiReport rep = jacobi_check(P);
    if (!rep.ok()) {
      const JacobiViolation& v = rep.violations.front();
      fail(file, b.line, b.col,
           "the bracket fails the Jacobi identity on (" + names[static_cast<size_t>(v.i)] +
               ", " + names[static_cast<size_t>(v.j)] + ", " +
               names[static_cast<size_t>(v.k)] + "); Jacobiator = " + v.defect.str());
    }
  }
  doc.algebras.emplace(b.name, std::move(P));
  doc.decls.emplace_back(DeclKind::algebra, b.name);
}

const PoissonAlgebra& algebra_ref(const SessionDocument& doc, const std::string& name,
                                  const std::string& file, int line, int col) {
  auto it = doc.algebras.find(name);
  if (it == doc.algebras.end())
    fail(file, line, col, "reference to undeclared poisson_algebra '" + name + "'");
  return it->second;
}

void load_ideal(SessionDocument& doc, const Block& b, const std::string& file) {
  check_keys(b, {"over", "gens"}, file);
  const Entry* over = b.find("over");
  if (!over) fail(file, b.line, b.col, "ideal needs an 'over' line");
  const PoissonAlgebra& P = algebra_ref(doc, over->value, file, over->line, over->col);
  std::vector<Poly> gens;
  for (const auto& e : b.entries) {
    if (e.key != "gens") continue;
    for (const auto& part : split_on(e.value, ';')) {
      if (part.empty()) fail(file, e.line, e.col, "empty generator");
      gens.push_back(poly_at(P.ring, part, file, e.line, e.col));
    }
  }
  if (gens.empty()) fail(file, b.line, b.col, "ideal needs a 'gens' line");
  doc.ideals.emplace(b.name, Ideal(P.ring, std::move(gens)));
  doc.ideal_over.emplace(b.name, over->value);
  doc.decls.emplace_back(DeclKind::ideal, b.name);
}

const PoissonOrder& order_ref(const SessionDocument& doc, const std::string& name,
                              const std::string& file, int line, int col) {
  auto it = doc.orders.find(name);
  if (it == doc.orders.end())
    fail(file, line, col, "reference to undeclared poisson_order '" + name + "'");
  return it->second;
}

void load_order(SessionDocument& doc, const Block& b, const std::string& file) {
  check_keys(b, {"base", "basis", "unit", "mult", "ham", "matrix", "trivial",
                 "opposite", "tensor"},
             file);
  PoissonOrder A;
  std::string base_name;
  if (const Entry* m = b.find("matrix")) {
    const Entry* base = b.find("base");
    if (!base) fail(file, b.line, b.col, "matrix orders need a 'base' line");
    base_name = base->value;
    const PoissonAlgebra& P = algebra_ref(doc, base_name, file, base->line, base->col);
    long n = int_at(m->value, file, m->line, m->col);
    try {
      A = matrix_order(P, static_cast<int>(n));
    } catch (const input_error& err) {
      fail(file, m->line, m->col, err.what());
    }
  } else if (const Entry* t = b.find("trivial")) {
    if (!bool_at(t->value, file, t->line, t->col))
      fail(file, t->line, t->col, "write 'trivial: true' or omit the line");
    const Entry* base = b.find("base");
    if (!base) fail(file, b.line, b.col, "trivial orders need a 'base' line");
    base_name = base->value;
    A = trivial_order(algebra_ref(doc, base_name, file, base->line, base->col));
  } else if (const Entry* o = b.find("opposite")) {
    const PoissonOrder& inner = order_ref(doc, o->value, file, o->line, o->col);
    base_name = doc.order_base.at(o->value);
    A = opposite_order(inner);
  } else if (const Entry* t = b.find("tensor")) {
    std::vector<std::string> w = split_ws(t->value);
    if (w.size() != 2)
      fail(file, t->line, t->col, "tensor takes two poisson_order names");
    const PoissonOrder& left = order_ref(doc, w[0], file, t->line, t->col);
    const PoissonOrder& right = order_ref(doc, w[1], file, t->line, t->col);
    base_name = doc.order_base.at(w[0]);
    try {
      A = tensor_order(left, right);
    } catch (const input_error& err) {
      fail(file, t->line, t->col, err.what());
    }
  } else {
    const Entry* base = b.find("base");
    if (!base) fail(file, b.line, b.col, "poisson_order needs a 'base' line");
    base_name = base->value;
    const PoissonAlgebra& P = algebra_ref(doc, base_name, file, base->line, base->col);
    const Entry* basis = b.find("basis");
    if (!basis) fail(file, b.line, b.col, "poisson_order needs a 'basis' line");
    std::vector<std::string> bnames = split_ws(basis->value);
    int rank = static_cast<int>(bnames.size());
    auto basis_index = [&](const std::string& n, int line, int col) {
      for (int k = 0; k < rank; ++k)
        if (bnames[static_cast<size_t>(k)] == n) return k;
      fail(file, line, col, "unknown basis element '" + n + "'");
    };

    VecPoly unit(static_cast<size_t>(rank), Poly::zero(P.ring));
    unit[0] = Poly::constant(P.ring, 1);
    if (const Entry* u = b.find("unit"))
      unit = vecpoly_at(P.ring, u->value, rank, file, u->line, u->col);

    std::vector<std::vector<VecPoly>> mult(
        static_cast<size_t>(rank),
        std::vector<VecPoly>(static_cast<size_t>(rank)));
    std::vector<std::vector<bool>> seen(static_cast<size_t>(rank),
                                        std::vector<bool>(static_cast<size_t>(rank)));
    std::vector<std::vector<VecPoly>> ham(
        static_cast<size_t>(P.nvars()),
        std::vector<VecPoly>(static_cast<size_t>(rank),
                             VecPoly(static_cast<size_t>(rank), Poly::zero(P.ring))));
    for (const auto& e : b.entries) {
      if (e.key == "mult") {
        size_t eq = e.value.find('=');
        if (eq == std::string::npos)
          fail(file, e.line, e.col, "expected 'mult: a*b = coordinates'");
        std::vector<std::string> lhs = split_on(e.value.substr(0, eq), '*');
        if (lhs.size() != 2)
          fail(file, e.line, e.col, "expected 'mult: a*b = coordinates'");
        int j = basis_index(lhs[0], e.line, e.col);
        int k = basis_index(lhs[1], e.line, e.col);
        if (seen[static_cast<size_t>(j)][static_cast<size_t>(k)])
          fail(file, e.line, e.col,
               "product " + lhs[0] + "*" + lhs[1] + " declared twice");
        seen[static_cast<size_t>(j)][static_cast<size_t>(k)] = true;
        mult[static_cast<size_t>(j)][static_cast<size_t>(k)] = vecpoly_at(
            P.ring, trim(e.value.substr(eq + 1)), rank, file, e.line, e.col);
      } else if (e.key == "ham") {
        // d[var](basis) = coordinates
        size_t ob = e.value.find('[');
        size_t cb = e.value.find(']');
        size_t op = e.value.find('(');
        size_t cp = e.value.find(')');
        size_t eq = e.value.find('=');
        if (e.value.rfind("d[", 0) != 0 || ob == std::string::npos ||
            cb == std::string::npos || op == std::string::npos ||
            cp == std::string::npos || eq == std::string::npos || cb > op ||
            op > cp || cp > eq)
          fail(file, e.line, e.col, "expected 'ham: d[var](basis) = coordinates'");
        std::string vn = trim(e.value.substr(ob + 1, cb - ob - 1));
        std::string en = trim(e.value.substr(op + 1, cp - op - 1));
        int vi = P.ring->var_index(vn);
        if (vi < 0) fail(file, e.line, e.col, "unknown generator '" + vn + "'");
        int ei = basis_index(en, e.line, e.col);
        ham[static_cast<size_t>(vi)][static_cast<size_t>(ei)] = vecpoly_at(
            P.ring, trim(e.value.substr(eq + 1)), rank, file, e.line, e.col);
      }
    }
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k)
        if (!seen[static_cast<size_t>(j)][static_cast<size_t>(k)])
          fail(file, b.line, b.col,
               "missing product " + bnames[static_cast<size_t>(j)] + "*" +
                   bnames[static_cast<size_t>(k)]);
    try {
      A = make_order(P, std::move(mult), std::move(unit), std::move(ham),
                     std::move(bnames));
    } catch (const input_error& err) {
      fail(file, b.line, b.col, err.what());
    }
  }
  doc.orders.emplace(b.name, std::move(A));
  doc.order_base.emplace(b.name, base_name);
  doc.decls.emplace_back(DeclKind::order, b.name);
}

void load_module(SessionDocument& doc, const Block& b, const std::string& file) {
  for (const auto& e : b.entries) {
    if (e.key == "over" || e.key == "dim" || e.key == "allow_invalid") continue;
    bool matrix_key = e.key.size() >= 4 &&
                      (e.key[0] == 'X' || e.key[0] == 'D' || e.key[0] == 'E') &&
                      e.key[1] == '[' && e.key.back() == ']';
    if (!matrix_key)
      fail(file, e.line, e.col,
           "unknown key '" + e.key + "' in a module block (matrix lines look like 'X[var]: rows')");
  }

  const Entry* over = b.find("over");
  if (!over) fail(file, b.line, b.col, "module needs an 'over' line");
  const PoissonOrder* order = nullptr;
  const PoissonAlgebra* alg = nullptr;
  if (auto it = doc.orders.find(over->value); it != doc.orders.end()) {
    order = &it->second;
    alg = &order->base;
  } else if (auto it2 = doc.algebras.find(over->value); it2 != doc.algebras.end()) {
    alg = &it2->second;
  } else {
    fail(file, over->line, over->col,
         "reference to undeclared algebra or order '" + over->value + "'");
  }
  const Field& F = alg->ring->field;
  if (!F.is_rationals())
    fail(file, over->line, over->col, "module matrices take rational entries");

  const Entry* dime = b.find("dim");
  if (!dime) fail(file, b.line, b.col, "module needs a 'dim' line");
  int dim = static_cast<int>(int_at(dime->value, file, dime->line, dime->col));
  if (dim < 1) fail(file, dime->line, dime->col, "dim must be positive");

  int nv = alg->nvars();
  int rank = order ? order->rank : 1;
  std::vector<CoefMat> X(static_cast<size_t>(nv)), D(static_cast<size_t>(nv));
  std::vector<bool> seenX(static_cast<size_t>(nv)), seenD(static_cast<size_t>(nv));
  std::vector<CoefMat> E(static_cast<size_t>(rank));
  std::vector<bool> seenE(static_cast<size_t>(rank));

  for (const auto& e : b.entries) {
    if (e.key.size() < 4 || e.key[1] != '[' || e.key.back() != ']') continue;
    char kind = e.key[0];
    if (kind != 'X' && kind != 'D' && kind != 'E') continue;
    std::string inner = e.key.substr(2, e.key.size() - 3);
    CoefMat m = matrix_at(F, e.value, dim, file, e.line, e.col);
    if (kind == 'X' || kind == 'D') {
      int vi = alg->ring->var_index(inner);
      if (vi < 0) fail(file, e.line, e.col, "unknown generator '" + inner + "'");
      auto& dst = kind == 'X' ? X : D;
      auto& seen = kind == 'X' ? seenX : seenD;
      if (seen[static_cast<size_t>(vi)])
        fail(file, e.line, e.col, e.key + " declared twice");
      seen[static_cast<size_t>(vi)] = true;
      dst[static_cast<size_t>(vi)] = std::move(m);
    } else {
      if (!order)
        fail(file, e.line, e.col,
             "E lines only make sense for modules over a poisson_order");
      int ei = -1;
      for (int k = 0; k < rank; ++k)
        if (order->basis[static_cast<size_t>(k)] == inner) ei = k;
      if (ei < 0) fail(file, e.line, e.col, "unknown basis element '" + inner + "'");
      if (seenE[static_cast<size_t>(ei)])
        fail(file, e.line, e.col, e.key + " declared twice");
      seenE[static_cast<size_t>(ei)] = true;
      E[static_cast<size_t>(ei)] = std::move(m);
    }
  }
  for (int i = 0; i < nv; ++i) {
    const std::string& vn = alg->ring->vars[static_cast<size_t>(i)];
    if (!seenX[static_cast<size_t>(i)])
      fail(file, b.line, b.col, "missing matrix X[" + vn + "]");
    if (!seenD[static_cast<size_t>(i)])
      fail(file, b.line, b.col, "missing matrix D[" + vn + "]");
  }

  PoissonModule m;
  if (order) {
    for (int k = 0; k < rank; ++k)
      if (!seenE[static_cast<size_t>(k)])
        fail(file, b.line, b.col,
             "missing matrix E[" + order->basis[static_cast<size_t>(k)] + "]");
    m = PoissonModule{dim, std::move(X), std::move(D), std::move(E)};
  } else {
    m = make_module(F, dim, std::move(X), std::move(D));
  }

  bool allow = false;
  if (const Entry* a = b.find("allow_invalid"))
    allow = bool_at(a->value, file, a->line, a->col);
  ModuleReport rep;
  try {
    rep = order ? module_check(m, *order) : module_check(m, *alg);
  } catch (const input_error& err) {
    fail(file, b.line, b.col, err.what());
  }
  if (!allow && !rep.ok())
    fail(file, b.line, b.col, "module check failed: " + rep.violations.front());

  doc.modules.emplace(b.name, std::move(m));
  doc.module_over.emplace(b.name, over->value);
  doc.decls.emplace_back(DeclKind::module, b.name);
}

void load_qspace(SessionDocument& doc, const Block& b, const std::string& file) {
  check_keys(b, {"n"}, file);
  const Entry* n = b.find("n");
  if (!n) fail(file, b.line, b.col, "quantum_space needs an 'n' line");
  try {
    doc.qspaces.emplace(
        b.name, quantum_affine_space(
                    static_cast<int>(int_at(n->value, file, n->line, n->col))));
  } catch (const input_error& err) {
    fail(file, n->line, n->col, err.what());
  }
  doc.decls.emplace_back(DeclKind::qspace, b.name);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string vecpoly_str(const VecPoly& v) {
  std::vector<std::string> parts;
  parts.reserve(v.size());
  for (const auto& p : v) parts.push_back(p.str());
  return join(parts, " | ");
}

std::string matrix_str(const CoefMat& m) {
  std::vector<std::string> rows;
  rows.reserve(m.size());
  for (const auto& row : m) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const auto& c : row) {
      if (c.c.size() != 1)
        throw internal_error("module matrices should hold rational entries");
      cells.push_back(rational_str(c.c[0]));
    }
    rows.push_back(join(cells, ", "));
  }
  return join(rows, " ; ");
}

} // namespace

bool SessionDocument::has(const std::string& name) const {
  return algebras.count(name) || ideals.count(name) || orders.count(name) ||
         modules.count(name) || qspaces.count(name);
}

SessionDocument parse_session(const std::string& text, const std::string& filename) {
  SessionDocument doc;
  for (const Block& b : lex_blocks(text, filename)) {
    if (doc.has(b.name))
      fail(filename, b.line, b.col, "name '" + b.name + "' already declared");
    if (b.kind == "poisson_algebra") load_algebra(doc, b, filename);
    else if (b.kind == "ideal") load_ideal(doc, b, filename);
    else if (b.kind == "poisson_order") load_order(doc, b, filename);
    else if (b.kind == "module") load_module(doc, b, filename);
    else if (b.kind == "quantum_space") load_qspace(doc, b, filename);
    else
      fail(filename, b.line, b.col, "unknown declaration kind '" + b.kind + "'");
  }
  return doc;
}

SessionDocument parse_session_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_session(buf.str(), path);
}

std::string serialize_algebra(const std::string& name, const PoissonAlgebra& p) {
  std::ostringstream out;
  out << "poisson_algebra " << name << " {\n";
  out << "  vars: " << join(p.ring->vars, " ") << "\n";
  const Field& F = p.ring->field;
  out << "  field: " << (F.is_rationals() ? "Q" : "zeta " + std::to_string(F.ell()))
      << "\n";
  out << "  order: " << p.ring->order.to_string() << "\n";
  int n = p.nvars();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (p.table[static_cast<size_t>(i)][static_cast<size_t>(j)] == Poly::zero(p.ring))
        continue;
      out << "  bracket: {" << p.ring->vars[static_cast<size_t>(i)] << ", "
          << p.ring->vars[static_cast<size_t>(j)]
          << "} = " << p.table[static_cast<size_t>(i)][static_cast<size_t>(j)].str()
          << "\n";
    }
  if (!jacobi_check(p).ok()) out << "  allow_non_jacobi: true\n";
  out << "}\n";
  return out.str();
}

std::string serialize_session(const SessionDocument& doc) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [kind, name] : doc.decls) {
    if (!first) out << "\n";
    first = false;
    switch (kind) {
      case DeclKind::algebra:
        out << serialize_algebra(name, doc.algebras.at(name));
        break;
      case DeclKind::ideal: {
        const Ideal& I = doc.ideals.at(name);
        out << "ideal " << name << " {\n";
        out << "  over: " << doc.ideal_over.at(name) << "\n";
        std::vector<std::string> gens;
        gens.reserve(I.gens().size());
        for (const auto& g : I.gens()) gens.push_back(g.str());
        out << "  gens: " << join(gens, " ; ") << "\n";
        out << "}\n";
        break;
      }
      case DeclKind::order: {
        const PoissonOrder& A = doc.orders.at(name);
        out << "poisson_order " << name << " {\n";
        out << "  base: " << doc.order_base.at(name) << "\n";
        out << "  basis: " << join(A.basis, " ") << "\n";
        out << "  unit: " << vecpoly_str(A.unit) << "\n";
        for (int j = 0; j < A.rank; ++j)
          for (int k = 0; k < A.rank; ++k)
            out << "  mult: " << A.basis[static_cast<size_t>(j)] << "*"
                << A.basis[static_cast<size_t>(k)] << " = "
                << vecpoly_str(A.mult[static_cast<size_t>(j)][static_cast<size_t>(k)])
                << "\n";
        for (int i = 0; i < A.nvars(); ++i)
          for (int j = 0; j < A.rank; ++j) {
            const VecPoly& h = A.ham[static_cast<size_t>(i)][static_cast<size_t>(j)];
            bool nonzero = false;
            for (const auto& c : h)
              if (!(c == Poly::zero(A.ring()))) nonzero = true;
            if (!nonzero) continue;
            out << "  ham: d[" << A.ring()->vars[static_cast<size_t>(i)] << "]("
                << A.basis[static_cast<size_t>(j)] << ") = " << vecpoly_str(h) << "\n";
          }
        out << "}\n";
        break;
      }
      case DeclKind::module: {
        const PoissonModule& m = doc.modules.at(name);
        const std::string& over = doc.module_over.at(name);
        const PoissonOrder* order = nullptr;
        const PoissonAlgebra* alg = nullptr;
        if (auto it = doc.orders.find(over); it != doc.orders.end()) {
          order = &it->second;
          alg = &order->base;
        } else {
          alg = &doc.algebras.at(over);
        }
        out << "module " << name << " {\n";
        out << "  over: " << over << "\n";
        out << "  dim: " << m.dim << "\n";
        for (int i = 0; i < alg->nvars(); ++i)
          out << "  X[" << alg->ring->vars[static_cast<size_t>(i)]
              << "]: " << matrix_str(m.X[static_cast<size_t>(i)]) << "\n";
        for (int i = 0; i < alg->nvars(); ++i)
          out << "  D[" << alg->ring->vars[static_cast<size_t>(i)]
              << "]: " << matrix_str(m.D[static_cast<size_t>(i)]) << "\n";
        if (order)
          for (int j = 0; j < order->rank; ++j)
            out << "  E[" << order->basis[static_cast<size_t>(j)]
                << "]: " << matrix_str(m.E[static_cast<size_t>(j)]) << "\n";
        ModuleReport rep = order ? module_check(m, *order) : module_check(m, *alg);
        if (!rep.ok()) out << "  allow_invalid: true\n";
        out << "}\n";
        break;
      }
      case DeclKind::qspace:
        out << "quantum_space " << name << " {\n";
        out << "  n: " << doc.qspaces.at(name).n << "\n";
        out << "}\n";
        break;
    }
  }
  return out.str();
}

EnvElement parse_env_expr(const EnvParent& e, const std::string& text) {
  const PoissonOrder& A = *e;
  const Ring& r = A.ring();

  // split into signed terms at depth-0 + and -
  struct Term {
    std::string text;
    bool negative;
  };
  std::vector<Term> terms;
  std::string cur;
  bool neg = false;
  int depth = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth == 0 && (ch == '+' || ch == '-') && !trim(cur).empty()) {
      terms.push_back({trim(cur), neg});
      cur.clear();
      neg = ch == '-';
      continue;
    }
    if (depth == 0 && ch == '-' && trim(cur).empty()) {
      neg = !neg;
      continue;
    }
    if (depth == 0 && ch == '+' && trim(cur).empty()) continue;
    cur += ch;
  }
  if (depth != 0) throw input_error("unbalanced parentheses in envelope expression");
  if (!trim(cur).empty()) terms.push_back({trim(cur), neg});
  if (terms.empty()) throw input_error("empty envelope expression");

  EnvElement out = env_zero(e);
  for (const Term& t : terms) {
    // split into factors at depth-0 *
    std::vector<std::string> factors;
    std::string f;
    depth = 0;
    for (char ch : t.text) {
      if (ch == '(' || ch == '[') ++depth;
      if (ch == ')' || ch == ']') --depth;
      if (depth == 0 && ch == '*') {
        factors.push_back(trim(f));
        f.clear();
        continue;
      }
      f += ch;
    }
    factors.push_back(trim(f));

    EnvElement prod = env_one(e);
    for (const std::string& fac : factors) {
      if (fac.empty()) throw input_error("empty factor in envelope expression");
      EnvElement piece;
      if (fac.rfind("d[", 0) == 0 && fac.back() == ']') {
        std::string vn = trim(fac.substr(2, fac.size() - 3));
        int vi = r->var_index(vn);
        if (vi < 0) throw input_error("unknown generator '" + vn + "'");
        piece = env_delta(e, vi);
      } else {
        int bi = -1;
        for (int k = 0; k < A.rank; ++k)
          if (A.basis[static_cast<size_t>(k)] == fac) bi = k;
        if (bi >= 0) {
          piece = env_alpha(e, a_basis(A, bi));
        } else {
          std::string body = fac;
          if (body.front() == '(' && body.back() == ')')
            body = trim(body.substr(1, body.size() - 2));
          piece = env_alpha(e, parse_poly(r, body));
        }
      }
      prod = prod * piece;
    }
    if (t.negative) prod = prod.scaled(r->field.from_int(-1));
    out = out + prod;
  }
  return out;
}

} // namespace pomelo
