// pomelo: command-line driver over the library. Reads a session document,
// runs one command against the named objects, and prints a canonical result
// document (text or JSON) whose bytes depend only on the inputs. Timing goes
// to stderr so reruns stay byte-identical.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pomelo/errors.hpp"
#include "pomelo/poisson_ideals.hpp"
#include "pomelo/session.hpp"

using json = nlohmann::ordered_json;
using namespace pomelo;

namespace {

// command-line shape problems: unknown command, wrong arity, missing flags
struct usage_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::vector<std::string> args;
  std::string input, output, order = "degrevlex", format = "text", point;
  int degree_cap = 0;
  int round_cap = 64;
  int k = -1, d = -1, ell = 0, n = 0;
};

struct Outcome {
  json doc;
  bool ok = true;
};

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream out;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      for (const auto& [sub, v2] : value.items())
        out << key << "[" << sub << "]: " << scalar_text(v2) << "\n";
    } else if (value.is_array()) {
      for (const auto& item : value) out << key << ": " << scalar_text(item) << "\n";
    } else {
      std::string s = scalar_text(value);
      if (s.find('\n') != std::string::npos) {
        out << key << ":\n" << s;
        if (!s.empty() && s.back() != '\n') out << "\n";
      } else {
        out << key << ": " << s << "\n";
      }
    }
  }
  return out.str();
}

class Driver {
public:
  explicit Driver(const Options& o) : o_(o) {}

  Outcome run();

private:
  const Options& o_;
  std::optional<SessionDocument> session_;

  const SessionDocument& session() {
    if (!session_) {
      if (o_.input.empty())
        throw usage_failure("command '" + o_.command + "' needs --input <file>");
      session_ = parse_session_file(o_.input);
    }
    return *session_;
  }

  void need_args(size_t count, const std::string& shape) {
    if (o_.args.size() != count)
      throw usage_failure("usage: " + o_.command + " " + shape);
  }

  const PoissonAlgebra& algebra(const std::string& name) {
    const SessionDocument& doc = session();
    auto it = doc.algebras.find(name);
    if (it == doc.algebras.end())
      throw input_error("no poisson_algebra named '" + name + "' in the session");
    return it->second;
  }

  const Ideal& ideal(const std::string& name) {
    const SessionDocument& doc = session();
    auto it = doc.ideals.find(name);
    if (it == doc.ideals.end())
      throw input_error("no ideal named '" + name + "' in the session");
    return it->second;
  }

  const PoissonOrder& order(const std::string& name) {
    const SessionDocument& doc = session();
    auto it = doc.orders.find(name);
    if (it == doc.orders.end())
      throw input_error("no poisson_order named '" + name + "' in the session");
    return it->second;
  }

  const PoissonModule& module(const std::string& name) {
    const SessionDocument& doc = session();
    auto it = doc.modules.find(name);
    if (it == doc.modules.end())
      throw input_error("no module named '" + name + "' in the session");
    return it->second;
  }

  // algebras get their trivial rank-one order so envelope commands work on both
  EnvParent env_parent(const std::string& name) {
    const SessionDocument& doc = session();
    if (auto it = doc.orders.find(name); it != doc.orders.end())
      return make_envelope(it->second);
    if (auto it = doc.algebras.find(name); it != doc.algebras.end())
      return make_envelope(trivial_order(it->second));
    throw input_error("no poisson_order or poisson_algebra named '" + name +
                      "' in the session");
  }

  std::vector<Coef> point(const PoissonAlgebra& P) {
    if (o_.point.empty())
      throw usage_failure("command '" + o_.command + "' needs --point a,b,...");
    std::vector<Coef> out;
    std::string cur;
    std::istringstream in(o_.point);
    while (std::getline(in, cur, ',')) {
      try {
        out.push_back(P.ring->field.from_rational(parse_rational(cur)));
      } catch (const std::exception& err) {
        throw input_error("bad point coordinate '" + cur + "': " + err.what());
      }
    }
    if (static_cast<int>(out.size()) != P.nvars())
      throw input_error("point needs " + std::to_string(P.nvars()) +
                        " coordinates, got " + std::to_string(out.size()));
    return out;
  }

  QuantumAffineSpace qspace() {
    if (!o_.args.empty()) {
      const SessionDocument& doc = session();
      auto it = doc.qspaces.find(o_.args[0]);
      if (it == doc.qspaces.end())
        throw input_error("no quantum_space named '" + o_.args[0] +
                          "' in the session");
      return it->second;
    }
    if (o_.n <= 0)
      throw usage_failure("command '" + o_.command +
                          "' needs a quantum_space name or --n <count>");
    return quantum_affine_space(o_.n);
  }

  int ell() {
    if (o_.ell == 0)
      throw usage_failure("command '" + o_.command + "' needs --ell <root order>");
    return o_.ell;
  }

  std::string matrix_text(const CoefMat& m) {
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i) out += " ; ";
      for (size_t j = 0; j < m[i].size(); ++j) {
        if (j) out += ", ";
        out += rational_str(m[i][j].c[0]);
      }
    }
    return out;
  }

  void check_ideal_over(const std::string& iname, const std::string& aname) {
    if (session().ideal_over.at(iname) != aname)
      throw input_error("ideal '" + iname + "' is not declared over '" + aname + "'");
  }
};

Outcome Driver::run() {
  json doc;
  doc["command"] = o_.command;
  bool ok = true;
  const std::string& cmd = o_.command;

  if (cmd == "jacobi") {
    need_args(1, "<algebra>");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    JacobiReport rep = jacobi_check(P);
    doc["ok"] = rep.ok();
    json vs = json::array();
    for (const auto& v : rep.violations)
      vs.push_back("(" + P.ring->vars[static_cast<size_t>(v.i)] + ", " +
                   P.ring->vars[static_cast<size_t>(v.j)] + ", " +
                   P.ring->vars[static_cast<size_t>(v.k)] +
                   "): Jacobiator = " + v.defect.str());
    if (!vs.empty()) doc["violation"] = vs;
    ok = rep.ok();
  } else if (cmd == "bracket") {
    need_args(3, "<algebra> <poly> <poly>");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    Poly f = parse_poly(P.ring, o_.args[1]);
    Poly g = parse_poly(P.ring, o_.args[2]);
    doc["result"] = poisson_bracket(P, f, g).str();
  } else if (cmd == "hamiltonian") {
    need_args(2, "<algebra> <poly>");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    std::vector<Poly> comps = hamiltonian(P, parse_poly(P.ring, o_.args[1]));
    json obj = json::object();
    for (int i = 0; i < P.nvars(); ++i)
      obj[P.ring->vars[static_cast<size_t>(i)]] = comps[static_cast<size_t>(i)].str();
    doc["components"] = obj;
  } else if (cmd == "centre") {
    need_args(1, "<algebra>");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    int cap = o_.degree_cap > 0 ? o_.degree_cap : 2;
    doc["degree_cap"] = cap;
    json els = json::array();
    for (const Poly& z : poisson_centre(P, cap)) els.push_back(z.str());
    doc["element"] = els;
  } else if (cmd == "core") {
    if (o_.args.empty())
      throw usage_failure("usage: core <algebra> <ideal>  (or <algebra> --point a,b,...)");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    if (!o_.point.empty()) {
      need_args(1, "<algebra> --point a,b,...");
      doc["ideal"] = symplectic_core_ideal(point(P), P, o_.round_cap).str();
    } else {
      need_args(2, "<algebra> <ideal>  (or <algebra> --point a,b,...)");
      check_ideal_over(o_.args[1], o_.args[0]);
      doc["ideal"] = poisson_core(ideal(o_.args[1]), P, o_.round_cap).str();
    }
  } else if (cmd == "closure") {
    need_args(2, "<algebra> <ideal>");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    check_ideal_over(o_.args[1], o_.args[0]);
    doc["ideal"] = poisson_closure(ideal(o_.args[1]), P, o_.round_cap).str();
  } else if (cmd == "symplectic-core") {
    need_args(1, "<algebra> --point a,b,...");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    doc["ideal"] = symplectic_core_ideal(point(P), P, o_.round_cap).str();
  } else if (cmd == "leaf-rank") {
    need_args(1, "<algebra> --point a,b,...");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    doc["rank"] = leaf_rank(P, point(P));
  } else if (cmd == "localize") {
    need_args(4, "<algebra> <denominator> <poly> <poly>");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    LocalizedPoisson L = localize(P, parse_poly(P.ring, o_.args[1]));
    LocalElem a = L.embed(parse_poly(P.ring, o_.args[2]));
    LocalElem b = L.embed(parse_poly(P.ring, o_.args[3]));
    doc["denominator"] = L.denominator().str();
    doc["result"] = L.str(L.bracket(a, b));
  } else if (cmd == "order-verify") {
    need_args(1, "<order>");
    const PoissonOrder& A = order(o_.args[0]);
    doc["ok"] = true;   // validated on load
    doc["base"] = session().order_base.at(o_.args[0]);
    doc["rank"] = A.rank;
    std::string basis;
    for (size_t i = 0; i < A.basis.size(); ++i)
      basis += (i ? " " : "") + A.basis[i];
    doc["basis"] = basis;
  } else if (cmd == "order-core") {
    need_args(2, "<order> <ideal>");
    const PoissonOrder& A = order(o_.args[0]);
    check_ideal_over(o_.args[1], session().order_base.at(o_.args[0]));
    const Ideal& I = ideal(o_.args[1]);
    std::vector<VecPoly> rows;
    rows.reserve(I.gens().size());
    for (const Poly& g : I.gens()) rows.push_back(a_scalar(A, g));
    OrderIdeal core = order_poisson_core(order_ideal_closure(A, rows), o_.round_cap);
    doc["contracted"] = contract_to_base(core).str();
    doc["stable"] = order_ideal_is_stable(core);
  } else if (cmd == "env-mul") {
    need_args(3, "<order-or-algebra> <expr> <expr>");
    EnvParent e = env_parent(o_.args[0]);
    EnvElement u = parse_env_expr(e, o_.args[1]);
    EnvElement v = parse_env_expr(e, o_.args[2]);
    doc["result"] = (u * v).str();
  } else if (cmd == "pbw-check") {
    need_args(1, "<order-or-algebra> --k <delta degree> --d <poly degree>");
    if (o_.k < 0 || o_.d < 0)
      throw usage_failure("pbw-check needs --k and --d (both >= 0)");
    PbwReport rep = pbw_dimension_check(env_parent(o_.args[0]), o_.k, o_.d);
    doc["predicted"] = rep.predicted;
    doc["actual"] = rep.actual;
    doc["ok"] = rep.ok;
    ok = rep.ok;
  } else if (cmd == "overlap-check") {
    need_args(1, "<order-or-algebra>");
    OverlapReport rep = diamond_overlap_check(env_parent(o_.args[0]));
    doc["ok"] = rep.ok();
    if (!rep.unresolved.empty()) doc["unresolved"] = rep.unresolved;
    ok = rep.ok();
  } else if (cmd == "ugd-compare") {
    need_args(1, "<algebra>");
    const PoissonAlgebra& P = algebra(o_.args[0]);
    int n = P.nvars();
    const Field& F = P.ring->field;
    std::vector<std::vector<std::vector<Coef>>> c(
        static_cast<size_t>(n),
        std::vector<std::vector<Coef>>(static_cast<size_t>(n),
                                       std::vector<Coef>(static_cast<size_t>(n),
                                                         F.zero())));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (const auto& [e, co] :
             P.table[static_cast<size_t>(i)][static_cast<size_t>(j)].terms()) {
          int deg = 0, var = -1;
          for (int t = 0; t < n; ++t) {
            deg += e[static_cast<size_t>(t)];
            if (e[static_cast<size_t>(t)] > 0) var = t;
          }
          if (deg != 1)
            throw input_error("ugd-compare needs a linear bracket table");
          c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(var)] =
              co;
          c[static_cast<size_t>(j)][static_cast<size_t>(i)][static_cast<size_t>(var)] =
              F.neg(co);
        }
    UgdReport rep = ugd_compare(P.ring, c);
    doc["ok"] = rep.ok();
    if (!rep.mismatches.empty()) doc["mismatch"] = rep.mismatches;
    ok = rep.ok();
  } else if (cmd == "module-check") {
    need_args(1, "<module>");
    const PoissonModule& m = module(o_.args[0]);
    const std::string& over = session().module_over.at(o_.args[0]);
    ModuleReport rep;
    if (auto it = session().orders.find(over); it != session().orders.end())
      rep = module_check(m, it->second);
    else
      rep = module_check(m, session().algebras.at(over));
    doc["ok"] = rep.ok();
    if (!rep.violations.empty()) doc["violation"] = rep.violations;
    ok = rep.ok();
  } else if (cmd == "annihilator" || cmd == "torsion") {
    need_args(1, "<module>");
    const PoissonModule& m = module(o_.args[0]);
    const std::string& over = session().module_over.at(o_.args[0]);
    Ring r;
    if (auto it = session().orders.find(over); it != session().orders.end())
      r = it->second.ring();
    else
      r = session().algebras.at(over).ring;
    if (cmd == "annihilator") {
      AnnihilatorReport rep = module_annihilator_Z(r, m, o_.degree_cap);
      doc["ideal"] = rep.ideal.str();
      doc["complete"] = rep.complete;
    } else {
      TorsionReport rep = torsion_ideal(r, m, o_.degree_cap);
      doc["ideal"] = rep.ideal.str();
      std::string w;
      for (size_t i = 0; i < rep.witness.size(); ++i)
        w += (i ? ", " : "") + rational_str(rep.witness[i].c[0]);
      doc["witness"] = w;
      doc["complete"] = rep.complete;
    }
  } else if (cmd == "ivideal-check") {
    need_args(1, "<module>");
    const PoissonModule& m = module(o_.args[0]);
    const std::string& over = session().module_over.at(o_.args[0]);
    auto it = session().algebras.find(over);
    if (it == session().algebras.end())
      throw input_error("ivideal-check needs a module over a poisson_algebra");
    bool pass = ividealiii_check(m, it->second);
    doc["ok"] = pass;
    ok = pass;
  } else if (cmd == "induce") {
    need_args(2, "<order> <module>");
    const PoissonOrder& A = order(o_.args[0]);
    const PoissonModule& m = module(o_.args[1]);
    if (session().module_over.at(o_.args[1]) != session().order_base.at(o_.args[0]))
      throw input_error("module '" + o_.args[1] + "' is not over the base of '" +
                        o_.args[0] + "'");
    PoissonModule ind = induced_module(A, m);
    doc["dim"] = ind.dim;
    json X = json::object(), D = json::object(), E = json::object();
    for (int i = 0; i < A.nvars(); ++i) {
      X[A.ring()->vars[static_cast<size_t>(i)]] =
          matrix_text(ind.X[static_cast<size_t>(i)]);
      D[A.ring()->vars[static_cast<size_t>(i)]] =
          matrix_text(ind.D[static_cast<size_t>(i)]);
    }
    for (int j = 0; j < A.rank; ++j)
      E[A.basis[static_cast<size_t>(j)]] = matrix_text(ind.E[static_cast<size_t>(j)]);
    doc["X"] = X;
    doc["D"] = D;
    doc["E"] = E;
    bool pass = module_check(ind, A).ok();
    doc["ok"] = pass;
    ok = pass;
  } else if (cmd == "q-specialize") {
    if (o_.args.size() > 1)
      throw usage_failure("usage: q-specialize [<quantum_space>] --ell <root order>");
    QuantumAffineSpace Q = qspace();
    PoissonAlgebra P = ell_centre_bracket(Q, ell());
    if (o_.order != "degrevlex") {
      // rebuild on the requested monomial order
      MonomialOrder ord = MonomialOrder::parse(o_.order);
      Ring r2 = make_ring(P.ring->vars, P.ring->field, ord);
      std::vector<std::tuple<int, int, Poly>> entries;
      for (int i = 0; i < P.nvars(); ++i)
        for (int j = i + 1; j < P.nvars(); ++j) {
          Poly p = Poly::zero(r2);
          for (const auto& [e, co] :
               P.table[static_cast<size_t>(i)][static_cast<size_t>(j)].terms())
            p = p + Poly::monomial(r2, e, co);
          entries.emplace_back(i, j, p);
        }
      P = make_poisson(r2, entries);
    }
    std::string vars;
    for (size_t i = 0; i < P.ring->vars.size(); ++i)
      vars += (i ? " " : "") + P.ring->vars[i];
    doc["vars"] = vars;
    doc["field"] = "zeta " + std::to_string(P.ring->field.ell());
    json brackets = json::object();
    for (int i = 0; i < P.nvars(); ++i)
      for (int j = i + 1; j < P.nvars(); ++j)
        brackets["{" + P.ring->vars[static_cast<size_t>(i)] + ", " +
                 P.ring->vars[static_cast<size_t>(j)] + "}"] =
            P.table[static_cast<size_t>(i)][static_cast<size_t>(j)].str();
    doc["bracket"] = brackets;
    bool jac = jacobi_check(P).ok();
    doc["jacobi"] = jac;
    doc["declaration"] = serialize_algebra("ell_centre", P);
    ok = jac;
  } else if (cmd == "centrality") {
    if (o_.args.size() > 1)
      throw usage_failure("usage: centrality [<quantum_space>] --ell <root order>");
    QuantumAffineSpace Q = qspace();
    bool central = centrality_check(Q, ell());
    doc["central"] = central;
    ok = central;
  } else {
    throw usage_failure("unknown command '" + cmd + "'");
  }

  return {std::move(doc), ok};
}

void emit(const std::string& text, const Options& o) {
  std::cout << text;
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) {
      std::cerr << "cannot write '" << o.output << "'\n";
      return;
    }
    out << text;
  }
}

int fail_with(const Options& o, const std::string& code, const std::string& msg,
              int exit_code) {
  json doc;
  if (!o.command.empty()) doc["command"] = o.command;
  doc["error"] = code;
  doc["message"] = msg;
  emit(render(doc, o.format), o);
  return exit_code;
}

} // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Poisson algebras, Poisson orders, enveloping algebras, and "
               "semiclassical limits"};
  app.add_option("command", o.command,
                 "jacobi | bracket | hamiltonian | centre | core | closure | "
                 "symplectic-core | leaf-rank | localize | order-verify | "
                 "order-core | env-mul | pbw-check | overlap-check | "
                 "ugd-compare | module-check | annihilator | torsion | "
                 "ivideal-check | induce | q-specialize | centrality")
      ->required();
  app.add_option("args", o.args, "object names and command arguments");
  app.add_option("--input", o.input, "session document to load");
  app.add_option("--output", o.output, "write the result document here as well");
  app.add_option("--order", o.order, "monomial order for rings built by commands");
  app.add_option("--degree-cap", o.degree_cap,
                 "degree bound for centre / annihilator / torsion");
  app.add_option("--round-cap", o.round_cap, "iteration cap for core computations");
  app.add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--point", o.point, "comma-separated coordinates");
  app.add_option("--k", o.k, "delta-degree bound for pbw-check");
  app.add_option("--d", o.d, "polynomial-degree bound for pbw-check");
  app.add_option("--ell", o.ell, "root-of-unity order for semiclassical commands");
  app.add_option("--n", o.n, "generator count for semiclassical commands");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail_with(o, "usage", e.what(), 2);
  }

  auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    Outcome res = Driver(o).run();
    emit(render(res.doc, o.format), o);
    code = res.ok ? 0 : 1;
  } catch (const usage_failure& e) {
    code = fail_with(o, "usage", e.what(), 2);
  } catch (const input_error& e) {
    code = fail_with(o, "validation", e.what(), 1);
  } catch (const internal_error& e) {
    code = fail_with(o, "internal", e.what(), 3);
  } catch (const std::exception& e) {
    code = fail_with(o, "internal", e.what(), 3);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cerr << "elapsed_ms: " << ms << "\n";
  return code;
}
