#include "doctest.h"

#include <string>

#include "pomelo/errors.hpp"
#include "pomelo/poisson_ideals.hpp"
#include "pomelo/session.hpp"
#include "support.hpp"

using namespace pomelo;
using namespace testsup;

TEST_SUITE_BEGIN("session");

namespace {

const char* kFullDoc = R"(# exercise every declaration kind
poisson_algebra heis {
  vars: x y z
  bracket: {x, y} = z
}

ideal level {
  over: heis
  gens: z - 2 ; x
}

poisson_order dual {
  base: heis
  basis: u eps
  unit: 1 | 0
  mult: u*u = 1 | 0
  mult: u*eps = 0 | 1
  mult: eps*u = 0 | 1
  mult: eps*eps = 0 | 0
  ham: d[x](eps) = 0 | y
}

module pt {
  over: heis
  dim: 1
  X[x]: 1
  X[y]: 2
  X[z]: 0
  D[x]: 5
  D[y]: 7
  D[z]: 0
}

module pt_dual {
  over: dual
  dim: 1
  X[x]: 1
  X[y]: 2
  X[z]: 0
  D[x]: 5
  D[y]: 7
  D[z]: 0
  E[u]: 1
  E[eps]: 0
}

quantum_space qp {
  n: 2
}
)";

} // namespace

TEST_CASE("a full document loads and cross-references resolve") {
  SessionDocument doc = parse_session(kFullDoc, "demo");
  CHECK(doc.decls.size() == 6);
  CHECK(doc.algebras.count("heis") == 1);
  CHECK(doc.ideals.count("level") == 1);
  CHECK(doc.orders.count("dual") == 1);
  CHECK(doc.modules.count("pt") == 1);
  CHECK(doc.modules.count("pt_dual") == 1);
  CHECK(doc.qspaces.at("qp").n == 2);

  const PoissonAlgebra& P = doc.algebras.at("heis");
  CHECK(P.table[0][1] == pp(P.ring, "z"));
  CHECK(P.table[1][0] == pp(P.ring, "-z"));
  CHECK(doc.ideals.at("level").ring() == P.ring);
  CHECK(doc.ideal_over.at("level") == "heis");
  CHECK(doc.orders.at("dual").rank == 2);
  CHECK(doc.order_base.at("dual") == "heis");
  CHECK(doc.module_over.at("pt_dual") == "dual");
  CHECK(doc.modules.at("pt").E.size() == 1);   // rank-one identity
  CHECK(doc.modules.at("pt_dual").E.size() == 2);
}

TEST_CASE("diagnostics carry file, line, and column") {
  auto message = [](const std::string& text) {
    try {
      parse_session(text, "demo");
      return std::string("no error");
    } catch (const input_error& e) {
      return std::string(e.what());
    }
  };

  CHECK(message("poisson_algebra a {\n"
                "  vars: x y\n"
                "  bracket: {x, y} = x\n"
                "  bracket: {y, x} = x\n"
                "}\n") ==
        "demo:4:3: antisymmetry violated: {x, y} must be the negative of {y, x}");

  CHECK(message("ideal j {\n  over: nope\n  gens: 1\n}\n") ==
        "demo:2:3: reference to undeclared poisson_algebra 'nope'");

  CHECK(message("poisson_algebra b {\n"
                "  vars: x1 x2 x3\n"
                "  bracket: {x1, x2} = x2\n"
                "  bracket: {x2, x3} = x1\n"
                "}\n") ==
        "demo:1:1: the bracket fails the Jacobi identity on (x1, x2, x3); "
        "Jacobiator = -x1");

  CHECK(message("poisson_algebra c {\n  vars: x\n  colour: green\n}\n") ==
        "demo:3:3: unknown key 'colour' in a poisson_algebra block");

  CHECK(message("poisson_algebra d {\n  vars: x\n") ==
        "demo:1:1: unterminated block 'd'");

  CHECK(message("thing t {\n  n: 1\n}\n") ==
        "demo:1:1: unknown declaration kind 'thing'");

  CHECK(message("quantum_space q {\n  n: 2\n}\nquantum_space q {\n  n: 3\n}\n") ==
        "demo:4:1: name 'q' already declared");

  CHECK(message("poisson_algebra e {\n  vars: x y\n  bracket: {x, x} = y\n}\n") ==
        "demo:3:3: bracket {x, x} must vanish");

  CHECK(message("quantum_space q {\n  n: 0\n}\n") ==
        "demo:2:3: quantum affine space needs at least one generator");

  // redundant but consistent mirror declarations are fine
  SessionDocument ok = parse_session(
      "poisson_algebra a {\n"
      "  vars: x y\n"
      "  bracket: {x, y} = y\n"
      "  bracket: {y, x} = -y\n"
      "}\n",
      "demo");
  CHECK(ok.algebras.at("a").table[0][1] == pp(ok.algebras.at("a").ring, "y"));

  std::string mod = "poisson_algebra a {\n  vars: x\n}\nmodule m {\n  over: a\n"
                    "  dim: 1\n  X[x]: 1\n}\n";
  CHECK(message(mod) == "demo:4:1: missing matrix D[x]");

  // a module that breaks the laws is rejected unless allow_invalid is set
  std::string bad =
      "poisson_algebra a {\n  vars: x y\n}\nmodule m {\n  over: a\n  dim: 2\n"
      "  X[x]: 0, 1 ; 0, 0\n  X[y]: 0, 0 ; 1, 0\n"
      "  D[x]: 0, 0 ; 0, 0\n  D[y]: 0, 0 ; 0, 0\n}\n";
  CHECK(message(bad) ==
        "demo:4:1: module check failed: base actions do not commute at (x, y)");
  SessionDocument tolerated = parse_session(
      bad.substr(0, bad.size() - 2) + "  allow_invalid: true\n}\n", "demo");
  CHECK(module_check(tolerated.modules.at("m"), tolerated.algebras.at("a"))
            .violations.size() > 0);
}

TEST_CASE("serialization is idempotent after one normalization pass") {
  SessionDocument doc = parse_session(kFullDoc, "demo");
  std::string once = serialize_session(doc);
  SessionDocument again = parse_session(once, "normalized");
  CHECK(serialize_session(again) == once);

  // shorthands expand on the first pass and stay put afterwards
  SessionDocument mats = parse_session(
      "poisson_algebra sl2 {\n"
      "  vars: e h f\n"
      "  bracket: {e, h} = -2*e\n"
      "  bracket: {e, f} = h\n"
      "  bracket: {h, f} = -2*f\n"
      "}\n"
      "poisson_order m2 {\n  base: sl2\n  matrix: 2\n}\n"
      "poisson_order triv {\n  base: sl2\n  trivial: true\n}\n",
      "demo");
  std::string expanded = serialize_session(mats);
  CHECK(expanded.find("mult: E11*E12 = 0 | 1 | 0 | 0") != std::string::npos);
  CHECK(serialize_session(parse_session(expanded, "x")) == expanded);

  // every shipped session file normalizes once and then stays fixed
  for (const char* name :
       {"sl2.pom", "heisenberg.pom", "solvable.pom", "quantum.pom", "broken.pom"}) {
    std::string path = std::string(POMELO_SOURCE_DIR) + "/data/" + name;
    SessionDocument d = parse_session_file(path);
    std::string s1 = serialize_session(d);
    CHECK(serialize_session(parse_session(s1, name)) == s1);
  }

  // non-Jacobi tables keep their flag through the round trip
  SessionDocument broken = parse_session(
      "poisson_algebra b {\n"
      "  vars: x1 x2 x3\n"
      "  bracket: {x1, x2} = x2\n"
      "  bracket: {x2, x3} = x1\n"
      "  allow_non_jacobi: true\n"
      "}\n",
      "demo");
  std::string btext = serialize_session(broken);
  CHECK(btext.find("allow_non_jacobi: true") != std::string::npos);
  CHECK(serialize_session(parse_session(btext, "x")) == btext);
}

TEST_CASE("envelope expressions parse against the declared order") {
  SessionDocument doc = parse_session(kFullDoc, "demo");
  EnvParent e = make_envelope(doc.orders.at("dual"));
  const Ring& r = e->ring();

  CHECK(parse_env_expr(e, "d[x]") == env_delta(e, 0));
  CHECK(parse_env_expr(e, "eps") == env_alpha(e, a_basis(*e, 1)));
  CHECK(parse_env_expr(e, "x^2 - 2") == env_alpha(e, pp(r, "x^2 - 2")));
  CHECK(parse_env_expr(e, "(x - 2)*d[z] + 3") ==
        env_alpha(e, pp(r, "x - 2")) * env_delta(e, 2) +
            env_alpha(e, pp(r, "3")));
  CHECK(parse_env_expr(e, "-d[y]") == env_delta(e, 1).scaled(r->field.from_int(-1)));
  CHECK(parse_env_expr(e, "d[y]*d[x]") == env_delta(e, 1) * env_delta(e, 0));

  CHECK_THROWS_AS(parse_env_expr(e, "d[w]"), input_error);
  CHECK_THROWS_WITH_AS(parse_env_expr(e, "(x + 1"),
                       "unbalanced parentheses in envelope expression", input_error);
  CHECK_THROWS_WITH_AS(parse_env_expr(e, ""), "empty envelope expression",
                       input_error);

  // envelope over a bare algebra through its trivial order
  EnvParent t = make_envelope(trivial_order(doc.algebras.at("heis")));
  EnvElement prod = parse_env_expr(t, "d[y]*d[x]");
  CHECK(prod == env_delta(t, 0) * env_delta(t, 1) -
                    env_delta(t, 2));   // d[y]d[x] = d[x]d[y] - d[z]
}

TEST_SUITE_END();
