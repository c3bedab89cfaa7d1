#include "doctest.h"

#include <random>

#include "pomelo/envelope.hpp"
#include "pomelo/matrix.hpp"
#include "pomelo/poisson_ideals.hpp"
#include "fixtures.hpp"

using namespace pomelo;
using namespace testsup;

TEST_SUITE_BEGIN("envelope");

namespace {

PoissonAlgebra trivial2() {
  Ring R = qring("x y");
  return make_poisson(R, std::vector<std::tuple<int, int, Poly>>{});
}

// dual numbers over the Heisenberg base: basis {u, eps}, eps^2 = 0. The
// derivations act by {x, eps} = h*eps for a chosen h; h = y makes the
// Hamiltonian action a Lie map ([H_x, H_y](eps) = -{y,y}eps = 0 = H_z(eps)),
// h = x does not ([H_x, H_y](eps) = z*eps while H_z(eps) = 0).
PoissonOrder dual_numbers(const char* h = "y") {
  PoissonAlgebra P = heisenberg();
  Ring R = P.ring;
  Poly z = Poly::zero(R), one = Poly::constant(R, 1);
  std::vector<std::vector<VecPoly>> mult{{{one, z}, {z, one}},
                                         {{z, one}, {z, z}}};
  std::vector<std::vector<VecPoly>> ham{
      {{z, z}, {z, pp(R, h)}}, {{z, z}, {z, z}}, {{z, z}, {z, z}}};
  return make_order(P, mult, {one, z}, ham, {"u", "eps"});
}

EnvElement random_env(const EnvParent& e, int nterms, int xdeg, int ddeg,
                      std::mt19937& rng) {
  const PoissonOrder& a = *e;
  const Field& F = a.ring()->field;
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> pos(0, a.rank - 1);
  auto exps = [&](int cap) {
    Expvec out(a.nvars(), 0);
    std::uniform_int_distribution<int> d(0, cap);
    int budget = d(rng);
    for (int i = 0; i < a.nvars() && budget > 0; ++i) {
      std::uniform_int_distribution<int> pick(0, budget);
      out[i] = pick(rng);
      budget -= out[i];
    }
    return out;
  };
  EnvElement out(e);
  for (int t = 0; t < nterms; ++t) {
    int c = coef(rng);
    if (c == 0) continue;
    out.add_term({pos(rng), exps(xdeg), exps(ddeg)}, F.from_int(c));
  }
  return out;
}

CoefMat qmat(const Field& F, const std::vector<std::vector<long>>& rows) {
  CoefMat out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (long v : r) out.back().push_back(F.from_int(v));
  }
  return out;
}

} // namespace

TEST_CASE("construction, printing, and the derivation of polynomials") {
  PoissonAlgebra P = solvable2();
  Ring R = P.ring;
  const Field& F = R->field;
  EnvParent E = make_envelope(trivial_order(P));

  CHECK(env_zero(E).is_zero());
  CHECK(env_zero(E).str() == "0");
  CHECK(env_one(E).str() == "e1");
  CHECK(env_delta(E, 0).str() == "e1*d[x]");
  CHECK(env_delta(E, 1).delta_degree() == 1);
  CHECK(env_one(E).delta_degree() == 0);
  CHECK(env_zero(E).delta_degree() == -1);

  // d(x^2 y) = 2xy d[x] + x^2 d[y]
  EnvElement d = delta_of(E, pp(R, "x^2*y"));
  EnvElement want = env_alpha(E, pp(R, "2*x*y")) * env_delta(E, 0) +
                    env_alpha(E, pp(R, "x^2")) * env_delta(E, 1);
  CHECK(d == want);
  CHECK(d.str() == "e1*(x^2)*d[y] + e1*(2*x*y)*d[x]");

  CHECK(delta_of(E, Poly::constant(R, 7)).is_zero());
  CHECK(delta_of(E, pp(R, "x")) == env_delta(E, 0));

  std::mt19937 rng(71);
  for (int round = 0; round < 6; ++round) {
    Poly p = random_poly(R, 3, 3, rng);
    Poly q = random_poly(R, 3, 3, rng);
    // d(pq) = alpha(p) d(q) + alpha(q) d(p)
    CHECK(delta_of(E, p * q) ==
          env_alpha(E, p) * delta_of(E, q) + env_alpha(E, q) * delta_of(E, p));
    CHECK(delta_of(E, p + q) == delta_of(E, p) + delta_of(E, q));
  }

  // alpha is an algebra map
  CHECK(env_alpha(E, pp(R, "x")) * env_alpha(E, pp(R, "y + 1")) ==
        env_alpha(E, pp(R, "x*y + x")));
  CHECK(env_one(E) * env_delta(E, 1) == env_delta(E, 1));
  CHECK(env_delta(E, 1) * env_one(E) == env_delta(E, 1));

  // scaling and subtraction
  EnvElement u = random_env(E, 4, 2, 2, rng);
  CHECK(u - u == env_zero(E));
  CHECK(u.scaled(F.from_int(-1)) == -u);
  CHECK((u + u) == u.scaled(F.from_int(2)));

  // mismatched parents are rejected
  EnvParent E2 = make_envelope(trivial_order(heisenberg()));
  CHECK_THROWS_AS(env_delta(E, 0) * env_delta(E2, 0), input_error);
  CHECK_THROWS_AS(env_delta(E, 0) + env_delta(E2, 0), input_error);
  // structurally equal parents from different pointers are accepted
  EnvParent E3 = make_envelope(trivial_order(solvable2()));
  CHECK(env_delta(E, 0) * env_delta(E3, 1) == env_delta(E, 0) * env_delta(E, 1));
}

TEST_CASE("the defining relations hold in normal form") {
  PoissonAlgebra H = heisenberg();
  Ring R = H.ring;
  EnvParent E = make_envelope(trivial_order(H));

  // d[x] * y = y d[x] + {x,y} = y d[x] + z
  CHECK(env_delta(E, 0) * env_alpha(E, pp(R, "y")) ==
        env_alpha(E, pp(R, "y")) * env_delta(E, 0) + env_alpha(E, pp(R, "z")));
  // z is central: d[z] commutes with everything linear
  CHECK(env_delta(E, 2) * env_alpha(E, pp(R, "x")) ==
        env_alpha(E, pp(R, "x")) * env_delta(E, 2));
  // d[y] * d[x] = d[x] d[y] + d({y,x}) = d[x] d[y] - d[z]
  CHECK(env_delta(E, 1) * env_delta(E, 0) ==
        env_delta(E, 0) * env_delta(E, 1) - env_delta(E, 2));

  PoissonAlgebra S = sl2_star();
  Ring Rs = S.ring;
  EnvParent Es = make_envelope(trivial_order(S));
  const Field& F = Rs->field;

  // [d(e), d(h)] = d({e,h}) = -2 d(e)
  EnvElement de = env_delta(Es, 0), dh = env_delta(Es, 1);
  CHECK(de * dh - dh * de == de.scaled(F.from_int(-2)));
  CHECK(de * dh - dh * de == delta_of(Es, pp(Rs, "-2*e")));

  // commutators with alpha realize the bracket
  std::mt19937 rng(72);
  for (const auto& P : {sl2_star(), heisenberg(), solvable2()}) {
    EnvParent Ep = make_envelope(trivial_order(P));
    for (int round = 0; round < 8; ++round) {
      Poly p = random_poly(P.ring, 3, 3, rng);
      for (int i = 0; i < P.nvars(); ++i) {
        EnvElement di = env_delta(Ep, i), ap = env_alpha(Ep, p);
        CHECK(di * ap - ap * di ==
              env_alpha(Ep, poisson_bracket(P, Poly::variable(P.ring, i), p)));
      }
    }
  }

  // same fidelity over a genuine order: ham_action replaces the bracket
  PoissonOrder D = dual_numbers();
  EnvParent Ed = make_envelope(D);
  std::uniform_int_distribution<int> which(0, D.rank - 1);
  for (int round = 0; round < 8; ++round) {
    VecPoly a = a_zero(D);
    a[which(rng)] = random_poly(D.ring(), 2, 2, rng);
    for (int i = 0; i < D.nvars(); ++i) {
      EnvElement di = env_delta(Ed, i), aa = env_alpha(Ed, a);
      CHECK(di * aa - aa * di == env_alpha(Ed, ham_action(D, i, a)));
    }
  }

  // liehom on generator pairs, across parents
  for (const auto& P : {sl2_star(), heisenberg(), solvable2()}) {
    EnvParent Ep = make_envelope(trivial_order(P));
    for (int i = 0; i < P.nvars(); ++i)
      for (int j = 0; j < P.nvars(); ++j) {
        EnvElement di = env_delta(Ep, i), dj = env_delta(Ep, j);
        CHECK(di * dj - dj * di == delta_of(Ep, P.table[i][j]));
      }
  }
}

TEST_CASE("products associate and filter correctly") {
  std::mt19937 rng(73);
  std::vector<EnvParent> parents;
  parents.push_back(make_envelope(trivial_order(trivial2())));
  parents.push_back(make_envelope(trivial_order(heisenberg())));
  parents.push_back(make_envelope(trivial_order(sl2_star())));
  parents.push_back(make_envelope(matrix_order(solvable2(), 2)));
  parents.push_back(make_envelope(dual_numbers()));

  for (const auto& E : parents) {
    for (int round = 0; round < 6; ++round) {
      EnvElement u = random_env(E, 2, 2, 2, rng);
      EnvElement v = random_env(E, 2, 2, 2, rng);
      EnvElement w = random_env(E, 2, 2, 2, rng);
      CHECK((u * v) * w == u * (v * w));
      // distributivity
      CHECK(u * (v + w) == u * v + u * w);
    }
    // filtration: delta degrees are submultiplicative, and the top slice
    // is the commutative product of the top slices
    const PoissonOrder& A = *E;
    const Field& F = A.ring()->field;
    for (int round = 0; round < 8; ++round) {
      std::uniform_int_distribution<int> pos(0, A.rank - 1);
      std::uniform_int_distribution<int> var(0, A.nvars() - 1);
      Expvec xa(A.nvars(), 0), xb(A.nvars(), 0), da(A.nvars(), 0), db(A.nvars(), 0);
      xa[var(rng)] += 1; xb[var(rng)] += 2;
      da[var(rng)] += 1; da[var(rng)] += 1; db[var(rng)] += 1;
      EnvElement u(E), v(E);
      int ju = pos(rng), jv = pos(rng);
      u.add_term({ju, xa, da}, F.one());
      v.add_term({jv, xb, db}, F.one());
      EnvElement prod = u * v;
      CHECK(prod.delta_degree() <= total_degree(da) + total_degree(db));
      // expected top: order parts multiply, delta exponents add
      VecPoly bu = a_zero(A), bv = a_zero(A);
      bu[ju] = Poly::monomial(A.ring(), xa, F.one());
      bv[jv] = Poly::monomial(A.ring(), xb, F.one());
      VecPoly ab = a_mul(A, bu, bv);
      Expvec dd(A.nvars(), 0);
      for (int i = 0; i < A.nvars(); ++i) dd[i] = da[i] + db[i];
      EnvElement top(E);
      for (int l = 0; l < A.rank; ++l)
        for (const auto& [mono, c] : ab[l].terms()) top.add_term({l, mono, dd}, c);
      CHECK(prod.delta_slice(total_degree(dd)) == top);
    }
  }
}

TEST_CASE("normal monomial counts match the closed form") {
  struct Case {
    EnvParent e;
    const char* name;
  };
  std::vector<Case> cases;
  cases.push_back({make_envelope(trivial_order(trivial2())), "trivial"});
  cases.push_back({make_envelope(trivial_order(heisenberg())), "heisenberg"});
  cases.push_back({make_envelope(trivial_order(sl2_star())), "sl2"});
  cases.push_back({make_envelope(matrix_order(solvable2(), 2)), "mat2"});

  for (const auto& [e, name] : cases) {
    CAPTURE(name);
    for (int k = 0; k <= 3; ++k)
      for (int d = 0; d <= 3; ++d) {
        PbwReport rep = pbw_dimension_check(e, k, d);
        CAPTURE(k);
        CAPTURE(d);
        CHECK(rep.ok);
        CHECK(rep.actual == rep.predicted);
      }
  }

  // frozen counts
  CHECK(pbw_dimension_check(cases[0].e, 1, 1).predicted == 9);   // n=2 rank 1
  CHECK(pbw_dimension_check(cases[1].e, 2, 0).predicted == 10);  // n=3 rank 1
  CHECK(pbw_dimension_check(cases[3].e, 1, 1).predicted == 36);  // n=2 rank 4
}

TEST_CASE("overlap ambiguities resolve exactly when Jacobi holds") {
  CHECK(diamond_overlap_check(make_envelope(trivial_order(trivial2()))).ok());
  CHECK(diamond_overlap_check(make_envelope(trivial_order(heisenberg()))).ok());
  CHECK(diamond_overlap_check(make_envelope(trivial_order(sl2_star()))).ok());
  CHECK(diamond_overlap_check(make_envelope(matrix_order(solvable2(), 2))).ok());
  CHECK(diamond_overlap_check(make_envelope(dual_numbers())).ok());

  OverlapReport bad = diamond_overlap_check(make_envelope(trivial_order(broken_triple())));
  CHECK_FALSE(bad.ok());
  REQUIRE(!bad.unresolved.empty());
  CHECK(bad.unresolved[0] == "(d[x1], d[x2], d[x3])");

  // a Hamiltonian action that is not a Lie map is a legal order, but its
  // envelope cannot resolve the derivation-times-basis overlap
  OverlapReport skew = diamond_overlap_check(make_envelope(dual_numbers("x")));
  REQUIRE(skew.unresolved.size() == 1);
  CHECK(skew.unresolved[0] == "(d[x], d[y], eps)");
}

TEST_CASE("dual-number Lie algebras embed into the envelope") {
  const Field F = Field::rationals();
  auto tensor = [&](int n) {
    return std::vector<std::vector<std::vector<Coef>>>(
        n, std::vector<std::vector<Coef>>(n, std::vector<Coef>(n, F.zero())));
  };
  auto set = [&](auto& c, int i, int j, int k, long v) {
    c[i][j][k] = F.from_int(v);
    c[j][i][k] = F.from_int(-v);
  };

  // abelian
  CHECK(ugd_compare(qring("x y"), tensor(2)).ok());

  // Heisenberg: [x,y] = z
  auto ch = tensor(3);
  set(ch, 0, 1, 2, 1);
  CHECK(ugd_compare(qring("x y z"), ch).ok());

  // sl2: [e,h] = -2e, [e,f] = h, [h,f] = -2f
  auto cs = tensor(3);
  set(cs, 0, 1, 0, -2);
  set(cs, 0, 2, 1, 1);
  set(cs, 1, 2, 2, -2);
  CHECK(ugd_compare(qring("e h f"), cs).ok());

  // two-dimensional solvable: [x,y] = y
  auto cv = tensor(2);
  set(cv, 0, 1, 1, 1);
  CHECK(ugd_compare(qring("x y"), cv).ok());

  // spot check the mixed relation: [d(h), alpha(e)] = alpha({h,e}) = 2 alpha(e)
  PoissonAlgebra S = sl2_star();
  EnvParent E = make_envelope(trivial_order(S));
  EnvElement dh = env_delta(E, 1), ae = env_alpha(E, pp(S.ring, "e"));
  CHECK(dh * ae - ae * dh == env_alpha(E, pp(S.ring, "2*e")));

  // non-Lie constants are rejected before any comparison
  auto cbad = tensor(3);
  set(cbad, 0, 1, 1, 1);
  set(cbad, 1, 2, 0, 1);   // the broken triple: Jacobi fails
  CHECK_THROWS_AS(ugd_compare(qring("x1 x2 x3"), cbad), input_error);
}

TEST_CASE("module laws are checked with named violations") {
  const Field F = Field::rationals();

  // sl2 dual at the origin, one-dimensional
  {
    PoissonAlgebra S = sl2_star();
    PoissonModule m = make_module(F, 1, {qmat(F, {{0}}), qmat(F, {{0}}), qmat(F, {{0}})},
                                  {qmat(F, {{0}}), qmat(F, {{0}}), qmat(F, {{0}})});
    CHECK(module_check(m, S).ok());
  }

  // k[x] on two dimensions with a nontrivial commuting derivation action
  {
    Ring R = qring("x");
    PoissonAlgebra P = make_poisson(R, std::vector<std::tuple<int, int, Poly>>{});
    CoefMat X = qmat(F, {{0, 2}, {1, 0}});
    PoissonModule m = make_module(F, 2, {X}, {X});
    CHECK(module_check(m, P).ok());
  }

  // the truncated regular module of k[x,y] mod degree 3, derivations zero
  {
    Ring R = qring("x y");
    PoissonAlgebra P = make_poisson(R, std::vector<std::tuple<int, int, Poly>>{});
    // basis 1, x, y, x^2, xy, y^2
    CoefMat Mx = qmat(F, {{0, 0, 0, 0, 0, 0},
                          {1, 0, 0, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0},
                          {0, 1, 0, 0, 0, 0},
                          {0, 0, 1, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0}});
    CoefMat My = qmat(F, {{0, 0, 0, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0},
                          {1, 0, 0, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0},
                          {0, 1, 0, 0, 0, 0},
                          {0, 0, 1, 0, 0, 0}});
    CoefMat Z = qmat(F, {{0, 0, 0, 0, 0, 0},
                         {0, 0, 0, 0, 0, 0},
                         {0, 0, 0, 0, 0, 0},
                         {0, 0, 0, 0, 0, 0},
                         {0, 0, 0, 0, 0, 0},
                         {0, 0, 0, 0, 0, 0}});
    PoissonModule m = make_module(F, 6, {Mx, My}, {Z, Z});
    CHECK(module_check(m, P).ok());
  }

  // sl2 standard representation over the origin
  {
    PoissonAlgebra S = sl2_star();
    CoefMat z2 = qmat(F, {{0, 0}, {0, 0}});
    PoissonModule m = make_module(
        F, 2, {z2, z2, z2},
        {qmat(F, {{0, 1}, {0, 0}}), qmat(F, {{1, 0}, {0, -1}}), qmat(F, {{0, 0}, {1, 0}})});
    CHECK(module_check(m, S).ok());
  }

  // named violations
  {
    Ring R = qring("x y");
    PoissonAlgebra P = make_poisson(R, std::vector<std::tuple<int, int, Poly>>{});
    CoefMat A = qmat(F, {{0, 1}, {0, 0}});
    CoefMat B = qmat(F, {{0, 0}, {1, 0}});
    CoefMat Z = qmat(F, {{0, 0}, {0, 0}});
    ModuleReport rep = module_check(make_module(F, 2, {A, B}, {Z, Z}), P);
    REQUIRE(!rep.ok());
    CHECK(rep.violations[0] == "base actions do not commute at (x, y)");
  }
  {
    PoissonAlgebra H = heisenberg();
    CoefMat E12 = qmat(F, {{0, 1}, {0, 0}});
    CoefMat E21 = qmat(F, {{0, 0}, {1, 0}});
    CoefMat Z = qmat(F, {{0, 0}, {0, 0}});
    // [D_x, D_y] != nabla(z) = D_z
    ModuleReport rep =
        module_check(make_module(F, 2, {Z, Z, Z}, {E12, E21, Z}), H);
    REQUIRE(!rep.ok());
    CHECK(rep.violations[0] == "(iii) fails at (x, y)");
  }
  {
    PoissonAlgebra H = heisenberg();
    CoefMat Z = qmat(F, {{0, 0}, {0, 0}});
    CoefMat I2 = mat_identity(F, 2);
    // {x,y} = z acts by zero but [D_x, X_y] = identity
    ModuleReport rep = module_check(
        make_module(F, 2, {Z, qmat(F, {{0, 1}, {0, 0}}), Z},
                    {qmat(F, {{0, 0}, {1, 0}}), Z, Z}),
        H);
    REQUIRE(!rep.ok());
    CHECK(rep.violations[0] == "(ii) fails at {x, y}");
    (void)I2;
  }

  // shape errors are inputs, not violations
  {
    PoissonAlgebra S = sl2_star();
    CoefMat z1 = qmat(F, {{0}});
    CHECK_THROWS_AS(module_check(make_module(F, 1, {z1, z1}, {z1, z1, z1}), S),
                    input_error);
    PoissonModule bad = make_module(F, 2, {z1, z1, z1}, {z1, z1, z1});
    CHECK_THROWS_AS(module_check(bad, S), input_error);
  }
}

TEST_CASE("annihilators by capped evaluation") {
  const Field F = Field::rationals();
  Ring R1 = qring("x");

  // scalar module at a point
  {
    Ring R = qring("x y");
    PoissonModule m = make_module(F, 1, {qmat(F, {{2}}), qmat(F, {{-1}})},
                                  {qmat(F, {{0}}), qmat(F, {{0}})});
    AnnihilatorReport rep = module_annihilator_Z(R, m);
    CHECK(rep.complete);
    CHECK(ideal_equal(rep.ideal, Ideal(R, {pp(R, "x - 2"), pp(R, "y + 1")})));
  }

  // nilpotent Jordan block: annihilator (x^2)
  {
    PoissonModule m = make_module(F, 2, {qmat(F, {{0, 1}, {0, 0}})},
                                  {qmat(F, {{0, 0}, {0, 0}})});
    AnnihilatorReport rep = module_annihilator_Z(R1, m);
    CHECK(rep.complete);
    CHECK(ideal_equal(rep.ideal, Ideal(R1, {pp(R1, "x^2")})));
    // a cap too small to see x^2 comes back flagged incomplete
    AnnihilatorReport low = module_annihilator_Z(R1, m, 1);
    CHECK_FALSE(low.complete);
    CHECK(low.ideal.basis().empty());
  }

  // split diagonal: annihilator (x^2 - x)
  {
    PoissonModule m = make_module(F, 2, {qmat(F, {{0, 0}, {0, 1}})},
                                  {qmat(F, {{0, 0}, {0, 0}})});
    AnnihilatorReport rep = module_annihilator_Z(R1, m);
    CHECK(rep.complete);
    CHECK(ideal_equal(rep.ideal, Ideal(R1, {pp(R1, "x^2 - x")})));
  }

  // evaluation engine spot checks
  {
    CoefMat Xx = qmat(F, {{0, 1}, {0, 0}});
    CoefMat Xy = qmat(F, {{2, 0}, {0, 2}});
    Ring R = qring("x y");
    CHECK(mat_eq(eval_matrix(pp(R, "x*y + x"), {Xx, Xy}, 2),
                 qmat(F, {{0, 3}, {0, 0}})));
    CHECK(mat_eq(eval_matrix(pp(R, "x^2"), {Xx, Xy}, 2), qmat(F, {{0, 0}, {0, 0}})));
    CHECK(mat_eq(eval_matrix(Poly::constant(R, 5), {Xx, Xy}, 2),
                 qmat(F, {{5, 0}, {0, 5}})));
  }

  // standard monomial helper behind the completeness flag
  {
    Ideal I(R1, {pp(R1, "x^2 - x")});
    auto sm = standard_monomials(I);
    REQUIRE(sm.has_value());
    CHECK(sm->size() == 2);
    Ring R3 = qring("x y z");
    CHECK(!standard_monomials(Ideal(R3, {pp(R3, "z")})).has_value());
    CHECK(standard_monomials(Ideal(R3, {pp(R3, "1")}))->empty());
    Ideal box(R3, {pp(R3, "x^2"), pp(R3, "y"), pp(R3, "z^3")});
    auto smb = standard_monomials(box);
    REQUIRE(smb.has_value());
    CHECK(smb->size() == 6);   // {1, x, z, xz, z^2, xz^2}
  }
}

TEST_CASE("torsion picks the largest single-vector annihilator") {
  const Field F = Field::rationals();
  Ring R1 = qring("x");

  // nilpotent block: Ann(e1) = (x) strictly contains Ann(e2) = (x^2)
  {
    PoissonModule m = make_module(F, 2, {qmat(F, {{0, 1}, {0, 0}})},
                                  {qmat(F, {{0, 0}, {0, 0}})});
    TorsionReport rep = torsion_ideal(R1, m);
    CHECK(rep.complete);
    CHECK(ideal_equal(rep.ideal, Ideal(R1, {pp(R1, "x")})));
    REQUIRE(rep.witness.size() == 2);
    CHECK(rep.witness[0] == F.one());
    CHECK(rep.witness[1] == F.zero());
  }

  // scalar module: the maximal ideal of the point, witness the basis vector
  {
    Ring R = qring("x y");
    PoissonModule m = make_module(F, 1, {qmat(F, {{3}}), qmat(F, {{0}})},
                                  {qmat(F, {{0}}), qmat(F, {{0}})});
    TorsionReport rep = torsion_ideal(R, m);
    CHECK(ideal_equal(rep.ideal, Ideal(R, {pp(R, "x - 3"), pp(R, "y")})));
    CHECK(rep.witness == std::vector<Coef>{F.one()});
  }

  // incomparable annihilators keep the first maximal one
  {
    PoissonModule m = make_module(F, 2, {qmat(F, {{0, 0}, {0, 1}})},
                                  {qmat(F, {{0, 0}, {0, 0}})});
    TorsionReport rep = torsion_ideal(R1, m);
    CHECK(ideal_equal(rep.ideal, Ideal(R1, {pp(R1, "x")})));
    CHECK(rep.witness[0] == F.one());
  }

  // torsion contains the module annihilator
  {
    PoissonModule m = make_module(F, 2, {qmat(F, {{0, 1}, {0, 0}})},
                                  {qmat(F, {{0, 0}, {0, 0}})});
    TorsionReport tor = torsion_ideal(R1, m);
    AnnihilatorReport ann = module_annihilator_Z(R1, m);
    CHECK(ideal_contains(tor.ideal, ann.ideal));
  }

  CHECK_THROWS_AS(torsion_ideal(R1, PoissonModule{}), input_error);
}

TEST_CASE("simple modules tie the torsion core to the annihilator") {
  const Field F = Field::rationals();

  // sl2 dual at the origin, one-dimensional
  {
    PoissonAlgebra S = sl2_star();
    CoefMat z = qmat(F, {{0}});
    PoissonModule m = make_module(F, 1, {z, z, z}, {z, z, z});
    REQUIRE(module_check(m, S).ok());
    CHECK(ividealiii_check(m, S));
  }

  // Heisenberg scalar module on the leaf z = 0, with free derivation scalars
  {
    PoissonAlgebra H = heisenberg();
    PoissonModule m = make_module(
        F, 1, {qmat(F, {{1}}), qmat(F, {{2}}), qmat(F, {{0}})},
        {qmat(F, {{5}}), qmat(F, {{7}}), qmat(F, {{0}})});
    REQUIRE(module_check(m, H).ok());
    CHECK(ividealiii_check(m, H));
  }

  // trivial bracket, irreducible minimal polynomial
  {
    Ring R = qring("x");
    PoissonAlgebra P = make_poisson(R, std::vector<std::tuple<int, int, Poly>>{});
    CoefMat X = qmat(F, {{0, 2}, {1, 0}});
    PoissonModule m = make_module(F, 2, {X}, {X});
    REQUIRE(module_check(m, P).ok());
    CHECK(ividealiii_check(m, P));
  }

  // Heisenberg two-dimensional: x acts by the companion of x^2 - 2
  {
    PoissonAlgebra H = heisenberg();
    CoefMat X = qmat(F, {{0, 2}, {1, 0}});
    CoefMat Y = qmat(F, {{3, 0}, {0, 3}});
    CoefMat Z = qmat(F, {{0, 0}, {0, 0}});
    PoissonModule m = make_module(F, 2, {X, Y, Z}, {Z, Z, Z});
    REQUIRE(module_check(m, H).ok());
    CHECK(ividealiii_check(m, H));
  }

  // sl2 standard representation at the origin
  {
    PoissonAlgebra S = sl2_star();
    CoefMat z2 = qmat(F, {{0, 0}, {0, 0}});
    PoissonModule m = make_module(
        F, 2, {z2, z2, z2},
        {qmat(F, {{0, 1}, {0, 0}}), qmat(F, {{1, 0}, {0, -1}}), qmat(F, {{0, 0}, {1, 0}})});
    REQUIRE(module_check(m, S).ok());
    CHECK(ividealiii_check(m, S));
  }

  // non-simple control: two distinct scalar modules glued together
  {
    Ring R = qring("x");
    PoissonAlgebra P = make_poisson(R, std::vector<std::tuple<int, int, Poly>>{});
    PoissonModule m = make_module(F, 2, {qmat(F, {{0, 0}, {0, 1}})},
                                  {qmat(F, {{0, 0}, {0, 0}})});
    REQUIRE(module_check(m, P).ok());
    CHECK_FALSE(ividealiii_check(m, P));
  }
}

TEST_CASE("induction from the base to an order") {
  const Field F = Field::rationals();

  // rank one: nothing changes
  {
    PoissonAlgebra H = heisenberg();
    PoissonModule m = make_module(
        F, 1, {qmat(F, {{1}}), qmat(F, {{2}}), qmat(F, {{0}})},
        {qmat(F, {{5}}), qmat(F, {{7}}), qmat(F, {{0}})});
    PoissonModule ind = induced_module(trivial_order(H), m);
    CHECK(ind.dim == 1);
    CHECK(mat_eq(ind.X[0], m.X[0]));
    CHECK(mat_eq(ind.D[1], m.D[1]));
    CHECK(mat_eq(ind.E[0], mat_identity(F, 1)));
    CHECK(module_check(ind, trivial_order(H)).ok());
  }

  // matrix order over the Heisenberg base: dimension multiplies by the rank
  {
    PoissonAlgebra H = heisenberg();
    PoissonOrder A = matrix_order(H, 2);
    PoissonModule m = make_module(
        F, 1, {qmat(F, {{1}}), qmat(F, {{2}}), qmat(F, {{0}})},
        {qmat(F, {{5}}), qmat(F, {{7}}), qmat(F, {{0}})});
    PoissonModule ind = induced_module(A, m);
    CHECK(ind.dim == 4);
    CHECK(module_check(ind, A).ok());
    // base acts by the same scalars everywhere
    CHECK(mat_eq(ind.X[0], mat_identity(F, 4)));
    // matrix units act by their permutation pattern
    CHECK(mat_eq(mat_mul(F, ind.E[1], ind.E[2]), ind.E[0]));   // E12 E21 = E11
    CHECK(mat_is_zero(mat_mul(F, ind.E[1], ind.E[1])));
  }

  // an order with a nontrivial ham table: derivations pick up corrections
  {
    PoissonOrder D = dual_numbers();
    PoissonModule m = make_module(
        F, 1, {qmat(F, {{1}}), qmat(F, {{2}}), qmat(F, {{0}})},
        {qmat(F, {{0}}), qmat(F, {{0}}), qmat(F, {{0}})});
    PoissonModule ind = induced_module(D, m);
    CHECK(ind.dim == 2);
    CHECK(module_check(ind, D).ok());
    // {x, eps} = y eps shows up in D_x as y evaluated at the point
    CHECK(ind.D[0][1][1] == F.from_int(2));
  }
}

TEST_SUITE_END();
