#include "doctest.h"

#include <random>

#include "pomelo/errors.hpp"
#include "pomelo/semiclassical.hpp"
#include "support.hpp"

using namespace pomelo;
using namespace testsup;

TEST_SUITE_BEGIN("semiclassical");

namespace {

QElement random_qelem(const QuantumAffineSpace& Q, std::mt19937& rng, int nterms) {
  std::uniform_int_distribution<int> exp(0, 3);
  std::uniform_int_distribution<long> qp(-2, 2);
  std::uniform_int_distribution<long> num(-4, 4);
  QElement out = q_zero(Q);
  for (int t = 0; t < nterms; ++t) {
    Expvec a(static_cast<size_t>(Q.n));
    for (int i = 0; i < Q.n; ++i) a[static_cast<size_t>(i)] = exp(rng);
    long c = num(rng);
    if (c == 0) c = 1;
    out = q_add(Q, out, q_monomial(Q, a, qp(rng), Q.field.from_int(c)));
  }
  return out;
}

} // namespace

TEST_CASE("normal ordering keeps exact q powers") {
  QuantumAffineSpace Q = quantum_affine_space(2);
  QElement x1 = x_power(Q, 0, 1);
  QElement x2 = x_power(Q, 1, 1);

  CHECK(q_eq(q_mul(Q, x2, x1), q_monomial(Q, {1, 1}, 1)));
  CHECK(q_str(Q, q_mul(Q, x2, x1)) == "q*X1*X2");
  CHECK(q_eq(q_mul(Q, x1, x1), q_monomial(Q, {2, 0})));

  QElement a = x_power(Q, 0, 2);
  QElement b = x_power(Q, 1, 2);
  CHECK(q_eq(q_mul(Q, b, a), q_monomial(Q, {2, 2}, 4)));
  QElement comm = q_sub(Q, q_mul(Q, a, b), q_mul(Q, b, a));
  CHECK(q_eq(comm, q_sub(Q, q_monomial(Q, {2, 2}, 0), q_monomial(Q, {2, 2}, 4))));
  CHECK(q_str(Q, comm) == "(1 - q^4)*X1^2*X2^2");

  QuantumAffineSpace Q3 = quantum_affine_space(3);
  std::mt19937 rng(81);
  for (int round = 0; round < 20; ++round) {
    QElement u = random_qelem(Q3, rng, 2);
    QElement v = random_qelem(Q3, rng, 2);
    QElement w = random_qelem(Q3, rng, 2);
    CHECK(q_eq(q_mul(Q3, q_mul(Q3, u, v), w), q_mul(Q3, u, q_mul(Q3, v, w))));
    CHECK(q_eq(q_mul(Q3, u, q_add(Q3, v, w)),
               q_add(Q3, q_mul(Q3, u, v), q_mul(Q3, u, w))));
  }
  QElement u = random_qelem(Q3, rng, 3);
  CHECK(q_eq(q_mul(Q3, q_one(Q3), u), u));
  CHECK(q_eq(q_mul(Q3, u, q_one(Q3)), u));
  CHECK(q_eq(q_sub(Q3, u, u), q_zero(Q3)));
  CHECK(q_str(Q3, q_zero(Q3)) == "0");

  CHECK_THROWS_WITH_AS(q_monomial(Q, {1, -1}),
                       "quantum affine space exponents must be nonnegative",
                       input_error);
  CHECK_THROWS_WITH_AS(q_monomial(Q, {1}),
                       "exponent vector length does not match the generator count",
                       input_error);
  CHECK_THROWS_WITH_AS(quantum_affine_space(0),
                       "quantum affine space needs at least one generator",
                       input_error);
}

TEST_CASE("the ell-centre bracket divides exactly") {
  for (int ell : {2, 3, 4, 5}) {
    for (int n : {1, 2, 3}) {
      QuantumAffineSpace Q = quantum_affine_space(n);
      PoissonAlgebra P = ell_centre_bracket(Q, ell);
      const Field& F = P.ring->field;
      CHECK(P.nvars() == n);
      CHECK(P.ring->vars[0] == "u1");
      CHECK(F.ell() == ell);
      // quotient of 1 - q^{ell^2} at zeta is the derivative there
      Coef s = F.mul(F.from_int(-static_cast<long>(ell) * ell), F.pow(F.zeta(), -1));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i < j) {
            Expvec e(static_cast<size_t>(n), 0);
            e[static_cast<size_t>(i)] = 1;
            e[static_cast<size_t>(j)] = 1;
            CHECK(P.table[i][j] == Poly::monomial(P.ring, e, s));
          }
          CHECK(P.table[i][j] == P.table[j][i].scaled(F.from_int(-1)));
        }
      }
      CHECK(jacobi_check(P).ok());
    }
  }
}

TEST_CASE("golden scalars at small roots of unity") {
  QuantumAffineSpace Q = quantum_affine_space(2);
  {
    PoissonAlgebra P = ell_centre_bracket(Q, 2);
    const Field& F = P.ring->field;
    CHECK(P.table[0][1] == Poly::monomial(P.ring, {1, 1}, F.from_int(4)));
    CHECK(P.table[0][1].str() == "4*u1*u2");
    // extended as a biderivation: {u1, u2^2} = 8 u1 u2^2
    Poly u1 = Poly::variable(P.ring, 0);
    Poly u2 = Poly::variable(P.ring, 1);
    CHECK(poisson_bracket(P, u1, u2 * u2) ==
          Poly::monomial(P.ring, {1, 2}, F.from_int(8)));
  }
  {
    PoissonAlgebra P = ell_centre_bracket(Q, 3);
    const Field& F = P.ring->field;
    Coef s3 = F.add(F.from_int(9), F.mul(F.from_int(9), F.zeta()));
    CHECK(P.table[0][1] == Poly::monomial(P.ring, {1, 1}, s3));
    CHECK(F.to_string(s3) == "9*zeta + 9");
  }
}

TEST_CASE("powers become central exactly at the root of unity") {
  for (int ell : {2, 3, 5}) CHECK(centrality_check(quantum_affine_space(3), ell));
  CHECK(centrality_check(quantum_affine_space(1), 7));

  // away from the root of unity the commutator survives
  QuantumAffineSpace Q = quantum_affine_space(2);
  QElement A = x_power(Q, 0, 3);
  QElement X2 = x_power(Q, 1, 1);
  QElement comm = q_sub(Q, q_mul(Q, A, X2), q_mul(Q, X2, A));
  CHECK(!comm.is_zero());
  CHECK(q_eq(comm, q_sub(Q, q_monomial(Q, {3, 1}, 0), q_monomial(Q, {3, 1}, 3))));
  CHECK(q_str(Q, comm) == "(1 - q^3)*X1^3*X2");

  CHECK_THROWS_WITH_AS(ell_centre_bracket(Q, 1), "the ell-centre needs ell >= 2",
                       input_error);
  CHECK_THROWS_WITH_AS(centrality_check(Q, 0), "the ell-centre needs ell >= 2",
                       input_error);
  CHECK_THROWS_AS(ell_centre_bracket(Q, 13), input_error);
}

TEST_SUITE_END();
