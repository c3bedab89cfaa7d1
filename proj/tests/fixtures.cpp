#include "fixtures.hpp"

namespace testsup {

PoissonAlgebra sl2_star() {
  Ring R = qring("e h f");
  return make_poisson(R, {{0, 1, pp(R, "-2*e")},    // {e,h} = -{h,e}
                          {0, 2, pp(R, "h")},       // {e,f}
                          {1, 2, pp(R, "-2*f")}});  // {h,f}
}

PoissonAlgebra heisenberg() {
  Ring R = qring("x y z");
  return make_poisson(R, {{0, 1, pp(R, "z")}});
}

PoissonAlgebra solvable2() {
  Ring R = qring("x y");
  return make_poisson(R, {{0, 1, pp(R, "y")}});
}

PoissonAlgebra broken_triple() {
  Ring R = qring("x1 x2 x3");
  return make_poisson(R, {{0, 1, pp(R, "x2")}, {1, 2, pp(R, "x1")}});
}

} // namespace testsup
