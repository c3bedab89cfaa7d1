#pragma once

// Worked Poisson algebras shared across suites. Expected values quoted in
// the tests were computed by hand from these tables.

#include "pomelo/poisson.hpp"
#include "support.hpp"

namespace testsup {

using namespace pomelo;

// variables e, h, f with {h,e} = 2e, {h,f} = -2f, {e,f} = h
PoissonAlgebra sl2_star();

// variables x, y, z with {x,y} = z, z central
PoissonAlgebra heisenberg();

// variables x, y with {x,y} = y
PoissonAlgebra solvable2();

// variables x1, x2, x3 with {x1,x2} = x2, {x2,x3} = x1: violates Jacobi on
// (x1,x2,x3) with Jacobiator -x1
PoissonAlgebra broken_triple();

} // namespace testsup
