#pragma once

// Umbrella header for the kuzcalc library: exact invariants of graded
// matrix-factorization categories of (weighted-)homogeneous hypersurfaces.

#include "kuzcalc/driver.hpp"
#include "kuzcalc/errors.hpp"
#include "kuzcalc/gradedlin.hpp"
#include "kuzcalc/hsalgebra.hpp"
#include "kuzcalc/jobspec.hpp"
#include "kuzcalc/koszul.hpp"
#include "kuzcalc/linalg.hpp"
#include "kuzcalc/milnor.hpp"
#include "kuzcalc/monomial.hpp"
#include "kuzcalc/orbifold.hpp"
#include "kuzcalc/parse.hpp"
#include "kuzcalc/polynomial.hpp"
#include "kuzcalc/rational.hpp"
#include "kuzcalc/series.hpp"
#include "kuzcalc/torelli.hpp"
