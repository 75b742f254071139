#pragma once

// Umbrella header. JSON I/O lives separately in divsym/json_io.hpp.

#include "divsym/divided_symmetrization.hpp"
#include "divsym/error.hpp"
#include "divsym/graph.hpp"
#include "divsym/identities.hpp"
#include "divsym/instances.hpp"
#include "divsym/polynomial.hpp"
#include "divsym/rational.hpp"
#include "divsym/sandpile.hpp"
#include "divsym/tree.hpp"
