#pragma once

// Umbrella header: finite-lattice core, set-family representations, standard
// forms, the extension search, and the verification oracles.

#include "latt/algo1.hpp"
#include "latt/canonical.hpp"
#include "latt/dot.hpp"
#include "latt/errors.hpp"
#include "latt/extend.hpp"
#include "latt/indep.hpp"
#include "latt/json_io.hpp"
#include "latt/lattice.hpp"
#include "latt/mask.hpp"
#include "latt/poset.hpp"
#include "latt/set_family.hpp"
#include "latt/verify.hpp"
