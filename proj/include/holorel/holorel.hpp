#pragma once

// Convenience umbrella: the whole library (the CLI layer stays separate
// because it drags in its vendored dependencies).

#include "holorel/error.hpp"
#include "holorel/rational.hpp"
#include "holorel/poly.hpp"
#include "holorel/ratfunc.hpp"
#include "holorel/laurent.hpp"
#include "holorel/linalg.hpp"
#include "holorel/truncseries.hpp"
#include "holorel/ore.hpp"
#include "holorel/newton.hpp"
#include "holorel/holoseries.hpp"
#include "holorel/hypergeo.hpp"
#include "holorel/systems.hpp"
#include "holorel/relations.hpp"
#include "holorel/parse.hpp"
