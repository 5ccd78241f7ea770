#pragma once

#include "convergence.hpp"
#include "discrete.hpp"
#include "duality.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "fock.hpp"
#include "grid.hpp"
#include "levels.hpp"
#include "oracles.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "polynomial.hpp"
#include "solver.hpp"
#include "sparse.hpp"
