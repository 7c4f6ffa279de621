#pragma once

// Umbrella header: inequality indices (Kolkata, Gini, Pietra) over exact
// Lorenz-curve representations, plus dominance comparison, Hirsch-index
// fixed points, power-law tail fitting and dataset/report I/O.

#include "ineq/errors.hpp"
#include "ineq/distributions.hpp"
#include "ineq/lorenz.hpp"
#include "ineq/indices.hpp"
#include "ineq/dominance.hpp"
#include "ineq/hindex.hpp"
#include "ineq/tailfit.hpp"
#include "ineq/io.hpp"
