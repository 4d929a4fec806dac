#pragma once

// Umbrella header for the re-forwarding checkpoint optimizer.

#include "reforward/acg.hpp"
#include "reforward/closed_set.hpp"
#include "reforward/division_tree.hpp"
#include "reforward/generators.hpp"
#include "reforward/graph.hpp"
#include "reforward/io.hpp"
#include "reforward/lcg.hpp"
#include "reforward/objective.hpp"
#include "reforward/oracle.hpp"
#include "reforward/policies.hpp"
#include "reforward/simulate.hpp"
