#pragma once

#include <cstdint>

#include "reforward/graph.hpp"
#include "reforward/objective.hpp"

namespace reforward {

/// Exhaustive minimum of the objective over every subset of interior
/// vertices. Ground truth for the solvers on small graphs; refuses interiors
/// beyond `max_interior` (2^n enumeration).
inline Solution oracle_min(const CompGraph& g, std::size_t max_interior = 20) {
  auto interior = g.interior().to_indices();
  if (interior.size() > max_interior)
    throw SizeLimitError("oracle limited to " + std::to_string(max_interior) +
                         " interior vertices, graph has " + std::to_string(interior.size()));

  Solution best;
  bool have = false;
  const std::uint64_t limit = std::uint64_t{1} << interior.size();
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    VertexSet stored(g.n_vertices());
    for (std::size_t i = 0; i < interior.size(); ++i)
      if ((bits >> i) & 1u) stored.set(interior[i]);
    Solution sol = objective_of(g, stored);
    if (!have || better_solution(sol, best)) {
      best = sol;
      have = true;
    }
  }
  return best;
}

}  // namespace reforward
