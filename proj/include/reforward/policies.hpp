#pragma once

#include <cmath>

#include "reforward/graph.hpp"
#include "reforward/lcg.hpp"
#include "reforward/objective.hpp"

namespace reforward {

/// Store-all baseline: regular training, every interior activation retained.
inline Solution store_all(const CompGraph& g) { return objective_of(g, g.interior()); }

/// Even-spacing sqrt(N) checkpoint policy for linear graphs: store every k-th
/// interior vertex with k = round(sqrt(n)). The classic heuristic this
/// library's exact solvers are compared against; linear chains only.
inline Solution sqrt_heuristic_chain(const CompGraph& g) {
  if (!is_linear_chain(g)) throw ValidationError("sqrt heuristic applies to linear chains only");
  const auto& order = g.topo_order();
  const std::size_t n = order.size() >= 2 ? order.size() - 2 : 0;  // interior count
  VertexSet stored(g.n_vertices());
  if (n > 0) {
    auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (k < 1) k = 1;
    for (std::size_t pos = k; pos < n; pos += k) stored.set(order[pos]);  // order[1..n] interior
  }
  return objective_of(g, stored);
}

}  // namespace reforward
