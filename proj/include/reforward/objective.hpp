#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "reforward/graph.hpp"

namespace reforward {

/// One re-forward unit: a maximal weakly-connected set of non-stored interior
/// vertices, recomputed as a whole and freed after its backward.
struct Segment {
  VertexSet members;
  Cost cost = 0;
};

/// A checkpoint assignment with its score. `total` is the training-memory
/// objective: stored cost plus the single largest recompute unit.
struct Solution {
  VertexSet stored;              // V^R, interior vertices only
  Cost stored_cost = 0;
  Cost realized_max = 0;         // max segment cost actually incurred
  Cost total = 0;                // stored_cost + realized_max
  std::vector<Segment> segments; // ordered by first topological index
  Cost candidate_max_term = 0;   // the max-term candidate that produced this
};

/// Scores a stored set. This is the single scoring routine shared by the
/// solvers, the oracle and the simulator: segments are the weakly-connected
/// components of the induced subgraph on non-stored interior vertices.
inline Solution objective_of(const CompGraph& g, const VertexSet& stored) {
  const std::size_t n = g.n_vertices();
  Solution sol;
  sol.stored = stored;
  sol.stored_cost = interior_cost(g, stored);

  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto in_play = [&](VertexId v) { return g.is_interior(v) && !stored.test(v); };

  for (auto [u, v] : g.edges())
    if (in_play(u) && in_play(v)) parent[find(u)] = find(v);

  std::vector<std::int32_t> seg_of(n, -1);
  for (VertexId v : g.topo_order()) {
    if (!in_play(v)) continue;
    auto root = find(v);
    if (seg_of[root] < 0) {
      seg_of[root] = static_cast<std::int32_t>(sol.segments.size());
      sol.segments.push_back({VertexSet(n), 0});
    }
    auto& seg = sol.segments[seg_of[root]];
    seg.members.set(v);
    seg.cost += g.cost(v);
  }
  for (const auto& seg : sol.segments) sol.realized_max = std::max(sol.realized_max, seg.cost);
  sol.total = sol.stored_cost + sol.realized_max;
  sol.candidate_max_term = sol.realized_max;
  return sol;
}

/// Ordering used whenever two solutions tie: smaller total, then fewer stored
/// vertices, then lexicographically smaller stored set.
inline bool better_solution(const Solution& a, const Solution& b) {
  if (a.total != b.total) return a.total < b.total;
  auto ca = a.stored.count(), cb = b.stored.count();
  if (ca != cb) return ca < cb;
  return VertexSet::compare_lex(a.stored, b.stored) < 0;
}

}  // namespace reforward
