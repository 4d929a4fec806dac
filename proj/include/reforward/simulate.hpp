#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "reforward/graph.hpp"
#include "reforward/objective.hpp"

namespace reforward {

/// Step-by-step replay of re-forward training under the activation-only cost
/// model: live memory over time, its peak, and how often each tensor gets
/// recomputed. Gradients and weights are uncharged; endpoint tensors are
/// always resident and their costs excluded, matching the objective.
struct SimReport {
  struct Event {
    std::string label;
    Cost live = 0;
  };
  std::vector<Event> timeline;
  Cost peak = 0;
  std::map<VertexId, std::uint32_t> recompute_count;
};

enum class BackwardOrder {
  ReverseTopoExit,   // segments by descending last-vertex position (default)
  ReverseTopoEntry,  // segments by descending first-vertex position
};

/// Replays one training iteration for the given checkpoint assignment.
/// Phase 1 runs the first forward in topological order, retaining stored
/// tensors and treating other computes as in-place transients. Phase 2 walks
/// the backward: each segment is re-forwarded as one unit, used, and freed,
/// while the stored set stays resident. The peak is therefore exactly
/// stored cost + largest segment; the function throws if that cross-check
/// against the solution total ever fails.
inline SimReport simulate(const CompGraph& g, const Solution& sol,
                          BackwardOrder order = BackwardOrder::ReverseTopoExit) {
  SimReport rep;
  Cost live = 0;
  auto emit = [&](std::string label) {
    rep.timeline.push_back({std::move(label), live});
    rep.peak = std::max(rep.peak, live);
  };

  for (auto v : g.interior().to_indices()) rep.recompute_count[v] = 0;

  emit("forward start");
  for (VertexId v : g.topo_order()) {
    if (!g.is_interior(v)) continue;
    if (sol.stored.test(v)) {
      live += g.cost(v);
      emit("store " + g.name(v));
    } else {
      emit("compute " + g.name(v) + " (transient)");
    }
  }

  // Backward: process segments one at a time. By default in reverse
  // topological order of their exits; the peak does not depend on the order
  // since only one segment is ever live.
  std::vector<std::size_t> seg_order(sol.segments.size());
  for (std::size_t i = 0; i < seg_order.size(); ++i) seg_order[i] = i;
  auto seg_key = [&](std::size_t i) {
    std::size_t key = (order == BackwardOrder::ReverseTopoExit) ? 0 : g.n_vertices();
    for (auto v : sol.segments[i].members.to_indices()) {
      std::size_t k = g.topo_index(v);
      if (order == BackwardOrder::ReverseTopoExit) key = std::max(key, k);
      else key = std::min(key, k);
    }
    return key;
  };
  std::sort(seg_order.begin(), seg_order.end(),
            [&](std::size_t a, std::size_t b) { return seg_key(a) > seg_key(b); });

  emit("backward start");
  for (std::size_t i : seg_order) {
    const auto& seg = sol.segments[i];
    live += seg.cost;
    for (auto v : seg.members.to_indices()) rep.recompute_count[v] += 1;
    emit("re-forward segment " + std::to_string(i));
    live -= seg.cost;
    emit("backward segment " + std::to_string(i));
  }
  live -= sol.stored_cost;
  emit("backward done");

  if (rep.peak != sol.total)
    throw InternalError("simulated peak " + std::to_string(rep.peak) +
                        " != solution total " + std::to_string(sol.total));
  return rep;
}

}  // namespace reforward
