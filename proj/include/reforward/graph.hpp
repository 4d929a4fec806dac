#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reforward/bitset.hpp"
#include "reforward/errors.hpp"

namespace reforward {

using VertexId = std::uint32_t;
using Cost = std::int64_t;

/// Immutable DAG with per-vertex memory costs and a single source/sink pair
/// (virtual endpoints are added during normalization when needed). Vertices
/// carry dense ids 0..n-1; the original names are retained for reporting.
/// Safe for concurrent read-only use once constructed.
class CompGraph {
public:
  struct Builder {
    std::vector<std::string> names;
    std::vector<Cost> costs;
    std::vector<std::pair<VertexId, VertexId>> edges;
    bool strict = false;

    VertexId add_vertex(std::string name, Cost cost = 1) {
      names.push_back(std::move(name));
      costs.push_back(cost);
      return static_cast<VertexId>(names.size() - 1);
    }
    void add_edge(VertexId u, VertexId v) { edges.emplace_back(u, v); }
  };

  /// Validates, prunes/rejects isolated vertices per strict mode, attaches
  /// virtual endpoints if the graph has several roots or leaves, and computes
  /// the topological order and reachability closure.
  static CompGraph build(Builder b, std::vector<std::string>* warnings = nullptr);

  std::size_t n_vertices() const { return costs_.size(); }
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
  Cost cost(VertexId v) const { return costs_[v]; }
  const std::string& name(VertexId v) const { return names_[v]; }
  VertexId source() const { return source_; }
  VertexId sink() const { return sink_; }

  const std::vector<VertexId>& topo_order() const { return topo_order_; }
  std::size_t topo_index(VertexId v) const { return topo_index_[v]; }

  const std::vector<VertexId>& successors(VertexId v) const { return out_[v]; }
  const std::vector<VertexId>& predecessors(VertexId v) const { return in_[v]; }

  bool has_edge(VertexId u, VertexId v) const {
    const auto& s = out_[u];
    return std::find(s.begin(), s.end(), v) != s.end();
  }

  /// Undirected adjacency.
  bool connected(VertexId u, VertexId v) const { return has_edge(u, v) || has_edge(v, u); }

  /// Reflexive-transitive closure of the edge relation.
  bool reaches(VertexId u, VertexId v) const { return reach_[u].test(v); }

  /// Interior vertices: everything except source and sink. Their costs form
  /// the objective; endpoint costs are reported separately.
  VertexSet interior() const {
    VertexSet s(n_vertices());
    for (VertexId v = 0; v < n_vertices(); ++v)
      if (v != source_ && v != sink_) s.set(v);
    return s;
  }

  Cost interior_total() const {
    Cost t = 0;
    for (VertexId v = 0; v < n_vertices(); ++v)
      if (v != source_ && v != sink_) t += costs_[v];
    return t;
  }

  bool is_interior(VertexId v) const { return v != source_ && v != sink_; }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    for (VertexId v = 0; v < n_vertices(); ++v)
      if (names_[v] == name) return v;
    return std::nullopt;
  }

private:
  std::vector<std::string> names_;
  std::vector<Cost> costs_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::vector<VertexId>> out_, in_;
  std::vector<VertexId> topo_order_;
  std::vector<std::size_t> topo_index_;
  std::vector<VertexSet> reach_;
  VertexId source_ = 0, sink_ = 0;
};

/// Sum of cost(v) for v in s.
inline Cost interior_cost(const CompGraph& g, const VertexSet& s) {
  Cost t = 0;
  for (auto v : s.to_indices()) t += g.cost(v);
  return t;
}

namespace detail {

inline std::vector<VertexId> toposort(std::size_t n,
                                      const std::vector<std::vector<VertexId>>& out,
                                      const std::vector<std::vector<VertexId>>& in) {
  std::vector<std::size_t> indeg(n);
  for (VertexId v = 0; v < n; ++v) indeg[v] = in[v].size();
  // Kahn's algorithm; ties resolved by smallest id for determinism.
  std::vector<VertexId> ready;
  for (VertexId v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::vector<VertexId> order;
  order.reserve(n);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    VertexId v = *it;
    ready.erase(it);
    order.push_back(v);
    for (VertexId w : out[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (order.size() != n) throw ValidationError("graph contains a cycle");
  return order;
}

}  // namespace detail

inline CompGraph CompGraph::build(Builder b, std::vector<std::string>* warnings) {
  const auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };

  for (std::size_t i = 0; i < b.costs.size(); ++i)
    if (b.costs[i] < 0)
      throw ValidationError("negative cost on vertex '" + b.names[i] + "'");

  for (auto [u, v] : b.edges) {
    if (u >= b.names.size() || v >= b.names.size())
      throw ValidationError("edge references unknown vertex");
    if (u == v) throw ValidationError("self-loop on vertex '" + b.names[u] + "'");
  }
  std::sort(b.edges.begin(), b.edges.end());
  auto dup = std::adjacent_find(b.edges.begin(), b.edges.end());
  if (dup != b.edges.end()) {
    if (b.strict)
      throw ValidationError("duplicate edge " + b.names[dup->first] + " -> " +
                            b.names[dup->second]);
    warn("duplicate edges removed");
    b.edges.erase(std::unique(b.edges.begin(), b.edges.end()), b.edges.end());
  }

  // Isolated vertices are the one case of "not on any s->t path": strict mode
  // rejects them, lenient mode prunes them. A lone single-vertex graph is
  // legal (it acts as both source and sink).
  if (b.names.size() > 1) {
    std::vector<bool> touched(b.names.size(), false);
    for (auto [u, v] : b.edges) touched[u] = touched[v] = true;
    std::vector<VertexId> remap(b.names.size());
    bool pruned = false;
    Builder kept;
    kept.strict = b.strict;
    for (VertexId v = 0; v < b.names.size(); ++v) {
      if (!touched[v]) {
        if (b.strict)
          throw ValidationError("vertex '" + b.names[v] + "' lies on no source-sink path");
        warn("pruned isolated vertex '" + b.names[v] + "'");
        pruned = true;
        continue;
      }
      remap[v] = kept.add_vertex(b.names[v], b.costs[v]);
    }
    if (pruned) {
      if (kept.names.empty()) throw ValidationError("graph has no connected vertices");
      for (auto [u, v] : b.edges) kept.add_edge(remap[u], remap[v]);
      b = std::move(kept);
    }
  }

  const std::size_t n0 = b.names.size();
  if (n0 == 0) throw ValidationError("graph has no vertices");

  std::vector<std::vector<VertexId>> out(n0), in(n0);
  for (auto [u, v] : b.edges) {
    out[u].push_back(v);
    in[v].push_back(u);
  }

  std::vector<VertexId> roots, leaves;
  for (VertexId v = 0; v < n0; ++v) {
    if (in[v].empty()) roots.push_back(v);
    if (out[v].empty()) leaves.push_back(v);
  }

  CompGraph g;
  g.names_ = std::move(b.names);
  g.costs_ = std::move(b.costs);
  g.edges_ = std::move(b.edges);

  auto fresh_name = [&](const char* base) {
    std::string name = base;
    while (std::find(g.names_.begin(), g.names_.end(), name) != g.names_.end())
      name = "_" + name;
    return name;
  };

  if (n0 == 1) {
    // Degenerate single-vertex graph: the vertex is both endpoints.
    g.source_ = g.sink_ = 0;
  } else {
    if (roots.size() == 1) {
      g.source_ = roots[0];
    } else {
      g.source_ = static_cast<VertexId>(g.names_.size());
      g.names_.push_back(fresh_name("_s"));
      g.costs_.push_back(0);
      for (VertexId r : roots) g.edges_.emplace_back(g.source_, r);
    }
    if (leaves.size() == 1) {
      g.sink_ = leaves[0];
    } else {
      g.sink_ = static_cast<VertexId>(g.names_.size());
      g.names_.push_back(fresh_name("_t"));
      g.costs_.push_back(0);
      for (VertexId l : leaves) g.edges_.emplace_back(l, g.sink_);
    }
  }

  const std::size_t n = g.names_.size();
  std::sort(g.edges_.begin(), g.edges_.end());
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  for (auto [u, v] : g.edges_) {
    g.out_[u].push_back(v);
    g.in_[v].push_back(u);
  }

  g.topo_order_ = detail::toposort(n, g.out_, g.in_);
  g.topo_index_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) g.topo_index_[g.topo_order_[i]] = i;

  // Reachability closure, reflexive, computed in reverse topological order.
  g.reach_.assign(n, VertexSet(n));
  for (auto it = g.topo_order_.rbegin(); it != g.topo_order_.rend(); ++it) {
    VertexId v = *it;
    g.reach_[v].set(v);
    for (VertexId w : g.out_[v]) g.reach_[v] |= g.reach_[w];
  }
  return g;
}

/// Re-normalizes an already-built graph. Building is itself normalizing, so
/// this is the identity; it exists to make idempotence testable.
inline CompGraph normalize(const CompGraph& g) {
  CompGraph::Builder b;
  for (VertexId v = 0; v < g.n_vertices(); ++v) b.add_vertex(g.name(v), g.cost(v));
  for (auto [u, v] : g.edges()) b.add_edge(u, v);
  return CompGraph::build(std::move(b));
}

/// Directed path u -> ... -> v exists (reflexively true for u == v).
inline bool reaches(const CompGraph& g, VertexId u, VertexId v) { return g.reaches(u, v); }

/// True iff every vertex has in-degree <= 1 and out-degree <= 1, i.e. the
/// normalized graph is a single path from source to sink.
inline bool is_linear_chain(const CompGraph& g) {
  for (VertexId v = 0; v < g.n_vertices(); ++v)
    if (g.successors(v).size() > 1 || g.predecessors(v).size() > 1) return false;
  return true;
}

/// Structural equality (names, costs, edges, endpoints) for idempotence tests.
inline bool structurally_equal(const CompGraph& a, const CompGraph& b) {
  if (a.n_vertices() != b.n_vertices() || a.edges() != b.edges()) return false;
  for (VertexId v = 0; v < a.n_vertices(); ++v)
    if (a.name(v) != b.name(v) || a.cost(v) != b.cost(v)) return false;
  return a.source() == b.source() && a.sink() == b.sink();
}

}  // namespace reforward
