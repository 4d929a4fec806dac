#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "reforward/graph.hpp"

namespace reforward {

/// An independent subgraph spanned between an entry and an exit vertex: every
/// member lies between them and no member touches anything outside the set.
/// The direct entry->exit edge, when present in the graph, may or may not be
/// part of a particular set instance (a branch decomposition can strip it).
struct ClosedSet {
  VertexId entry = 0;
  VertexId exit = 0;
  VertexSet members;               // interior vertices, excludes entry/exit
  bool includes_direct_edge = false;
  Cost cost = 0;                   // interior cost of members

  bool empty_interior() const { return !members.any(); }
};

enum class ClosedSetType { Splittable, Branched, NonBranched };

inline const char* to_string(ClosedSetType t) {
  switch (t) {
    case ClosedSetType::Splittable: return "splittable";
    case ClosedSetType::Branched: return "branched";
    case ClosedSetType::NonBranched: return "non-branched";
  }
  return "?";
}

namespace detail {

/// Adjacency within a closed-set instance: all graph edges among the closure,
/// minus the direct entry->exit edge when this instance excludes it.
inline bool cs_connected(const CompGraph& g, const ClosedSet& cs, VertexId a, VertexId b) {
  bool is_direct = (a == cs.entry && b == cs.exit) || (a == cs.exit && b == cs.entry);
  if (is_direct && !cs.includes_direct_edge) return false;
  return g.connected(a, b);
}

inline std::vector<VertexId> closure_vertices(const ClosedSet& cs) {
  std::vector<VertexId> vs{cs.entry};
  for (auto v : cs.members.to_indices()) vs.push_back(v);
  vs.push_back(cs.exit);
  return vs;
}

}  // namespace detail

inline ClosedSet make_closed_set(const CompGraph& g, VertexId entry, VertexId exit,
                                 VertexSet members, bool includes_direct_edge) {
  ClosedSet cs;
  cs.entry = entry;
  cs.exit = exit;
  cs.cost = interior_cost(g, members);
  cs.members = std::move(members);
  cs.includes_direct_edge = includes_direct_edge;
  return cs;
}

/// Whole graph viewed as the closed set between source and sink.
inline ClosedSet whole_graph_set(const CompGraph& g) {
  return make_closed_set(g, g.source(), g.sink(), g.interior(),
                         g.has_edge(g.source(), g.sink()));
}

/// Splitting-vertex test: v splits cs iff the vertices before v and after v
/// (within the closure) cover the whole closure, are disjoint, and share no
/// edge, so cs decomposes into two serially composed closed sets at v.
inline bool is_splitting_vertex(const ClosedSet& cs, VertexId v, const CompGraph& g) {
  const auto closure = detail::closure_vertices(cs);
  std::vector<VertexId> v_in, v_out;
  for (VertexId u : closure) {
    if (u == v) continue;
    bool before = g.reaches(u, v);
    bool after = g.reaches(v, u);
    if (before && after) return false;  // would be a cycle
    if (before) v_in.push_back(u);
    else if (after) v_out.push_back(u);
    else return false;  // u untouched by v: cover fails
  }
  for (VertexId a : v_in)
    for (VertexId b : v_out)
      if (detail::cs_connected(g, cs, a, b)) return false;
  return true;
}

/// Branch test: a set with members and the direct edge is branched (the edge
/// alone forms a closed set), and so is one whose members do not form a single
/// connected block. Connectivity grows from the lowest-topo member; the result
/// is seed-independent, the fixed seed just makes runs reproducible.
inline bool is_branched(const ClosedSet& cs, const CompGraph& g) {
  auto members = cs.members.to_indices();
  if (members.empty()) return false;
  if (cs.includes_direct_edge) return true;

  VertexId seed = members[0];
  for (VertexId v : members)
    if (g.topo_index(v) < g.topo_index(seed)) seed = v;

  VertexSet grown(g.n_vertices());
  grown.set(seed);
  std::vector<VertexId> frontier{seed};
  while (!frontier.empty()) {
    VertexId v = frontier.back();
    frontier.pop_back();
    for (VertexId w : members) {
      if (grown.test(w)) continue;
      if (g.connected(v, w)) {
        grown.set(w);
        frontier.push_back(w);
      }
    }
  }
  for (VertexId v : members)
    if (!grown.test(v)) return true;
  return false;
}

inline ClosedSetType classify(const ClosedSet& cs, const CompGraph& g) {
  for (auto v : cs.members.to_indices())
    if (is_splitting_vertex(cs, v, g)) return ClosedSetType::Splittable;
  if (is_branched(cs, g)) return ClosedSetType::Branched;
  return ClosedSetType::NonBranched;
}

namespace detail {

/// Largest closed set between (k, t) inside the given parent set, or the
/// edge-only set when the full candidate is not independent but the direct
/// edge exists. Returns nothing when neither variant is a closed set.
inline std::optional<ClosedSet> form_closed_set_within(const CompGraph& g, const ClosedSet& parent,
                                                       VertexId k, VertexId t) {
  VertexSet cand(g.n_vertices());
  for (auto v : parent.members.to_indices())
    if (v != k && v != t && g.reaches(k, v) && g.reaches(v, t)) cand.set(v);

  bool direct = cs_connected(g, parent, k, t) && g.has_edge(k, t);
  if (cand.any()) {
    bool independent = true;
    const auto closure = closure_vertices(parent);
    for (auto v : cand.to_indices()) {
      for (VertexId u : closure) {
        if (u == k || u == t || cand.test(u)) continue;
        if (cs_connected(g, parent, v, u)) {
          independent = false;
          break;
        }
      }
      if (!independent) break;
    }
    if (independent) return make_closed_set(g, k, t, std::move(cand), direct);
    // Fall through: the largest candidate fails Property 3; the direct edge
    // alone can still form a (smaller) closed set between the pair.
  }
  if (direct) return make_closed_set(g, k, t, VertexSet(g.n_vertices()), true);
  return std::nullopt;
}

inline bool topo_pair_less(const CompGraph& g, const ClosedSet& a, const ClosedSet& b) {
  auto ka = g.topo_index(a.entry), kb = g.topo_index(b.entry);
  if (ka != kb) return ka < kb;
  return g.topo_index(a.exit) < g.topo_index(b.exit);
}

}  // namespace detail

/// All closed sets of the graph, the largest one per (entry, exit) pair,
/// ordered by (entry, exit) topological index. Smaller same-pair variants
/// only arise as branches during division.
inline std::vector<ClosedSet> enumerate_closed_sets(const CompGraph& g) {
  const auto whole = whole_graph_set(g);
  std::vector<ClosedSet> out;
  const auto& order = g.topo_order();
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (auto cs = detail::form_closed_set_within(g, whole, order[i], order[j]))
        out.push_back(std::move(*cs));
    }
  }
  return out;
}

namespace detail {

/// Edges a formed set contains, as indices into g.edges(). Formed sets carry
/// every graph edge among their closure (they never drop a direct edge).
inline VertexSet edge_indices_of(const CompGraph& g, const ClosedSet& s) {
  VertexSet closure = s.members;
  closure.set(s.entry);
  closure.set(s.exit);
  VertexSet eidx(g.edges().size());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [u, v] = g.edges()[i];
    if (closure.test(u) && closure.test(v)) eidx.set(i);
  }
  return eidx;
}

/// Split members must be disjoint as sets of vertices AND edges; sharing an
/// endpoint is fine, burying another member's endpoint inside an interior is
/// not (that already implies an edge overlap, checked transitively here).
inline bool split_compatible(const CompGraph& g, const std::vector<ClosedSet>& parts) {
  std::vector<VertexSet> edges;
  edges.reserve(parts.size());
  for (const auto& p : parts) edges.push_back(edge_indices_of(g, p));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (parts[i].members.intersects(parts[j].members)) return false;
      if (edges[i].intersects(edges[j])) return false;
    }
  return true;
}

inline bool split_covers(const CompGraph& g, const ClosedSet& cs,
                         const std::vector<ClosedSet>& parts) {
  VertexSet cover(g.n_vertices());
  cover.set(cs.entry);
  cover.set(cs.exit);
  VertexSet edge_cover(g.edges().size());
  for (const auto& p : parts) {
    cover |= p.members;
    cover.set(p.entry);
    cover.set(p.exit);
    edge_cover |= edge_indices_of(g, p);
  }
  VertexSet want = cs.members;
  want.set(cs.entry);
  want.set(cs.exit);
  if (cover != want) return false;
  return edge_indices_of(g, cs).is_subset_of(edge_cover);
}

}  // namespace detail

/// Maximal split of a non-branched set with no splitting vertex: every closed
/// set formable strictly inside it that no other formed set strictly contains.
/// Their closures cover the parent and they are pairwise disjoint (vertices
/// and edges). On graphs where the containment filter alone leaves survivors
/// that overlap without containment, the split falls back to a deterministic
/// largest-first packing, and past that to single edges.
inline std::vector<ClosedSet> maximal_split(const ClosedSet& cs, const CompGraph& g) {
  const auto closure = detail::closure_vertices(cs);
  std::vector<VertexId> by_topo = closure;
  std::sort(by_topo.begin(), by_topo.end(),
            [&](VertexId a, VertexId b) { return g.topo_index(a) < g.topo_index(b); });

  std::vector<ClosedSet> formed;
  for (std::size_t i = 0; i < by_topo.size(); ++i) {
    for (std::size_t j = i + 1; j < by_topo.size(); ++j) {
      VertexId k = by_topo[i], t = by_topo[j];
      if (k == cs.entry && t == cs.exit) continue;  // the set itself
      if (auto sub = detail::form_closed_set_within(g, cs, k, t))
        formed.push_back(std::move(*sub));
    }
  }

  // Closure containment implies set containment here: formed sets carry all
  // graph edges among their closure, and equal closures mean equal pairs.
  auto closure_of = [&](const ClosedSet& s) {
    VertexSet c = s.members;
    c.set(s.entry);
    c.set(s.exit);
    return c;
  };
  std::vector<ClosedSet> split;
  for (const auto& s : formed) {
    auto sc = closure_of(s);
    bool maximal = true;
    for (const auto& other : formed) {
      if (&other == &s) continue;
      auto oc = closure_of(other);
      if (sc.is_subset_of(oc) && sc != oc) {
        maximal = false;
        break;
      }
    }
    if (maximal) split.push_back(s);
  }
  std::sort(split.begin(), split.end(),
            [&](const ClosedSet& a, const ClosedSet& b) { return detail::topo_pair_less(g, a, b); });
  if (detail::split_compatible(g, split) && detail::split_covers(g, cs, split)) return split;

  // Containment filtering left partially overlapping survivors. Pack greedily
  // by descending closure size; every edge also enters the pool as its own
  // closed set so gaps can always be filled.
  std::vector<ClosedSet> pool = formed;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [u, v] = g.edges()[i];
    VertexSet c = cs.members;
    c.set(cs.entry);
    c.set(cs.exit);
    if (!c.test(u) || !c.test(v)) continue;
    if (u == cs.entry && v == cs.exit) continue;
    pool.push_back(make_closed_set(g, u, v, VertexSet(g.n_vertices()), true));
  }
  std::stable_sort(pool.begin(), pool.end(), [&](const ClosedSet& a, const ClosedSet& b) {
    auto sa = a.members.count(), sb = b.members.count();
    if (sa != sb) return sa > sb;
    return detail::topo_pair_less(g, a, b);
  });
  std::vector<ClosedSet> packed;
  std::vector<VertexSet> packed_edges;
  for (const auto& p : pool) {
    auto pe = detail::edge_indices_of(g, p);
    VertexSet p_closure = p.members;
    p_closure.set(p.entry);
    p_closure.set(p.exit);
    bool ok = true;
    for (std::size_t i = 0; ok && i < packed.size(); ++i) {
      VertexSet q_closure = packed[i].members;
      q_closure.set(packed[i].entry);
      q_closure.set(packed[i].exit);
      if (pe.intersects(packed_edges[i]) || p.members.intersects(q_closure) ||
          packed[i].members.intersects(p_closure))
        ok = false;
    }
    if (!ok) continue;
    packed.push_back(p);
    packed_edges.push_back(std::move(pe));
  }
  std::sort(packed.begin(), packed.end(),
            [&](const ClosedSet& a, const ClosedSet& b) { return detail::topo_pair_less(g, a, b); });
  if (detail::split_compatible(g, packed) && detail::split_covers(g, cs, packed)) return packed;

  // Last resort: atomize into single edges; the solver then treats every
  // member of this set as an individually decidable boundary vertex.
  std::vector<ClosedSet> atoms;
  VertexSet c = cs.members;
  c.set(cs.entry);
  c.set(cs.exit);
  for (auto [u, v] : g.edges()) {
    if (!c.test(u) || !c.test(v)) continue;
    if (u == cs.entry && v == cs.exit) continue;
    atoms.push_back(make_closed_set(g, u, v, VertexSet(g.n_vertices()), true));
  }
  std::sort(atoms.begin(), atoms.end(),
            [&](const ClosedSet& a, const ClosedSet& b) { return detail::topo_pair_less(g, a, b); });
  return atoms;
}

/// Division of a closed set (the children of its division-tree node):
/// Type 1 -> segments between consecutive splitting vertices, Type 2 -> its
/// branches, Type 3 -> its maximal split.
inline std::vector<ClosedSet> divide(const ClosedSet& cs, const CompGraph& g) {
  std::vector<ClosedSet> out;

  std::vector<VertexId> splitters;
  for (auto v : cs.members.to_indices())
    if (is_splitting_vertex(cs, v, g)) splitters.push_back(v);

  if (!splitters.empty()) {
    std::sort(splitters.begin(), splitters.end(),
              [&](VertexId a, VertexId b) { return g.topo_index(a) < g.topo_index(b); });
    std::vector<VertexId> cuts{cs.entry};
    cuts.insert(cuts.end(), splitters.begin(), splitters.end());
    cuts.push_back(cs.exit);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      VertexId a = cuts[i], b = cuts[i + 1];
      VertexSet seg(g.n_vertices());
      for (auto v : cs.members.to_indices())
        if (v != a && v != b && g.reaches(a, v) && g.reaches(v, b)) seg.set(v);
      bool direct = detail::cs_connected(g, cs, a, b) && g.has_edge(a, b);
      out.push_back(make_closed_set(g, a, b, std::move(seg), direct));
    }
    return out;
  }

  if (is_branched(cs, g)) {
    // Repeated connectivity growth: each undirected component of the member
    // graph is one branch; the direct edge, when present, is its own branch.
    auto members = cs.members.to_indices();
    std::sort(members.begin(), members.end(),
              [&](VertexId a, VertexId b) { return g.topo_index(a) < g.topo_index(b); });
    VertexSet assigned(g.n_vertices());
    for (VertexId seed : members) {
      if (assigned.test(seed)) continue;
      VertexSet comp(g.n_vertices());
      comp.set(seed);
      assigned.set(seed);
      std::vector<VertexId> frontier{seed};
      while (!frontier.empty()) {
        VertexId v = frontier.back();
        frontier.pop_back();
        for (VertexId w : members) {
          if (comp.test(w)) continue;
          if (g.connected(v, w)) {
            comp.set(w);
            assigned.set(w);
            frontier.push_back(w);
          }
        }
      }
      out.push_back(make_closed_set(g, cs.entry, cs.exit, std::move(comp), false));
    }
    if (cs.includes_direct_edge)
      out.push_back(make_closed_set(g, cs.entry, cs.exit, VertexSet(g.n_vertices()), true));
    return out;
  }

  return maximal_split(cs, g);
}

}  // namespace reforward
