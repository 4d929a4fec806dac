#pragma once

// Canonical test graphs shared across the suites. Unit costs unless noted.

#include "reforward/generators.hpp"
#include "reforward/graph.hpp"

namespace fixtures {

using reforward::CompGraph;
using reforward::Cost;
using reforward::VertexId;

// F1: chain s -> v1 -> v2 -> v3 -> v4 -> t.
inline CompGraph f1() { return reforward::gen_chain(4); }

// F2: diamond s -> a -> t, s -> b -> t.
inline CompGraph f2() {
  CompGraph::Builder b;
  auto s = b.add_vertex("s", 1);
  auto a = b.add_vertex("a", 1);
  auto bb = b.add_vertex("b", 1);
  auto t = b.add_vertex("t", 1);
  b.add_edge(s, a);
  b.add_edge(s, bb);
  b.add_edge(a, t);
  b.add_edge(bb, t);
  return CompGraph::build(std::move(b));
}

// F3: residual block s -> v1 -> v2 -> t plus skip edge s -> v2.
inline CompGraph f3() {
  CompGraph::Builder b;
  auto s = b.add_vertex("s", 1);
  auto v1 = b.add_vertex("v1", 1);
  auto v2 = b.add_vertex("v2", 1);
  auto t = b.add_vertex("t", 1);
  b.add_edge(s, v1);
  b.add_edge(v1, v2);
  b.add_edge(v2, t);
  b.add_edge(s, v2);
  return CompGraph::build(std::move(b));
}

// F4: v1 -> v2 -> v3 -> v4 plus v1 -> v3 (4 vertices, 4 edges). The closed
// set between v1 and v3 exists ({v2}); none exists between v2 and v4.
inline CompGraph f4() {
  CompGraph::Builder b;
  auto v1 = b.add_vertex("v1", 1);
  auto v2 = b.add_vertex("v2", 1);
  auto v3 = b.add_vertex("v3", 1);
  auto v4 = b.add_vertex("v4", 1);
  b.add_edge(v1, v2);
  b.add_edge(v2, v3);
  b.add_edge(v3, v4);
  b.add_edge(v1, v3);
  return CompGraph::build(std::move(b));
}

// The non-branched (type 3) showcase: chain 1..4 with both chords 1->3 and
// 2->4. Its maximal split is the five edge-only sets.
inline CompGraph fig4c() {
  CompGraph::Builder b;
  auto v1 = b.add_vertex("v1", 1);
  auto v2 = b.add_vertex("v2", 1);
  auto v3 = b.add_vertex("v3", 1);
  auto v4 = b.add_vertex("v4", 1);
  b.add_edge(v1, v2);
  b.add_edge(v2, v3);
  b.add_edge(v3, v4);
  b.add_edge(v1, v3);
  b.add_edge(v2, v4);
  return CompGraph::build(std::move(b));
}

// Splittable showcase: a diamond (1 -> a -> 2, 1 -> b -> 2) followed by an
// edge 2 -> 3; vertex 2 is the splitting vertex of the whole set.
inline CompGraph fig3b() {
  CompGraph::Builder b;
  auto v1 = b.add_vertex("v1", 1);
  auto a = b.add_vertex("a", 1);
  auto bb = b.add_vertex("b", 1);
  auto v2 = b.add_vertex("v2", 1);
  auto v3 = b.add_vertex("v3", 1);
  b.add_edge(v1, a);
  b.add_edge(v1, bb);
  b.add_edge(a, v2);
  b.add_edge(bb, v2);
  b.add_edge(v2, v3);
  return CompGraph::build(std::move(b));
}

// Three parallel single-vertex branches between the endpoints.
inline CompGraph fig4b() {
  CompGraph::Builder b;
  auto s = b.add_vertex("s", 1);
  auto p1 = b.add_vertex("p1", 1);
  auto p2 = b.add_vertex("p2", 1);
  auto p3 = b.add_vertex("p3", 1);
  auto t = b.add_vertex("t", 1);
  for (auto v : {p1, p2, p3}) {
    b.add_edge(s, v);
    b.add_edge(v, t);
  }
  return CompGraph::build(std::move(b));
}

inline VertexId vid(const CompGraph& g, const std::string& name) {
  auto v = g.find_vertex(name);
  if (!v) throw std::runtime_error("fixture has no vertex '" + name + "'");
  return *v;
}

inline reforward::VertexSet make_set(const CompGraph& g, std::initializer_list<const char*> names) {
  reforward::VertexSet s(g.n_vertices());
  for (auto* n : names) s.set(vid(g, n));
  return s;
}

}  // namespace fixtures
