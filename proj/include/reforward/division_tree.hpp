#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reforward/closed_set.hpp"
#include "reforward/graph.hpp"

namespace reforward {

/// Node of the hierarchical decomposition: the root is the whole graph, inner
/// nodes are closed sets labeled with their division type, and the leaves are
/// the single tensors plus the empty direct-edge segments between them.
/// Boundary vertices introduced by a division (splitting vertices, split
/// boundaries) appear as explicit single-tensor children, so every interior
/// vertex of the graph occurs as exactly one vertex leaf.
struct DivisionTreeNode {
  enum class Kind { Set, Vertex };

  Kind kind = Kind::Set;
  ClosedSet set;                    // valid when kind == Set
  VertexId vertex = 0;              // valid when kind == Vertex
  ClosedSetType type = ClosedSetType::NonBranched;  // meaningful on divided nodes
  bool divided = false;             // false on leaves
  std::vector<std::unique_ptr<DivisionTreeNode>> children;
  std::uint32_t id = 0;             // preorder index, assigned at build

  bool is_vertex_leaf() const { return kind == Kind::Vertex; }
  bool is_leaf() const { return children.empty(); }

  Cost node_cost(const CompGraph& g) const {
    return kind == Kind::Vertex ? g.cost(vertex) : set.cost;
  }
};

namespace detail {

inline void validate_division(const CompGraph& g, const ClosedSet& parent,
                              const std::vector<ClosedSet>& parts) {
  if (parts.empty())
    throw DecompositionError("division of set between '" + g.name(parent.entry) + "' and '" +
                             g.name(parent.exit) + "' is empty");
  VertexSet interiors(g.n_vertices());
  VertexSet cover(g.n_vertices());
  cover.set(parent.entry);
  cover.set(parent.exit);
  for (const auto& p : parts) {
    if (p.members == parent.members && p.entry == parent.entry && p.exit == parent.exit &&
        p.includes_direct_edge == parent.includes_direct_edge)
      throw DecompositionError("division returned the set itself between '" +
                               g.name(parent.entry) + "' and '" + g.name(parent.exit) + "'");
    if (p.members.intersects(interiors))
      throw DecompositionError("division members overlap");
    interiors |= p.members;
    cover |= p.members;
    cover.set(p.entry);
    cover.set(p.exit);
  }
  VertexSet expected = parent.members;
  expected.set(parent.entry);
  expected.set(parent.exit);
  if (cover != expected)
    throw DecompositionError("division closures do not cover the set");

  // No member's endpoint may sit inside another member, and the members must
  // jointly own every edge of the parent exactly once.
  for (const auto& p : parts)
    if (interiors.test(p.entry) || interiors.test(p.exit))
      throw DecompositionError("division member endpoint buried in an interior");
  VertexSet edge_cover(g.edges().size());
  for (const auto& p : parts) {
    auto pe = reforward::detail::edge_indices_of(g, p);
    if (!p.includes_direct_edge)
      for (std::size_t i = 0; i < g.edges().size(); ++i)
        if (g.edges()[i] == std::pair{p.entry, p.exit}) pe.reset(i);
    if (pe.intersects(edge_cover)) throw DecompositionError("division members share an edge");
    edge_cover |= pe;
  }
  auto parent_edges = reforward::detail::edge_indices_of(g, parent);
  if (!parent.includes_direct_edge)
    for (std::size_t i = 0; i < g.edges().size(); ++i)
      if (g.edges()[i] == std::pair{parent.entry, parent.exit}) parent_edges.reset(i);
  if (!parent_edges.is_subset_of(edge_cover))
    throw DecompositionError("division members do not cover all edges");
}

inline void build_node(const CompGraph& g, DivisionTreeNode& node, std::uint32_t& next_id) {
  node.id = next_id++;
  if (node.kind == DivisionTreeNode::Kind::Vertex) return;
  const ClosedSet& cs = node.set;
  if (cs.empty_interior()) return;  // direct-edge leaf

  node.type = classify(cs, g);
  auto parts = divide(cs, g);
  validate_division(g, cs, parts);
  node.divided = true;

  // Interleave the division members with the boundary vertices they
  // introduce, in topological order, so the tensors become leaves.
  VertexSet boundary(g.n_vertices());
  for (const auto& p : parts) {
    if (p.entry != cs.entry && p.entry != cs.exit) boundary.set(p.entry);
    if (p.exit != cs.entry && p.exit != cs.exit) boundary.set(p.exit);
  }
  struct Item {
    bool is_vertex;
    VertexId v;
    const ClosedSet* part;
    std::size_t key0, key1, key2;  // key2 orders same-pair branches
  };
  std::vector<Item> items;
  for (auto v : boundary.to_indices())
    items.push_back({true, v, nullptr, g.topo_index(v), g.topo_index(v), 0});
  for (const auto& p : parts) {
    std::size_t first_member = g.n_vertices() + 1;  // direct-edge branch sorts last
    for (auto v : p.members.to_indices()) first_member = std::min(first_member, g.topo_index(v));
    items.push_back({false, 0, &p, g.topo_index(p.entry), g.topo_index(p.exit), first_member});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.key0 != b.key0) return a.key0 < b.key0;
    if (a.key1 != b.key1) return a.key1 < b.key1;
    if (a.is_vertex != b.is_vertex) return a.is_vertex;
    return a.key2 < b.key2;
  });

  for (const auto& item : items) {
    auto child = std::make_unique<DivisionTreeNode>();
    if (item.is_vertex) {
      child->kind = DivisionTreeNode::Kind::Vertex;
      child->vertex = item.v;
    } else {
      child->kind = DivisionTreeNode::Kind::Set;
      child->set = *item.part;
    }
    build_node(g, *child, next_id);
    node.children.push_back(std::move(child));
  }
}

}  // namespace detail

/// Builds the division tree of a normalized graph by recursive division down
/// to single tensors and empty segments. Deterministic: children are ordered
/// by (entry, exit) topological index.
inline std::unique_ptr<DivisionTreeNode> build_division_tree(const CompGraph& g) {
  auto root = std::make_unique<DivisionTreeNode>();
  root->kind = DivisionTreeNode::Kind::Set;
  root->set = whole_graph_set(g);
  std::uint32_t next_id = 0;
  detail::build_node(g, *root, next_id);
  return root;
}

inline std::size_t count_nodes(const DivisionTreeNode& node) {
  std::size_t n = 1;
  for (const auto& c : node.children) n += count_nodes(*c);
  return n;
}

/// Indented text rendering for the CLI `tree` command.
inline void dump_tree_text(const CompGraph& g, const DivisionTreeNode& node, std::string& out,
                           int depth = 0) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  if (node.kind == DivisionTreeNode::Kind::Vertex) {
    out += g.name(node.vertex) + " (tensor, cost " + std::to_string(g.cost(node.vertex)) + ")\n";
    return;
  }
  out += "[" + g.name(node.set.entry) + " .. " + g.name(node.set.exit) + "]";
  out += " cost=" + std::to_string(node.set.cost);
  if (node.divided) {
    out += " type=";
    out += to_string(node.type);
  } else if (node.set.empty_interior()) {
    out += " (edge)";
  }
  out += "\n";
  for (const auto& c : node.children) dump_tree_text(g, *c, out, depth + 1);
}

/// Name-independent structural fingerprint: isomorphic trees built from
/// relabeled copies of the same graph fingerprint identically.
inline std::string canonical_form(const CompGraph& g, const DivisionTreeNode& node) {
  if (node.kind == DivisionTreeNode::Kind::Vertex)
    return "v:" + std::to_string(g.cost(node.vertex));
  std::string s = node.divided ? std::string("n") + to_string(node.type) : "leaf";
  s += ":" + std::to_string(node.set.cost) + "(";
  std::vector<std::string> kids;
  for (const auto& c : node.children) kids.push_back(canonical_form(g, *c));
  std::sort(kids.begin(), kids.end());
  for (const auto& k : kids) s += k + ",";
  s += ")";
  return s;
}

}  // namespace reforward
