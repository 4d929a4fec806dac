#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "reforward/division_tree.hpp"
#include "reforward/graph.hpp"
#include "reforward/objective.hpp"
#include "reforward/simulate.hpp"

namespace reforward {

enum class GraphFormat { Json, Dot };

struct ParseResult {
  CompGraph graph;
  std::vector<std::string> warnings;
};

namespace iodetail {

inline CompGraph::Builder builder_from_json(const std::string& content, bool strict) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("expected an object with 'vertices' and 'edges'");
  if (strict) {
    for (auto& [key, _] : j.items())
      if (key != "vertices" && key != "edges")
        throw ParseError("unknown field '" + key + "'");
  }

  CompGraph::Builder b;
  b.strict = strict;
  std::map<std::string, VertexId> ids;
  for (const auto& v : j["vertices"]) {
    if (!v.is_object() || !v.contains("name"))
      throw ParseError("vertex entries need a 'name'");
    if (strict) {
      for (auto& [key, _] : v.items())
        if (key != "name" && key != "cost")
          throw ParseError("unknown vertex field '" + key + "'");
    }
    std::string name = v["name"].get<std::string>();
    if (ids.count(name)) throw ParseError("duplicate vertex '" + name + "'");
    Cost cost = v.contains("cost") ? v["cost"].get<Cost>() : 1;
    ids[name] = b.add_vertex(name, cost);
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("edge entries must be [from, to] pairs");
    auto u = ids.find(e[0].get<std::string>());
    auto v = ids.find(e[1].get<std::string>());
    if (u == ids.end() || v == ids.end())
      throw ParseError("edge references undeclared vertex");
    b.add_edge(u->second, v->second);
  }
  return b;
}

/// Minimal DOT digraph subset: `digraph name { a -> b; a [cost=4]; }`.
struct DotLexer {
  const std::string& s;
  std::size_t p = 0;

  void skip_ws() {
    while (p < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[p]))) { ++p; continue; }
      if (s[p] == '/' && p + 1 < s.size() && s[p + 1] == '/') {
        while (p < s.size() && s[p] != '\n') ++p;
        continue;
      }
      break;
    }
  }
  bool eat(const char* tok) {
    skip_ws();
    std::size_t n = std::string(tok).size();
    if (s.compare(p, n, tok) == 0) { p += n; return true; }
    return false;
  }
  bool ident(std::string& out) {
    skip_ws();
    out.clear();
    if (p < s.size() && s[p] == '"') {
      ++p;
      while (p < s.size() && s[p] != '"') out += s[p++];
      if (p >= s.size()) throw ParseError("unterminated quoted name");
      ++p;
      return !out.empty();
    }
    while (p < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) out += s[p++];
    return !out.empty();
  }
  bool done() {
    skip_ws();
    return p >= s.size();
  }
};

inline CompGraph::Builder builder_from_dot(const std::string& content, bool strict) {
  DotLexer lx{content};
  if (!lx.eat("digraph")) throw ParseError("expected 'digraph'");
  std::string name;
  lx.ident(name);  // optional graph name
  if (!lx.eat("{")) throw ParseError("expected '{'");

  CompGraph::Builder b;
  b.strict = strict;
  std::map<std::string, VertexId> ids;
  auto vertex = [&](const std::string& n) {
    auto it = ids.find(n);
    if (it != ids.end()) return it->second;
    VertexId v = b.add_vertex(n, 1);
    ids[n] = v;
    return v;
  };

  while (!lx.eat("}")) {
    if (lx.done()) throw ParseError("unexpected end of DOT input");
    std::string head;
    if (!lx.ident(head)) throw ParseError("expected a vertex name");
    VertexId u = vertex(head);
    if (lx.eat("[")) {
      // Attribute list; only 'cost' is meaningful.
      while (!lx.eat("]")) {
        std::string key;
        if (!lx.ident(key)) throw ParseError("expected attribute name");
        if (!lx.eat("=")) throw ParseError("expected '=' in attribute");
        std::string val;
        if (!lx.ident(val)) throw ParseError("expected attribute value");
        if (key == "cost") {
          try {
            b.costs[u] = std::stoll(val);
          } catch (...) {
            throw ParseError("bad cost value '" + val + "'");
          }
        } else if (strict) {
          throw ParseError("unknown attribute '" + key + "'");
        }
        lx.eat(",");
      }
    } else {
      while (lx.eat("->")) {
        std::string next;
        if (!lx.ident(next)) throw ParseError("expected a vertex after '->'");
        VertexId v = vertex(next);
        b.add_edge(u, v);
        u = v;
      }
    }
    lx.eat(";");
  }
  if (!lx.done()) throw ParseError("trailing content after '}'");
  return b;
}

}  // namespace iodetail

/// Parses a graph file, validates it and returns the normalized graph plus
/// any lenient-mode warnings (pruned vertices, deduplicated edges).
inline ParseResult parse_graph(const std::string& content, GraphFormat format,
                               bool strict = false) {
  auto b = format == GraphFormat::Json ? iodetail::builder_from_json(content, strict)
                                       : iodetail::builder_from_dot(content, strict);
  std::vector<std::string> warnings;
  auto g = CompGraph::build(std::move(b), &warnings);
  return {std::move(g), std::move(warnings)};
}

inline GraphFormat guess_format(const std::string& path, const std::string& content) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".dot") return GraphFormat::Dot;
  if (path.size() > 3 && path.substr(path.size() - 3) == ".gv") return GraphFormat::Dot;
  for (char c : content) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? GraphFormat::Json : GraphFormat::Dot;
  }
  return GraphFormat::Json;
}

inline nlohmann::json graph_to_json(const CompGraph& g) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (VertexId v = 0; v < g.n_vertices(); ++v)
    j["vertices"].push_back({{"name", g.name(v)}, {"cost", g.cost(v)}});
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({g.name(u), g.name(v)});
  return j;
}

inline nlohmann::json solution_to_json(const CompGraph& g, const Solution& sol) {
  nlohmann::json j;
  j["stored"] = nlohmann::json::array();
  for (auto v : sol.stored.to_indices()) j["stored"].push_back(g.name(v));
  j["stored_cost"] = sol.stored_cost;
  j["realized_max"] = sol.realized_max;
  j["total"] = sol.total;
  j["candidate_max_term"] = sol.candidate_max_term;
  j["segments"] = nlohmann::json::array();
  for (const auto& seg : sol.segments) {
    nlohmann::json s;
    s["members"] = nlohmann::json::array();
    for (auto v : seg.members.to_indices()) s["members"].push_back(g.name(v));
    s["cost"] = seg.cost;
    j["segments"].push_back(std::move(s));
  }
  const Cost store_all = g.interior_total();
  j["store_all_total"] = store_all;
  j["memory_cut_percent"] =
      store_all > 0 ? 100.0 * (1.0 - static_cast<double>(sol.total) / static_cast<double>(store_all))
                    : 0.0;
  j["endpoints"] = {{"source", {{"name", g.name(g.source())}, {"cost", g.cost(g.source())}}},
                    {"sink", {{"name", g.name(g.sink())}, {"cost", g.cost(g.sink())}}}};
  return j;
}

inline nlohmann::json tree_to_json(const CompGraph& g, const DivisionTreeNode& node) {
  nlohmann::json j;
  if (node.kind == DivisionTreeNode::Kind::Vertex) {
    j["tensor"] = g.name(node.vertex);
    j["cost"] = g.cost(node.vertex);
    return j;
  }
  j["entry"] = g.name(node.set.entry);
  j["exit"] = g.name(node.set.exit);
  j["cost"] = node.set.cost;
  if (node.divided) j["type"] = to_string(node.type);
  if (!node.children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& c : node.children) j["children"].push_back(tree_to_json(g, *c));
  }
  return j;
}

inline nlohmann::json sim_report_to_json(const CompGraph& g, const SimReport& rep) {
  nlohmann::json j;
  j["peak"] = rep.peak;
  j["timeline"] = nlohmann::json::array();
  for (const auto& ev : rep.timeline)
    j["timeline"].push_back({{"event", ev.label}, {"live", ev.live}});
  j["recompute"] = nlohmann::json::object();
  for (auto [v, n] : rep.recompute_count) j["recompute"][g.name(v)] = n;
  return j;
}

}  // namespace reforward
