#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "reforward/division_tree.hpp"
#include "reforward/graph.hpp"
#include "reforward/lcg.hpp"
#include "reforward/objective.hpp"

namespace reforward {

/// Candidate values for the max term: zero plus the cost of every closed set,
/// including the branch variants that appear as division-tree nodes. Always
/// contains the root (whole interior) cost.
inline std::vector<Cost> build_max_term_list(const CompGraph& g, const DivisionTreeNode& tree) {
  std::vector<Cost> values{0};
  for (const auto& cs : enumerate_closed_sets(g)) values.push_back(cs.cost);
  // Branch variants only appear inside the tree.
  struct Walk {
    std::vector<Cost>& out;
    void operator()(const DivisionTreeNode& n) {
      if (n.kind == DivisionTreeNode::Kind::Set) out.push_back(n.set.cost);
      for (const auto& c : n.children) (*this)(*c);
    }
  } walk{values};
  walk(tree);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

namespace acgdetail {

/// One Pareto point of a node's solution space under a fixed max term.
/// Masses describe recompute units still dangling at the node boundary:
/// `mass_*` are merge-accounting sums, `dang_*` the largest single unit on
/// that side (each individually within the max term). `connected` marks that
/// entry and exit would fall into one unit if both ended up unstored.
struct Option {
  Cost mass_entry = 0, mass_exit = 0, mass_through = 0;
  Cost dang_entry = 0, dang_exit = 0, dang_through = 0;
  bool connected = false;
  Cost stored_cost = 0;
  Cost max_internal = 0;  // largest completed unit inside the node
  VertexSet stored;       // decisions made inside this node's subtree

  bool numerically_equal(const Option& o) const {
    return mass_entry == o.mass_entry && mass_exit == o.mass_exit &&
           mass_through == o.mass_through && dang_entry == o.dang_entry &&
           dang_exit == o.dang_exit && dang_through == o.dang_through &&
           connected == o.connected && stored_cost == o.stored_cost &&
           max_internal == o.max_internal;
  }
};

inline bool dominates(const Option& a, const Option& b) {
  return a.mass_entry <= b.mass_entry && a.mass_exit <= b.mass_exit &&
         a.mass_through <= b.mass_through && a.dang_entry <= b.dang_entry &&
         a.dang_exit <= b.dang_exit && a.dang_through <= b.dang_through &&
         (!a.connected || b.connected) && a.stored_cost <= b.stored_cost &&
         a.max_internal <= b.max_internal;
}

/// Deterministic preference among numerically identical options.
inline bool tie_better(const Option& a, const Option& b) {
  auto ca = a.stored.count(), cb = b.stored.count();
  if (ca != cb) return ca < cb;
  return VertexSet::compare_lex(a.stored, b.stored) < 0;
}

inline void pareto_insert(std::vector<Option>& front, Option o) {
  for (auto& e : front) {
    if (dominates(e, o)) {
      if (e.numerically_equal(o) && tie_better(o, e)) e = std::move(o);
      return;
    }
  }
  std::erase_if(front, [&](const Option& e) { return dominates(o, e); });
  front.push_back(std::move(o));
}

}  // namespace acgdetail

/// Per-graph solver: builds node option frontiers for each candidate max term
/// over the division tree and memoizes them. Stateless apart from the memo;
/// one instance per (graph, tree) pair.
class AcgSolver {
public:
  AcgSolver(const CompGraph& g, const DivisionTreeNode& root) : g_(g), root_(root) {}

  /// All Pareto-optimal (stored cost, max unit) points achievable when every
  /// recompute unit must stay within `max_term`.
  const std::vector<acgdetail::Option>& root_frontier(Cost max_term) {
    auto it = root_memo_.find(max_term);
    if (it != root_memo_.end()) return it->second;
    auto opts = solve_node(root_, max_term, /*root_mode=*/true);
    if (opts.empty())
      throw InternalError("no feasible assignment under max term " + std::to_string(max_term));
    return root_memo_.emplace(max_term, std::move(opts)).first->second;
  }

private:
  using Option = acgdetail::Option;

  static constexpr std::size_t kMaxFreeBoundary = 22;
  static constexpr std::uint64_t kWorkLimit = 40'000'000;

  std::vector<Option> solve_node(const DivisionTreeNode& node, Cost C, bool root_mode) {
    if (!root_mode) {
      auto it = memo_.find({node.id, C});
      if (it != memo_.end()) return it->second;
    }
    std::vector<Option> out;
    if (!node.divided) {
      // Empty direct-edge segment (or a trivial whole graph).
      Option o;
      o.connected = node.kind == DivisionTreeNode::Kind::Set && node.set.includes_direct_edge;
      o.stored = VertexSet(g_.n_vertices());
      out.push_back(std::move(o));
    } else if (node.type == ClosedSetType::Splittable) {
      out = chain_scan(node, C, root_mode);
    } else if (node.type == ClosedSetType::Branched) {
      out = fold_parallel(node, C, root_mode);
    } else {
      out = quotient_search(node, C, root_mode);
    }
    if (!root_mode) memo_.emplace(std::pair{node.id, C}, out);
    return out;
  }

  /// Type 1: the node is a chain of segments joined by splitting vertices.
  /// Left-to-right scan deciding each splitting vertex, tracking the open
  /// recompute unit hanging off the last unstored position.
  std::vector<Option> chain_scan(const DivisionTreeNode& node, Cost C, bool root_mode) {
    std::vector<const DivisionTreeNode*> segs;
    std::vector<VertexId> verts;
    for (const auto& c : node.children) {
      if (c->is_vertex_leaf()) verts.push_back(c->vertex);
      else segs.push_back(c.get());
    }
    const std::size_t m = segs.size();

    std::vector<std::vector<Option>> seg_opts(m);
    for (std::size_t i = 0; i < m; ++i) seg_opts[i] = solve_node(*segs[i], C, false);

    struct State {
      bool open = false;
      Cost mass = 0;
      bool touches_e = false;
      Cost cost = 0, max_i = 0, mass_e = 0, dang_e = 0;
      VertexSet stored;
    };
    auto state_dominates = [](const State& a, const State& b) {
      return a.open == b.open && a.touches_e == b.touches_e && a.mass <= b.mass &&
             a.cost <= b.cost && a.max_i <= b.max_i && a.mass_e <= b.mass_e &&
             a.dang_e <= b.dang_e;
    };
    auto state_equal = [](const State& a, const State& b) {
      return a.open == b.open && a.touches_e == b.touches_e && a.mass == b.mass &&
             a.cost == b.cost && a.max_i == b.max_i && a.mass_e == b.mass_e &&
             a.dang_e == b.dang_e;
    };
    auto insert_state = [&](std::vector<State>& front, State s) {
      for (auto& e : front) {
        if (state_dominates(e, s)) {
          if (state_equal(e, s)) {
            auto cs = s.stored.count(), ce = e.stored.count();
            if (cs < ce || (cs == ce && VertexSet::compare_lex(s.stored, e.stored) < 0))
              e = std::move(s);
          }
          return;
        }
      }
      std::erase_if(front, [&](const State& e) { return state_dominates(s, e); });
      front.push_back(std::move(s));
    };

    std::vector<State> frontier;
    {
      State init;
      init.stored = VertexSet(g_.n_vertices());
      frontier.push_back(std::move(init));
    }

    std::vector<Option> result;
    for (std::size_t i = 0; i < m; ++i) {
      const bool from_collector = (i == 0) && !root_mode;
      const bool to_collector = (i + 1 == m) && !root_mode;
      const bool last = (i + 1 == m);
      std::vector<State> next;
      for (const State& s : frontier) {
        for (const Option& o : seg_opts[i]) {
          // Units dangling on the left side of this segment.
          State base = s;
          base.cost += o.stored_cost;
          base.max_i = std::max(base.max_i, o.max_internal);
          base.stored |= o.stored;
          Cost left_extra = 0;  // merged into the open unit at the left position
          if (s.open) {
            left_extra += o.mass_entry;
          } else if (i == 0 && from_collector) {
            base.mass_e += o.mass_entry;
            base.dang_e = std::max(base.dang_e, o.dang_entry);
          } else {
            base.max_i = std::max(base.max_i, o.dang_entry);
          }

          if (!last) {
            const VertexId v = verts[i];
            // Choice 1: store the splitting vertex.
            {
              State t = base;
              t.cost += g_.cost(v);
              t.stored.set(v);
              bool ok = true;
              if (s.open) {
                Cost unit = s.mass + left_extra + o.mass_through;
                if (unit > C) ok = false;
                if (s.touches_e) {
                  t.mass_e += unit;
                  t.dang_e = std::max(t.dang_e, unit);
                } else {
                  t.max_i = std::max(t.max_i, unit);
                }
              } else if (i == 0 && from_collector) {
                t.mass_e += o.mass_through;
                t.dang_e = std::max(t.dang_e, o.dang_through);
              } else {
                t.max_i = std::max(t.max_i, o.dang_through);
              }
              t.max_i = std::max(t.max_i, o.dang_exit);
              t.open = false;
              t.mass = 0;
              t.touches_e = false;
              if (ok) insert_state(next, std::move(t));
            }
            // Choice 2: leave it unstored; a unit forms or grows through it.
            {
              State t = base;
              bool ok = true;
              Cost right = g_.cost(v) + o.mass_exit;
              if (s.open && o.connected) {
                t.mass = s.mass + left_extra + o.mass_through + right;
                t.touches_e = s.touches_e;
              } else {
                if (s.open) {
                  // The open unit cannot continue through a disconnected
                  // segment; it completes at the segment's left side.
                  Cost unit = s.mass + left_extra;
                  if (unit > C) ok = false;
                  if (s.touches_e) {
                    t.mass_e += unit;
                    t.dang_e = std::max(t.dang_e, unit);
                  } else {
                    t.max_i = std::max(t.max_i, unit);
                  }
                }
                t.mass = right + o.mass_through;
                t.touches_e = (i == 0 && from_collector) ? o.connected : false;
              }
              t.open = true;
              if (t.mass > C) ok = false;
              if (ok) insert_state(next, std::move(t));
            }
          } else {
            // Final segment: the right side is the exit.
            Option fin;
            fin.stored_cost = base.cost;
            fin.max_internal = base.max_i;
            fin.mass_entry = base.mass_e;
            fin.dang_entry = base.dang_e;
            fin.stored = base.stored;
            bool ok = true;
            if (to_collector) {
              fin.mass_exit += o.mass_exit;
              fin.dang_exit = std::max(fin.dang_exit, o.dang_exit);
            } else {
              fin.max_internal = std::max(fin.max_internal, o.dang_exit);
            }
            if (s.open) {
              Cost unit = s.mass + left_extra;
              if (o.connected) {
                unit += o.mass_through;
                if (unit > C) ok = false;
                if (to_collector) {
                  if (s.touches_e) {
                    fin.mass_through += unit;
                    fin.dang_through = std::max(fin.dang_through, unit);
                    fin.connected = true;
                  } else {
                    fin.mass_exit += unit;
                    fin.dang_exit = std::max(fin.dang_exit, unit);
                  }
                } else {
                  fin.max_internal = std::max(fin.max_internal, unit);
                }
              } else {
                if (unit > C) ok = false;
                if (s.touches_e) {
                  fin.mass_entry += unit;
                  fin.dang_entry = std::max(fin.dang_entry, unit);
                } else {
                  fin.max_internal = std::max(fin.max_internal, unit);
                }
              }
            } else {
              // Left side closed: through-units dangle toward the exit.
              if (to_collector) {
                fin.mass_exit += o.mass_through;
                fin.dang_exit = std::max(fin.dang_exit, o.dang_through);
              } else {
                fin.max_internal = std::max(fin.max_internal, o.dang_through);
              }
            }
            if (ok) acgdetail::pareto_insert(result, std::move(fin));
          }
        }
      }
      if (!last) frontier = std::move(next);
      if (frontier.empty() && !last) return {};
    }
    return result;
  }

  /// Type 2: parallel branches between the node endpoints; no new storable
  /// vertices at this level, so options simply aggregate.
  std::vector<Option> fold_parallel(const DivisionTreeNode& node, Cost C, bool root_mode) {
    std::vector<Option> acc;
    {
      Option neutral;
      neutral.stored = VertexSet(g_.n_vertices());
      acc.push_back(std::move(neutral));
    }
    for (const auto& c : node.children) {
      auto child_opts = solve_node(*c, C, false);
      std::vector<Option> next;
      for (const auto& a : acc) {
        for (const auto& o : child_opts) {
          Option t = a;
          t.stored_cost += o.stored_cost;
          t.max_internal = std::max(t.max_internal, o.max_internal);
          t.stored |= o.stored;
          if (root_mode) {
            t.max_internal = std::max({t.max_internal, o.dang_entry, o.dang_exit, o.dang_through});
          } else {
            t.mass_entry += o.mass_entry;
            t.mass_exit += o.mass_exit;
            t.mass_through += o.mass_through;
            t.dang_entry = std::max(t.dang_entry, o.dang_entry);
            t.dang_exit = std::max(t.dang_exit, o.dang_exit);
            t.dang_through = std::max(t.dang_through, o.dang_through);
            t.connected = t.connected || o.connected;
          }
          acgdetail::pareto_insert(next, std::move(t));
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

  /// Type 3: children connect arbitrary pairs of boundary vertices. The
  /// boundary is explored exhaustively; it is small for maximal splits.
  std::vector<Option> quotient_search(const DivisionTreeNode& node, Cost C, bool root_mode) {
    std::vector<const DivisionTreeNode*> kids;
    std::vector<VertexId> bv;
    for (const auto& c : node.children) {
      if (c->is_vertex_leaf()) bv.push_back(c->vertex);
      else kids.push_back(c.get());
    }
    if (bv.size() > kMaxFreeBoundary)
      throw SizeLimitError("maximal split has " + std::to_string(bv.size()) +
                           " boundary vertices; exact search is limited to " +
                           std::to_string(kMaxFreeBoundary));

    const VertexId entry = node.set.entry, exit = node.set.exit;
    std::vector<std::vector<Option>> kid_opts(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i) kid_opts[i] = solve_node(*kids[i], C, false);

    // Position encoding per child endpoint: boundary index, or entry/exit.
    constexpr int kEntry = -1, kExit = -2;
    auto pos_of = [&](VertexId v) -> int {
      if (v == entry) return kEntry;
      if (v == exit) return kExit;
      for (std::size_t i = 0; i < bv.size(); ++i)
        if (bv[i] == v) return static_cast<int>(i);
      throw InternalError("division child endpoint is not a boundary vertex");
    };
    std::vector<std::pair<int, int>> ends(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i)
      ends[i] = {pos_of(kids[i]->set.entry), pos_of(kids[i]->set.exit)};

    for (const auto& opts : kid_opts)
      if (opts.empty()) return {};

    std::vector<Option> result;
    std::vector<std::uint32_t> pick(kids.size(), 0);
    std::uint64_t work = 0;

    const std::uint32_t nmask = static_cast<std::uint32_t>(1u << bv.size());
    for (std::uint32_t mask = 0; mask < nmask; ++mask) {
      // Odometer over the product of child option choices.
      std::size_t depth = 0;
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        if (depth == kids.size()) {
          if (++work > kWorkLimit)
            throw SizeLimitError("exact split search exceeded its work limit");
          evaluate_quotient(C, root_mode, bv, kids, kid_opts, ends, mask, pick, result);
          while (depth > 0 && ++pick[depth - 1] >= kid_opts[depth - 1].size()) {
            pick[depth - 1] = 0;
            --depth;
          }
          if (depth == 0) break;
          continue;
        }
        ++depth;
      }
    }
    return result;
  }

  void evaluate_quotient(Cost C, bool root_mode, const std::vector<VertexId>& bv,
                         const std::vector<const DivisionTreeNode*>& kids,
                         const std::vector<std::vector<Option>>& kid_opts,
                         const std::vector<std::pair<int, int>>& ends, std::uint32_t mask,
                         const std::vector<std::uint32_t>& pick, std::vector<Option>& result) {
    constexpr int kEntry = -1, kExit = -2;
    const std::size_t k = bv.size();
    auto is_stored = [&](int p) { return ((mask >> p) & 1u) != 0; };

    std::vector<int> parent(k);
    for (std::size_t i = 0; i < k; ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };

    for (std::size_t c = 0; c < kids.size(); ++c) {
      const Option& o = kid_opts[c][pick[c]];
      auto [p, q] = ends[c];
      if (p >= 0 && q >= 0 && !is_stored(p) && !is_stored(q) && o.connected)
        parent[find(p)] = find(q);
    }

    std::vector<Cost> mass(k, 0);
    std::vector<bool> t_entry(k, false), t_exit(k, false);
    for (std::size_t i = 0; i < k; ++i)
      if (!is_stored(static_cast<int>(i))) mass[find(static_cast<int>(i))] += g_.cost(bv[i]);

    Option fin;
    fin.stored = VertexSet(g_.n_vertices());
    for (std::size_t i = 0; i < k; ++i)
      if (is_stored(static_cast<int>(i))) {
        fin.stored.set(bv[i]);
        fin.stored_cost += g_.cost(bv[i]);
      }

    auto attach_side = [&](int p, Cost m, Cost dang) {
      // One side of a child's dangling units: merge when the attachment
      // vertex is live, report at collectors, finalize when it is stored.
      if (p >= 0 && !is_stored(p)) {
        mass[find(p)] += m;
      } else if (p == kEntry && !root_mode) {
        fin.mass_entry += m;
        fin.dang_entry = std::max(fin.dang_entry, dang);
      } else if (p == kExit && !root_mode) {
        fin.mass_exit += m;
        fin.dang_exit = std::max(fin.dang_exit, dang);
      } else {
        fin.max_internal = std::max(fin.max_internal, dang);
      }
    };

    for (std::size_t c = 0; c < kids.size(); ++c) {
      const Option& o = kid_opts[c][pick[c]];
      auto [p, q] = ends[c];
      fin.stored_cost += o.stored_cost;
      fin.max_internal = std::max(fin.max_internal, o.max_internal);
      fin.stored |= o.stored;

      attach_side(p, o.mass_entry, o.dang_entry);
      attach_side(q, o.mass_exit, o.dang_exit);

      const bool p_live = p >= 0 && !is_stored(p);
      const bool q_live = q >= 0 && !is_stored(q);
      if (p_live) {
        mass[find(p)] += o.mass_through;
        if (q == kExit && !root_mode && o.connected) t_exit[find(p)] = true;
        if (q == kEntry) throw InternalError("child endpoints out of order");
      } else if (q_live) {
        mass[find(q)] += o.mass_through;
        if (p == kEntry && !root_mode && o.connected) t_entry[find(q)] = true;
      } else {
        // Both attachment points blocked: through-units stand alone, or
        // dangle between the node's own endpoints.
        bool at_entry = p == kEntry && !root_mode;
        bool at_exit = q == kExit && !root_mode;
        if (at_entry && at_exit) {
          fin.mass_through += o.mass_through;
          fin.dang_through = std::max(fin.dang_through, o.dang_through);
          fin.connected = fin.connected || o.connected;
        } else if (at_entry) {
          fin.mass_entry += o.mass_through;
          fin.dang_entry = std::max(fin.dang_entry, o.dang_through);
        } else if (at_exit) {
          fin.mass_exit += o.mass_through;
          fin.dang_exit = std::max(fin.dang_exit, o.dang_through);
        } else {
          fin.max_internal = std::max(fin.max_internal, o.dang_through);
        }
      }
    }

    // Close every component of unstored boundary vertices.
    for (std::size_t i = 0; i < k; ++i) {
      if (is_stored(static_cast<int>(i))) continue;
      if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
      Cost m = mass[i];
      if (m > C) return;
      bool te = t_entry[i] && !root_mode;
      bool tx = t_exit[i] && !root_mode;
      if (te && tx) {
        fin.mass_through += m;
        fin.dang_through = std::max(fin.dang_through, m);
        fin.connected = true;
      } else if (te) {
        fin.mass_entry += m;
        fin.dang_entry = std::max(fin.dang_entry, m);
      } else if (tx) {
        fin.mass_exit += m;
        fin.dang_exit = std::max(fin.dang_exit, m);
      } else {
        fin.max_internal = std::max(fin.max_internal, m);
      }
    }
    if (fin.dang_entry > C || fin.dang_exit > C || fin.dang_through > C) return;
    if (fin.max_internal > C) return;
    acgdetail::pareto_insert(result, std::move(fin));
  }

  const CompGraph& g_;
  const DivisionTreeNode& root_;
  std::map<std::pair<std::uint32_t, Cost>, std::vector<Option>> memo_;
  std::map<Cost, std::vector<Option>> root_memo_;
};

/// Solves the constrained problem for one max-term candidate: the cheapest
/// stored set whose recompute units all stay within the bound. Ties prefer a
/// smaller realized max, then fewer stored vertices, then the smaller set.
inline Solution solve_with_max_term(const CompGraph& g, const DivisionTreeNode& tree,
                                    Cost max_term, AcgSolver* solver = nullptr) {
  std::unique_ptr<AcgSolver> local;
  if (!solver) {
    local = std::make_unique<AcgSolver>(g, tree);
    solver = local.get();
  }
  const auto& frontier = solver->root_frontier(max_term);
  const acgdetail::Option* best = nullptr;
  for (const auto& o : frontier) {
    if (!best || o.stored_cost < best->stored_cost ||
        (o.stored_cost == best->stored_cost && o.max_internal < best->max_internal) ||
        (o.stored_cost == best->stored_cost && o.max_internal == best->max_internal &&
         acgdetail::tie_better(o, *best)))
      best = &o;
  }
  Solution sol = objective_of(g, best->stored);
  sol.candidate_max_term = max_term;
  return sol;
}

/// Full solver: builds the division tree, traverses the max-term candidates
/// in ascending order, scores every frontier point with the real objective,
/// and keeps the best realized total. Deterministic for identical inputs.
inline Solution solve_acg(const CompGraph& g) {
  auto tree = build_division_tree(g);
  AcgSolver solver(g, *tree);
  auto candidates = build_max_term_list(g, *tree);

  Solution best;
  bool have = false;
  for (Cost c : candidates) {
    for (const auto& opt : solver.root_frontier(c)) {
      Solution sol = objective_of(g, opt.stored);
      sol.candidate_max_term = c;
      if (!have || better_solution(sol, best)) {
        best = sol;
        have = true;
      }
    }
    // Any solution not yet covered needs a unit larger than this candidate,
    // so its total exceeds every total already seen once c reaches it.
    if (have && c >= best.total) break;
  }
  return best;
}

}  // namespace reforward
