#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "reforward/graph.hpp"
#include "reforward/objective.hpp"

namespace reforward {

/// Exact reduced fraction, used for the closed-form uniform-chain cost.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    std::int64_t g = std::gcd(n, d);
    return {n / g, d / g};
  }
  bool operator==(const Rational&) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct AnalyticUniform {
  std::int64_t k = 0;        // number of stored vertices
  Rational relative_cost;    // k/n + 1/k
};

/// Closed-form solution for a uniform unit-cost chain of n interior vertices:
/// storing k evenly spaced vertices costs k/n + 1/k of the original, minimized
/// near k = sqrt(n). Used as a reference bound, not by the solvers.
inline AnalyticUniform analytic_uniform(std::int64_t n) {
  auto rel = [n](std::int64_t k) { return Rational::make(k * k + n, n * k); };
  std::int64_t lo = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (lo * lo > n) --lo;
  while ((lo + 1) * (lo + 1) <= n) ++lo;
  if (lo < 1) lo = 1;
  std::int64_t hi = (lo * lo == n) ? lo : lo + 1;
  Rational rlo = rel(lo), rhi = rel(hi);
  // Prefer the smaller k on ties, consistent with the fewer-stored tie-break.
  if (rhi.num * rlo.den < rlo.num * rhi.den) return {hi, rhi};
  return {lo, rlo};
}

/// Chain positions 0..m+1 with 0 = source and m+1 = sink; an edge (i, j)
/// exists iff the cost of the interior vertices strictly between them is at
/// most the max term. Consecutive positions are always connected.
struct AccessibilityGraph {
  std::vector<VertexId> chain;     // vertices in path order, endpoints included
  Cost max_term = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // position pairs, i < j
  std::vector<Cost> prefix;        // prefix[i] = cost of chain[1..i-1]... see below

  /// Cost of interior vertices strictly between positions i and j.
  Cost between(std::uint32_t i, std::uint32_t j) const { return prefix[j] - prefix[i + 1]; }
};

namespace detail {

inline std::vector<VertexId> chain_order(const CompGraph& g) {
  // For a linear chain the topological order is the path itself.
  return g.topo_order();
}

}  // namespace detail

inline AccessibilityGraph build_accessibility_graph(const CompGraph& chain, Cost max_term) {
  AccessibilityGraph ag;
  ag.chain = detail::chain_order(chain);
  ag.max_term = max_term;
  const std::size_t m = ag.chain.size();
  ag.prefix.assign(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) ag.prefix[i + 1] = ag.prefix[i] + chain.cost(ag.chain[i]);
  for (std::uint32_t i = 0; i + 1 < m; ++i)
    for (std::uint32_t j = i + 1; j < m; ++j)
      if (ag.between(i, j) <= max_term) ag.edges.emplace_back(i, j);
  return ag;
}

struct LcgSolution {
  VertexSet stored;
  Cost stored_cost = 0;
  Cost max_term = 0;   // realized, recomputed from the chosen path
  Cost total = 0;
};

/// Cheapest source-to-sink path in the accessibility graph, weighting each
/// intermediate vertex by its cost (endpoints are free). Ties prefer fewer
/// stored vertices, then the lexicographically smallest stored sequence.
inline LcgSolution shortest_stored_path(const CompGraph& chain, const AccessibilityGraph& ag) {
  const std::size_t m = ag.chain.size();
  struct State {
    Cost dist = -1;
    std::uint32_t hops = 0;
    std::vector<std::uint32_t> path;  // interior positions, ascending
  };
  std::vector<State> best(m);
  best[0].dist = 0;

  // Positions only increase along edges, so a single pass in order works.
  std::vector<std::vector<std::uint32_t>> preds(m);
  for (auto [i, j] : ag.edges) preds[j].push_back(i);

  for (std::uint32_t j = 1; j < m; ++j) {
    for (std::uint32_t i : preds[j]) {
      if (best[i].dist < 0) continue;
      Cost w = (j + 1 == m) ? 0 : chain.cost(ag.chain[j]);
      Cost cand = best[i].dist + w;
      State& cur = best[j];
      bool take = false;
      if (cur.dist < 0 || cand < cur.dist) {
        take = true;
      } else if (cand == cur.dist) {
        std::uint32_t hops = best[i].hops + 1;
        if (hops < cur.hops) {
          take = true;
        } else if (hops == cur.hops) {
          auto candidate_path = best[i].path;  // compare before materializing j
          if (j + 1 != m) candidate_path.push_back(j);
          take = candidate_path < cur.path;
        }
      }
      if (take) {
        cur.dist = cand;
        cur.hops = best[i].hops + 1;
        cur.path = best[i].path;
        if (j + 1 != m) cur.path.push_back(j);
      }
    }
  }

  const State& fin = best[m - 1];
  LcgSolution sol;
  sol.stored = VertexSet(chain.n_vertices());
  for (auto pos : fin.path) sol.stored.set(ag.chain[pos]);
  sol.stored_cost = fin.dist;
  // Realized max term from the chosen path, not the candidate bound.
  Cost realized = 0;
  std::uint32_t prev = 0;
  auto leap = [&](std::uint32_t to) {
    realized = std::max(realized, ag.between(prev, to));
    prev = to;
  };
  for (auto pos : fin.path) leap(pos);
  leap(static_cast<std::uint32_t>(m - 1));
  sol.max_term = realized;
  sol.total = sol.stored_cost + sol.max_term;
  return sol;
}

/// Exact solver for linear computation graphs: traverses every candidate max
/// term (the interior cost of each vertex pair, plus zero), solves the
/// constrained problem as a shortest path, and keeps the best realized total.
inline LcgSolution solve_lcg(const CompGraph& chain) {
  const auto order = detail::chain_order(chain);
  const std::size_t m = order.size();
  std::vector<Cost> prefix(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + chain.cost(order[i]);

  std::vector<Cost> candidates{0};
  for (std::uint32_t i = 0; i + 1 < m; ++i)
    for (std::uint32_t j = i + 1; j < m; ++j)
      candidates.push_back(prefix[j] - prefix[i + 1]);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  LcgSolution best;
  bool have = false;
  for (Cost c : candidates) {
    // Once the bound alone exceeds the best total, no later candidate can
    // improve it: any better solution with realized max below this bound was
    // already found at that smaller candidate.
    if (have && c > best.total) break;
    auto ag = build_accessibility_graph(chain, c);
    auto sol = shortest_stored_path(chain, ag);
    if (!have || sol.total < best.total ||
        (sol.total == best.total && sol.stored.count() < best.stored.count()) ||
        (sol.total == best.total && sol.stored.count() == best.stored.count() &&
         VertexSet::compare_lex(sol.stored, best.stored) < 0)) {
      best = sol;
      have = true;
    }
  }
  return best;
}

}  // namespace reforward
