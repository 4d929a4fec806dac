#pragma once

#include <random>
#include <string>

#include "reforward/graph.hpp"

namespace reforward {

/// Standard topology generators used by the CLI and the test suites. All are
/// deterministic for a given seed (std::mt19937_64 with fixed draw order).

/// s -> v1 -> ... -> vn -> t with the given interior costs (unit by default).
inline CompGraph gen_chain(std::size_t n, const std::vector<Cost>& costs = {}) {
  if (n < 1) throw ValidationError("chain needs at least one interior vertex");
  CompGraph::Builder b;
  VertexId s = b.add_vertex("s", 1);
  VertexId prev = s;
  for (std::size_t i = 0; i < n; ++i) {
    Cost c = i < costs.size() ? costs[i] : 1;
    VertexId v = b.add_vertex("v" + std::to_string(i + 1), c);
    b.add_edge(prev, v);
    prev = v;
  }
  VertexId t = b.add_vertex("t", 1);
  b.add_edge(prev, t);
  return CompGraph::build(std::move(b));
}

/// `blocks` residual blocks of `len` unit-cost vertices; each block's input
/// carries a skip edge to the block's output vertex.
inline CompGraph gen_residual(std::size_t blocks, std::size_t len) {
  if (blocks < 1 || len < 1) throw ValidationError("residual needs blocks >= 1, len >= 1");
  CompGraph::Builder b;
  VertexId s = b.add_vertex("s", 1);
  VertexId prev = s;  // block input
  std::size_t idx = 0;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    VertexId block_in = prev;
    for (std::size_t i = 0; i < len; ++i) {
      VertexId v = b.add_vertex("v" + std::to_string(++idx), 1);
      b.add_edge(prev, v);
      prev = v;
    }
    if (len > 1) b.add_edge(block_in, prev);  // skip to block output
  }
  VertexId t = b.add_vertex("t", 1);
  b.add_edge(prev, t);
  return CompGraph::build(std::move(b));
}

/// `blocks` sequential blocks of `width` parallel unit-cost branches joined
/// by junction vertices.
inline CompGraph gen_inception(std::size_t blocks, std::size_t width) {
  if (blocks < 1 || width < 1) throw ValidationError("inception needs blocks, width >= 1");
  CompGraph::Builder b;
  VertexId prev = b.add_vertex("s", 1);
  std::size_t idx = 0;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    VertexId join = b.add_vertex("j" + std::to_string(blk + 1), 1);
    for (std::size_t w = 0; w < width; ++w) {
      VertexId v = b.add_vertex("p" + std::to_string(++idx), 1);
      b.add_edge(prev, v);
      b.add_edge(v, join);
    }
    prev = join;
  }
  VertexId t = b.add_vertex("t", 1);
  b.add_edge(prev, t);
  return CompGraph::build(std::move(b));
}

/// Dense block: vertex i feeds every later vertex j.
inline CompGraph gen_dense(std::size_t k) {
  if (k < 1) throw ValidationError("dense needs at least one vertex");
  CompGraph::Builder b;
  VertexId s = b.add_vertex("s", 1);
  std::vector<VertexId> vs;
  for (std::size_t i = 0; i < k; ++i) vs.push_back(b.add_vertex("v" + std::to_string(i + 1), 1));
  VertexId t = b.add_vertex("t", 1);
  b.add_edge(s, vs.front());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) b.add_edge(vs[i], vs[j]);
  b.add_edge(vs.back(), t);
  return CompGraph::build(std::move(b));
}

/// Random DAG: upper-triangular coin flips with probability p, vertex costs
/// uniform in [cost_min, cost_max], then normalized (virtual endpoints if
/// needed). Identical seeds produce identical graphs.
inline CompGraph gen_random(std::size_t n, double p, std::uint64_t seed, Cost cost_min = 1,
                            Cost cost_max = 1) {
  if (n < 1) throw ValidationError("random needs at least one vertex");
  if (p < 0.0 || p > 1.0) throw ValidationError("edge probability must be in [0, 1]");
  if (cost_min < 0 || cost_max < cost_min) throw ValidationError("bad cost range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Cost> cost_dist(cost_min, cost_max);

  CompGraph::Builder b;
  for (std::size_t i = 0; i < n; ++i)
    b.add_vertex("v" + std::to_string(i + 1), cost_dist(rng));
  bool any_edge = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng) < p) {
        b.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
        any_edge = true;
      }
  if (!any_edge && n > 1)
    for (std::size_t i = 0; i + 1 < n; ++i)
      b.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
  return CompGraph::build(std::move(b));
}

}  // namespace reforward
