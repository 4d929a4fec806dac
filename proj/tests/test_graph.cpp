#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "reforward/generators.hpp"
#include "reforward/graph.hpp"
#include "support/fixtures.hpp"

using namespace reforward;

TEST_CASE("fixture shapes") {
  auto g1 = fixtures::f1();
  CHECK(g1.n_vertices() == 6);
  CHECK(g1.edges().size() == 5);
  CHECK(g1.name(g1.source()) == "s");
  CHECK(g1.name(g1.sink()) == "t");

  auto g4 = fixtures::f4();
  CHECK(g4.n_vertices() == 4);
  CHECK(g4.edges().size() == 4);
  CHECK(g4.name(g4.source()) == "v1");
  CHECK(g4.name(g4.sink()) == "v4");
}

TEST_CASE("self-loops are rejected") {
  CompGraph::Builder b;
  auto v = b.add_vertex("v", 1);
  b.add_edge(v, v);
  CHECK_THROWS_AS(CompGraph::build(std::move(b)), ValidationError);
}

TEST_CASE("cycles are rejected") {
  CompGraph::Builder b;
  auto x = b.add_vertex("x", 1);
  auto y = b.add_vertex("y", 1);
  b.add_edge(x, y);
  b.add_edge(y, x);
  CHECK_THROWS_AS(CompGraph::build(std::move(b)), ValidationError);
}

TEST_CASE("multi-root graphs get a virtual source") {
  CompGraph::Builder b;
  auto a = b.add_vertex("a", 1);
  auto bb = b.add_vertex("b", 1);
  auto c = b.add_vertex("c", 1);
  b.add_edge(a, c);
  b.add_edge(bb, c);
  auto g = CompGraph::build(std::move(b));
  CHECK(g.n_vertices() == 4);
  CHECK(g.cost(g.source()) == 0);
  CHECK(g.has_edge(g.source(), fixtures::vid(g, "a")));
  CHECK(g.has_edge(g.source(), fixtures::vid(g, "b")));
  CHECK(g.sink() == fixtures::vid(g, "c"));
}

TEST_CASE("single vertex acts as both endpoints") {
  CompGraph::Builder b;
  b.add_vertex("only", 7);
  auto g = CompGraph::build(std::move(b));
  CHECK(g.source() == g.sink());
  CHECK(g.interior_total() == 0);
}

TEST_CASE("isolated vertices: strict rejects, lenient prunes with warning") {
  auto make = [](bool strict) {
    CompGraph::Builder b;
    b.strict = strict;
    auto x = b.add_vertex("x", 1);
    auto y = b.add_vertex("y", 1);
    b.add_vertex("stray", 1);
    b.add_edge(x, y);
    return b;
  };
  CHECK_THROWS_AS(CompGraph::build(make(true)), ValidationError);
  std::vector<std::string> warnings;
  auto g = CompGraph::build(make(false), &warnings);
  CHECK(g.n_vertices() == 2);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("stray") != std::string::npos);
}

TEST_CASE("normalize is idempotent") {
  for (const auto& g : {fixtures::f1(), fixtures::f2(), fixtures::f3(), fixtures::fig4c()}) {
    auto once = normalize(g);
    auto twice = normalize(once);
    CHECK(structurally_equal(once, twice));
    CHECK(structurally_equal(g, once));  // fixtures are already normalized
  }
}

TEST_CASE("topological order respects every edge") {
  std::mt19937_64 seed_rng(11);
  for (int i = 0; i < 50; ++i) {
    auto g = gen_random(10, 0.3, seed_rng());
    for (auto [u, v] : g.edges()) CHECK(g.topo_index(u) < g.topo_index(v));
  }
}

TEST_CASE("reaches examples") {
  auto g4 = fixtures::f4();
  CHECK(reaches(g4, fixtures::vid(g4, "v1"), fixtures::vid(g4, "v4")));
  CHECK_FALSE(reaches(g4, fixtures::vid(g4, "v3"), fixtures::vid(g4, "v2")));
  auto g2 = fixtures::f2();
  CHECK_FALSE(reaches(g2, fixtures::vid(g2, "a"), fixtures::vid(g2, "b")));
  CHECK(reaches(g2, fixtures::vid(g2, "a"), fixtures::vid(g2, "a")));
}

namespace {

// Independent oracle: boolean matrix powering over <=10-vertex graphs.
std::vector<std::vector<bool>> closure_by_powers(const CompGraph& g) {
  std::size_t n = g.n_vertices();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (auto [u, v] : g.edges()) m[u][v] = true;
  for (std::size_t round = 0; round < n; ++round) {
    auto next = m;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (m[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (m[k][j]) next[i][j] = true;
    m = std::move(next);
  }
  return m;
}

}  // namespace

TEST_CASE("reaches equals the matrix-powering closure") {
  std::mt19937_64 seed_rng(23);
  for (int i = 0; i < 30; ++i) {
    auto g = gen_random(8, 0.3, seed_rng());
    auto m = closure_by_powers(g);
    for (VertexId u = 0; u < g.n_vertices(); ++u)
      for (VertexId v = 0; v < g.n_vertices(); ++v)
        CHECK(g.reaches(u, v) == m[u][v]);
  }
}

TEST_CASE("interior_cost sums member costs") {
  auto g = fixtures::f1();
  CHECK(interior_cost(g, fixtures::make_set(g, {"v1", "v2"})) == 2);
  CHECK(interior_cost(g, VertexSet(g.n_vertices())) == 0);

  auto weighted = gen_chain(3, {1, 5, 1});
  CHECK(interior_cost(weighted, fixtures::make_set(weighted, {"v2", "v3"})) == 6);
}

TEST_CASE("is_linear_chain") {
  CHECK(is_linear_chain(fixtures::f1()));
  CHECK_FALSE(is_linear_chain(fixtures::f2()));
  CHECK_FALSE(is_linear_chain(fixtures::f3()));
}
