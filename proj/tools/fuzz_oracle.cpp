// Development harness: random DAGs, solver vs brute-force oracle.
// Usage: fuzz_oracle [count] [max_n] [seed0] [edge_prob] [cost_max]

#include <cstdlib>
#include <iostream>

#include "reforward/reforward.hpp"

using namespace reforward;

int main(int argc, char** argv) {
  int count = argc > 1 ? std::atoi(argv[1]) : 500;
  int max_n = argc > 2 ? std::atoi(argv[2]) : 12;
  std::uint64_t seed0 = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1000;
  double prob = argc > 4 ? std::atof(argv[4]) : 0.3;
  Cost cost_max = argc > 5 ? std::atoll(argv[5]) : 8;

  int failures = 0;
  for (int i = 0; i < count; ++i) {
    std::uint64_t seed = seed0 + static_cast<std::uint64_t>(i);
    std::size_t n = 3 + seed % static_cast<std::uint64_t>(max_n - 2);
    CompGraph g = gen_random(n, prob, seed, 1, cost_max);
    Solution solver, oracle;
    try {
      solver = solve_acg(g);
      oracle = oracle_min(g);
    } catch (const Error& e) {
      std::cout << "seed " << seed << " n=" << n << " EXCEPTION: " << e.what() << "\n";
      ++failures;
      continue;
    }
    if (solver.total != oracle.total) {
      std::cout << "seed " << seed << " n=" << n << " MISMATCH solver=" << solver.total
                << " oracle=" << oracle.total << "\n";
      std::cout << graph_to_json(g).dump() << "\n";
      ++failures;
    }
    // The simulator must agree with the objective on both solutions.
    try {
      simulate(g, solver);
      simulate(g, oracle);
    } catch (const Error& e) {
      std::cout << "seed " << seed << " SIM FAIL: " << e.what() << "\n";
      ++failures;
    }
  }
  std::cout << (failures == 0 ? "OK " : "FAILED ") << count << " graphs, " << failures
            << " failures\n";
  return failures == 0 ? 0 : 1;
}
