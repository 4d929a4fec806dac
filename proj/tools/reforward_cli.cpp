// Command-line front end: solve graphs from files, generate standard
// topologies, run oracle/simulator cross-checks, dump division trees, and
// compare checkpoint policies.
//
// Exit codes: 0 success, 1 internal mismatch (oracle or simulator
// disagreement), 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "reforward/reforward.hpp"

namespace rf = reforward;

namespace {

struct CommonOpts {
  std::string input;
  std::string output;
  bool json = false;
  bool strict = false;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw rf::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw rf::ParseError("cannot write '" + path + "'");
  f << content;
}

rf::CompGraph load_graph(const CommonOpts& opts) {
  auto content = read_file(opts.input);
  auto fmt = rf::guess_format(opts.input, content);
  auto res = rf::parse_graph(content, fmt, opts.strict);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  return std::move(res.graph);
}

std::string solution_table(const rf::CompGraph& g, const rf::Solution& sol) {
  std::ostringstream out;
  const rf::Cost store_all = g.interior_total();
  out << "stored (" << sol.stored.count() << "):";
  for (auto v : sol.stored.to_indices()) out << " " << g.name(v);
  out << "\n";
  out << "stored cost:      " << sol.stored_cost << "\n";
  out << "realized max:     " << sol.realized_max << "\n";
  out << "total:            " << sol.total << "\n";
  out << "store-all total:  " << store_all << "\n";
  if (store_all > 0) {
    double cut = 100.0 * (1.0 - static_cast<double>(sol.total) / static_cast<double>(store_all));
    out.setf(std::ios::fixed);
    out.precision(1);
    out << "memory cut:       " << cut << "%\n";
  }
  return out.str();
}

int cmd_solve(const CommonOpts& opts) {
  auto g = load_graph(opts);
  auto sol = rf::solve_acg(g);
  if (opts.json) write_out(opts.output, rf::solution_to_json(g, sol).dump(2));
  else write_out(opts.output, solution_table(g, sol));
  return 0;
}

int cmd_oracle(const CommonOpts& opts, std::size_t max_vertices) {
  auto g = load_graph(opts);
  auto solver = rf::solve_acg(g);
  auto oracle = rf::oracle_min(g, max_vertices);
  nlohmann::json j;
  j["solver_total"] = solver.total;
  j["oracle_total"] = oracle.total;
  j["match"] = solver.total == oracle.total;
  if (opts.json) {
    write_out(opts.output, j.dump(2));
  } else {
    std::ostringstream out;
    out << "solver total: " << solver.total << "\n"
        << "oracle total: " << oracle.total << "\n"
        << (solver.total == oracle.total ? "MATCH" : "MISMATCH") << "\n";
    write_out(opts.output, out.str());
  }
  if (solver.total != oracle.total) {
    std::cerr << "error: solver and oracle disagree\n";
    return 1;
  }
  return 0;
}

int cmd_simulate(const CommonOpts& opts) {
  auto g = load_graph(opts);
  auto sol = rf::solve_acg(g);
  rf::SimReport rep;
  try {
    rep = rf::simulate(g, sol);
  } catch (const rf::InternalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (opts.json) {
    write_out(opts.output, rf::sim_report_to_json(g, rep).dump(2));
  } else {
    std::ostringstream out;
    out << "peak: " << rep.peak << " (solution total " << sol.total << ")\n";
    for (const auto& ev : rep.timeline) out << "  live=" << ev.live << "  " << ev.label << "\n";
    write_out(opts.output, out.str());
  }
  return 0;
}

int cmd_tree(const CommonOpts& opts) {
  auto g = load_graph(opts);
  auto tree = rf::build_division_tree(g);
  if (opts.json) {
    write_out(opts.output, rf::tree_to_json(g, *tree).dump(2));
  } else {
    std::string out;
    rf::dump_tree_text(g, *tree, out);
    write_out(opts.output, out);
  }
  return 0;
}

int cmd_compare(const CommonOpts& opts) {
  auto g = load_graph(opts);
  auto all = rf::store_all(g);
  auto reforward = rf::solve_acg(g);
  bool linear = rf::is_linear_chain(g);
  nlohmann::json j;
  j["store_all"] = all.total;
  j["reforward"] = reforward.total;
  std::ostringstream out;
  out << "store-all:       " << all.total << "\n";
  if (linear) {
    auto heur = rf::sqrt_heuristic_chain(g);
    j["sqrt_heuristic"] = heur.total;
    out << "sqrt heuristic:  " << heur.total << "\n";
  } else {
    j["sqrt_heuristic"] = nullptr;
    out << "sqrt heuristic:  n/a (not a linear chain)\n";
  }
  out << "reforward:       " << reforward.total << "\n";
  if (opts.json) write_out(opts.output, j.dump(2));
  else write_out(opts.output, out.str());
  return 0;
}

int cmd_gen(const std::string& kind, const std::vector<std::string>& params, std::uint64_t seed,
            rf::Cost cost_min, rf::Cost cost_max, const std::string& output) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw rf::ValidationError("gen " + kind + " expects " + std::to_string(n) + " parameter(s)");
  };
  auto num = [&](std::size_t i) {
    try {
      return static_cast<std::size_t>(std::stoull(params.at(i)));
    } catch (...) {
      throw rf::ValidationError("bad parameter '" + params.at(i) + "'");
    }
  };
  rf::CompGraph g = [&] {
    if (kind == "chain") {
      need(1);
      return rf::gen_chain(num(0));
    }
    if (kind == "residual") {
      need(2);
      return rf::gen_residual(num(0), num(1));
    }
    if (kind == "inception") {
      need(2);
      return rf::gen_inception(num(0), num(1));
    }
    if (kind == "dense") {
      need(1);
      return rf::gen_dense(num(0));
    }
    if (kind == "random") {
      need(2);
      double p = std::stod(params.at(1));
      return rf::gen_random(num(0), p, seed, cost_min, cost_max);
    }
    throw rf::ValidationError("unknown topology '" + kind +
                              "' (chain|residual|inception|dense|random)");
  }();
  write_out(output, rf::graph_to_json(g).dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal re-forwarding checkpoint planner for DNN computation graphs"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::size_t max_oracle_vertices = 20;

  auto add_common = [&](CLI::App* sub, bool needs_input = true) {
    if (needs_input)
      sub->add_option("-i,--input", opts.input, "graph file (JSON or DOT, '-' for stdin)")
          ->required();
    sub->add_option("-o,--output", opts.output, "output file (default stdout)");
    sub->add_flag("--json", opts.json, "machine-readable JSON output");
    sub->add_flag("--strict", opts.strict, "reject unknown fields, duplicates, isolated vertices");
  };

  auto* solve = app.add_subcommand("solve", "compute the optimal checkpoint set");
  add_common(solve);
  auto* oracle = app.add_subcommand("oracle", "brute-force verify the solver on a small graph");
  add_common(oracle);
  oracle->add_option("--max-oracle-vertices", max_oracle_vertices,
                     "interior-size limit for enumeration");
  auto* simulate = app.add_subcommand("simulate", "replay the training schedule and check peak");
  add_common(simulate);
  auto* tree = app.add_subcommand("tree", "dump the division tree");
  add_common(tree);
  auto* compare = app.add_subcommand("compare", "store-all vs sqrt-heuristic vs re-forwarding");
  add_common(compare);

  auto* gen = app.add_subcommand("gen", "emit a standard topology as JSON");
  std::string gen_kind;
  std::vector<std::string> gen_params;
  std::uint64_t seed = 0;
  rf::Cost cost_min = 1, cost_max = 1;
  std::string gen_output;
  gen->add_option("kind", gen_kind, "chain|residual|inception|dense|random")->required();
  gen->add_option("params", gen_params, "size parameters");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--cost-min", cost_min, "minimum random vertex cost");
  gen->add_option("--cost-max", cost_max, "maximum random vertex cost");
  gen->add_option("-o,--output", gen_output, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(opts);
    if (oracle->parsed()) return cmd_oracle(opts, max_oracle_vertices);
    if (simulate->parsed()) return cmd_simulate(opts);
    if (tree->parsed()) return cmd_tree(opts);
    if (compare->parsed()) return cmd_compare(opts);
    if (gen->parsed()) {
      if (cost_max < cost_min) cost_max = cost_min;
      return cmd_gen(gen_kind, gen_params, seed, cost_min, cost_max, gen_output);
    }
  } catch (const rf::InternalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const rf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
