// jtapprox command-line front end.
//
// Exit codes: 0 success, 1 bad input or usage, 2 a verify check failed,
// 70 an internal invariant was violated.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jtapprox/chordal.hpp"
#include "jtapprox/errors.hpp"
#include "jtapprox/generate.hpp"
#include "jtapprox/graph.hpp"
#include "jtapprox/oracle.hpp"
#include "jtapprox/pipeline.hpp"
#include "jtapprox/triangulate.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitInternal = 70;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw jta::DomainError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw jta::DomainError("cannot write " + path);
  out << text;
}

struct Inputs {
  jta::Graph graph;
  std::optional<jta::StateSpace> states;
};

Inputs load(const std::string& graph_path, const std::string& states_path) {
  Inputs in;
  in.graph = jta::parse_graph(read_file(graph_path));
  if (!states_path.empty()) in.states = jta::parse_state_space(read_file(states_path), in.graph);
  return in;
}

jta::Jump parse_jump(const std::string& name, jta::Mode mode) {
  if (name == "inc") return jta::Jump::kIncrement;
  if (name == "kstar") return mode == jta::Mode::kWeighted ? jta::Jump::kWeightedMargin : jta::Jump::kKStar;
  if (name == "margin") return jta::Jump::kWeightedMargin;
  // auto
  return mode == jta::Mode::kWeighted ? jta::Jump::kWeightedMargin : jta::Jump::kIncrement;
}

std::string fmt(double x, int precision = 4) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << x;
  return out.str();
}

struct CommonFlags {
  std::string graph_path;
  std::string states_path;
  std::string mode = "auto";
  std::string jump = "auto";
  double alpha = 2.0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("graph", f.graph_path, "input graph (.gr)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--states", f.states_path, "state-space sidecar (<v> <size> per line)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--alpha", f.alpha, "3-way cut approximation factor")->check(CLI::Range(1.0, 100.0));
  cmd->add_option("--mode", f.mode, "card, weighted, or auto (weighted iff --states)")
      ->check(CLI::IsMember({"auto", "card", "weighted"}));
  cmd->add_option("--jump", f.jump, "threshold escalation: inc, kstar, margin, auto")
      ->check(CLI::IsMember({"auto", "inc", "kstar", "margin"}));
}

jta::Mode resolve_mode(const CommonFlags& f) {
  if (f.mode == "card") return jta::Mode::kCardinality;
  if (f.mode == "weighted") {
    if (f.states_path.empty()) throw jta::DomainError("--mode weighted needs --states");
    return jta::Mode::kWeighted;
  }
  return f.states_path.empty() ? jta::Mode::kCardinality : jta::Mode::kWeighted;
}

void print_summary(const jta::RunReport& r) {
  std::cout << "n " << r.n << "  m " << r.m << "  mode "
            << (r.mode == jta::Mode::kWeighted ? "weighted" : "card") << '\n';
  std::cout << "stripped simplicial " << r.stripped.size() << ", components "
            << r.components.size() << '\n';
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    std::cout << "  component " << i + 1 << ": |V| " << c.vertices.size() << "  accepted "
              << fmt(c.threshold, 3) << "  rounds " << c.rounds << "  l " << c.largest_clique
              << "  partitions " << c.trace.partitions << '\n';
  }
  std::cout << "k_accepted " << (r.k_accepted ? fmt(*r.k_accepted, 3) : "-") << "  l " << r.l
            << "  ratio_bound " << (r.ratio_bound ? fmt(*r.ratio_bound, 3) : "-") << '\n';
  std::cout << "M " << fmt(r.metrics.heaviest) << "  T " << fmt(r.metrics.total) << "  bags "
            << r.tree.bags.size() << '\n';
  std::cout << "fills " << r.fills_before << " -> " << r.fills_after << "  wall_ms "
            << fmt(r.wall_ms, 1) << '\n';
}

int cmd_triangulate(const CommonFlags& f, bool no_minimize, bool force_tree, bool check_nodes,
                    const std::string& td_path, bool json) {
  const Inputs in = load(f.graph_path, f.states_path);
  jta::PipelineOptions opts;
  opts.alpha = f.alpha;
  opts.mode = resolve_mode(f);
  opts.jump = parse_jump(f.jump, opts.mode);
  opts.minimize = !no_minimize;
  opts.force_tree = force_tree;
  opts.check_nodes = check_nodes;
  const jta::RunReport report = run_pipeline(in.graph, in.states ? &*in.states : nullptr, opts);
  if (!td_path.empty()) {
    const std::string td = jta::write_td(report.tree, in.graph.num_vertices());
    if (td_path == "-") {
      std::cout << td;
    } else {
      write_file(td_path, td);
    }
  }
  if (json) {
    std::cout << jta::report_json(report) << '\n';
  } else if (td_path != "-") {
    print_summary(report);
  }
  return 0;
}

struct RowStats {
  int wins = 0;
  double sum = 0.0;
  double max = 0.0;
  void add(double delta) {
    ++wins;
    sum += delta;
    max = std::max(max, delta);
  }
  double average() const { return wins ? sum / wins : 0.0; }
};

int cmd_compare(const CommonFlags& f, int trials, std::uint64_t seed, std::uint64_t lo,
                std::uint64_t hi, double mean, bool json) {
  const Inputs in = load(f.graph_path, f.states_path);
  if (trials < 1) throw jta::DomainError("--trials must be positive");
  jta::SizeRange range{lo, hi, mean > 0 ? std::optional<double>(mean) : std::nullopt};
  std::mt19937_64 rng(seed);
  const jta::Jump jump = parse_jump(f.jump, jta::Mode::kWeighted);

  // Per criterion (M, T): ours better, equal, greedy better.
  std::array<RowStats, 2> ours;
  std::array<RowStats, 2> theirs;
  std::array<int, 2> equal{0, 0};
  int both_better = 0;
  double max_t_gap = 0.0;
  nlohmann::json runs = nlohmann::json::array();
  const int count = in.states ? 1 : trials;
  for (int trial = 0; trial < count; ++trial) {
    const jta::StateSpace ss = in.states ? *in.states : jta::random_state_space(in.graph, range, rng);
    jta::PipelineOptions opts;
    opts.alpha = f.alpha;
    opts.mode = jta::Mode::kWeighted;
    opts.jump = jump;
    const jta::RunReport a = jta::run_pipeline(in.graph, &ss, opts);
    const jta::RunReport b = jta::run_enhanced_greedy(in.graph, ss);
    const std::array<double, 2> da{a.metrics.heaviest, a.metrics.total};
    const std::array<double, 2> db{b.metrics.heaviest, b.metrics.total};
    bool ours_both = true;
    for (int i = 0; i < 2; ++i) {
      const double delta = db[i] - da[i];
      if (delta > jta::kTolerance) {
        ours[i].add(delta);
      } else if (delta < -jta::kTolerance) {
        theirs[i].add(-delta);
        ours_both = false;
      } else {
        ++equal[i];
        ours_both = false;
      }
    }
    if (ours_both) ++both_better;
    max_t_gap = std::max(max_t_gap, db[1] - da[1]);
    runs.push_back({{"trial", trial}, {"M", da[0]}, {"T", da[1]}, {"greedy_M", db[0]},
                    {"greedy_T", db[1]}, {"k_accepted", a.k_accepted.value_or(0.0)}});
  }

  if (json) {
    nlohmann::json out;
    const char* names[2] = {"M", "T"};
    for (int i = 0; i < 2; ++i) {
      out[names[i]] = {{"ours", {{"count", ours[i].wins}, {"delta_ave", ours[i].average()}, {"delta_max", ours[i].max}}},
                       {"equal", equal[i]},
                       {"greedy", {{"count", theirs[i].wins}, {"delta_ave", theirs[i].average()}, {"delta_max", theirs[i].max}}}};
    }
    out["runs"] = runs;
    out["ours_better_in_both"] = both_better;
    out["max_T_gap"] = max_t_gap;
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << count << " run(s)\n";
  std::cout << "     W-Triangulate           Eq   Greedy\n";
  std::cout << "     #    D_ave   D_max           #    D_ave   D_max\n";
  const char* names[2] = {"M", "T"};
  for (int i = 0; i < 2; ++i) {
    std::cout << names[i] << std::setw(6) << ours[i].wins << std::setw(8) << fmt(ours[i].average(), 2)
              << std::setw(8) << fmt(ours[i].max, 2) << std::setw(7) << equal[i] << std::setw(8)
              << theirs[i].wins << std::setw(8) << fmt(theirs[i].average(), 2) << std::setw(8)
              << fmt(theirs[i].max, 2) << '\n';
  }
  std::cout << "better in both criteria: " << both_better << "\n";
  std::cout << "largest T gap (greedy - ours): " << fmt(max_t_gap, 2) << '\n';
  return 0;
}

int cmd_verify(const CommonFlags& f) {
  const Inputs in = load(f.graph_path, f.states_path);
  const jta::Mode mode = resolve_mode(f);
  const bool weighted = mode == jta::Mode::kWeighted;
  const jta::OracleBudget budget;
  if (in.graph.num_vertices() > budget.max_n_cliquewidth) {
    throw jta::OracleRefused("verify: " + std::to_string(in.graph.num_vertices()) +
                             " vertices exceed the oracle limit of " +
                             std::to_string(budget.max_n_cliquewidth));
  }
  const jta::StateSpace* ss = in.states ? &*in.states : nullptr;
  const double oracle = weighted ? jta::exact_weighted_cliquewidth(in.graph, *ss, budget)
                                 : static_cast<double>(jta::exact_cliquewidth(in.graph, budget));
  std::cout << "oracle " << (weighted ? fmt(oracle, 6) : std::to_string(std::lround(oracle))) << '\n';

  jta::EscalationPolicy policy;
  policy.jump = parse_jump(f.jump, mode);
  bool all_ok = true;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "  ok    " : "  FAIL  ") << what << '\n';
    all_ok = all_ok && ok;
  };
  double achieved = 0.0;
  const auto components = jta::connected_components(in.graph);
  for (std::size_t i = 0; i < components.size(); ++i) {
    const jta::Graph sub = jta::induced_subgraph(in.graph, components[i]);
    const double sub_oracle = weighted ? jta::exact_weighted_cliquewidth(sub, *ss, budget)
                                       : static_cast<double>(jta::exact_cliquewidth(sub, budget));
    const jta::EscalationResult esc =
        jta::escalate(sub, f.alpha, policy, weighted ? ss : nullptr, {.check_nodes = true});
    const double l = weighted ? esc.result.heaviest_clique_weight
                              : static_cast<double>(esc.result.largest_clique_size);
    achieved = std::max(achieved, l);
    std::cout << "component " << i + 1 << " (|V| " << sub.num_vertices() << "): accepted "
              << fmt(esc.threshold, 3) << ", l " << fmt(l, 3) << ", oracle " << fmt(sub_oracle, 3)
              << '\n';
    const double bound = (2 * f.alpha + 1) * esc.threshold;
    check(jta::strictly_less(l, bound), "largest clique below (2 alpha + 1) * threshold");
    if (esc.last_failed) {
      check(weighted ? jta::at_most(*esc.last_failed, sub_oracle) : *esc.last_failed < sub_oracle,
            "failure at " + fmt(*esc.last_failed, 3) + " is sound (oracle exceeds it)");
    }
    check(jta::at_most(esc.lower_bound, sub_oracle), "certified lower bound within oracle");
    check(jta::at_most(sub_oracle, l), "result no better than the optimum");
    if (esc.result.ratio_bound) {
      check(jta::at_most(*esc.result.ratio_bound, 2 * f.alpha + 1), "ratio bound l/k at most 2 alpha + 1");
    }
  }
  check(jta::at_most(oracle, achieved), "overall result no better than the optimum");
  std::cout << (all_ok ? "PASS" : "FAIL") << '\n';
  return all_ok ? 0 : kExitVerifyFailed;
}

int cmd_gen(int n, std::size_t m, std::uint64_t seed, std::uint64_t lo, std::uint64_t hi,
            double mean, const std::string& out_graph, const std::string& out_states) {
  std::mt19937_64 rng(seed);
  const jta::Graph g = jta::random_graph(n, m, rng);
  jta::SizeRange range{lo, hi, mean > 0 ? std::optional<double>(mean) : std::nullopt};
  const jta::StateSpace ss = jta::random_state_space(g, range, rng);
  const std::string gr = "c generated n=" + std::to_string(n) + " m=" + std::to_string(m) +
                         " seed=" + std::to_string(seed) + "\n" + jta::write_graph(g);
  if (out_graph.empty()) {
    std::cout << gr;
  } else {
    write_file(out_graph, gr);
  }
  if (!out_states.empty()) write_file(out_states, jta::write_state_space(ss));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Junction-tree triangulation with a constant-factor guarantee"};
  app.require_subcommand(1);

  CommonFlags tri_flags;
  bool no_minimize = false;
  bool force_tree = false;
  bool check_nodes = false;
  bool json = false;
  std::string td_path;
  auto* tri = app.add_subcommand("triangulate", "triangulate a graph and build its junction tree");
  add_common(tri, tri_flags);
  tri->add_flag("--no-minimize", no_minimize, "keep redundant fill edges");
  tri->add_flag("--force-tree", force_tree, "join per-component trees into one tree");
  tri->add_flag("--check-nodes", check_nodes, "re-check chordality at every recursion node");
  tri->add_option("--emit-td", td_path, "write the junction tree (.td); '-' for stdout");
  tri->add_flag("--json", json, "print the JSON report");

  CommonFlags cmp_flags;
  int trials = 1;
  std::uint64_t seed = 1;
  std::uint64_t lo = 3;
  std::uint64_t hi = 21;
  double mean = 6.0;
  bool cmp_json = false;
  auto* cmp = app.add_subcommand("compare", "compare against enhanced minimum-weight greedy");
  add_common(cmp, cmp_flags);
  cmp->add_option("--trials", trials, "random state-size draws when no --states is given");
  cmp->add_option("--seed", seed, "random seed");
  cmp->add_option("--lo", lo, "smallest state size");
  cmp->add_option("--hi", hi, "largest state size");
  cmp->add_option("--mean", mean, "skewed mean of state sizes; 0 for uniform");
  cmp->add_flag("--json", cmp_json, "print JSON");

  CommonFlags ver_flags;
  auto* ver = app.add_subcommand("verify", "check escalation results against the exact oracle");
  add_common(ver, ver_flags);

  int gen_n = 0;
  std::size_t gen_m = 0;
  std::uint64_t gen_seed = 1;
  std::uint64_t gen_lo = 3;
  std::uint64_t gen_hi = 21;
  double gen_mean = 0.0;
  std::string out_graph;
  std::string out_states;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", gen_n, "vertices")->required();
  gen->add_option("--m", gen_m, "edges")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--lo", gen_lo, "smallest state size");
  gen->add_option("--hi", gen_hi, "largest state size");
  gen->add_option("--mean", gen_mean, "skewed mean of state sizes; 0 for uniform");
  gen->add_option("-o,--out", out_graph, "graph output path (stdout if omitted)");
  gen->add_option("--states-out", out_states, "state-space output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*tri) return cmd_triangulate(tri_flags, no_minimize, force_tree, check_nodes, td_path, json);
    if (*cmp) return cmd_compare(cmp_flags, trials, seed, lo, hi, mean, cmp_json);
    if (*ver) return cmd_verify(ver_flags);
    if (*gen) return cmd_gen(gen_n, gen_m, gen_seed, gen_lo, gen_hi, gen_mean, out_graph, out_states);
  } catch (const jta::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const jta::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const jta::OracleRefused& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}
