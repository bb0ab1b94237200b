#include "jtapprox/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "jtapprox/errors.hpp"
#include "jtapprox/minimize.hpp"

namespace jta {

namespace {

/// Cliques formed by each stripped vertex with its neighbors at removal time.
std::vector<VertexSet> stripped_cliques(const Graph& g, const std::vector<Vertex>& removed) {
  std::vector<VertexSet> out;
  VertexSet gone;
  for (Vertex v : removed) {
    VertexSet c{v};
    for (Vertex u : g.neighbors(v)) {
      if (!gone.count(u)) c.insert(u);
    }
    out.push_back(std::move(c));
    gone.insert(v);
  }
  return out;
}

/// Shared tail: minimize, junction tree, verification and metrics.
void finish(const Graph& g, const StateSpace& metric_ss, const EdgeSet& fills, bool minimize,
            bool force_tree, RunReport& report) {
  report.fills_before = fills.size();
  if (minimize) {
    report.fills = minimize_fill(g, fills, report.ordering).kept;
  } else {
    report.fills = fills;
  }
  report.fills_after = report.fills.size();

  const Graph filled = g.with_edges(report.fills);
  const ChordalityCheck check = check_chordal(filled);
  if (!check.chordal()) throw InternalError("pipeline: triangulated graph is not chordal");
  const bool connected = connected_components(filled).size() <= 1;
  report.tree = build_junction_tree(extract_cliques(filled, check.elimination_order), force_tree);
  if (auto problem = verify_junction_tree(report.tree, filled, force_tree || connected);
      !problem.empty()) {
    throw InternalError("pipeline: junction tree check failed: " + problem);
  }
  report.metrics = compute_metrics(report.tree, metric_ss);
  report.l = report.metrics.largest_bag_size;
  report.heaviest = report.metrics.heaviest;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

RunReport run_pipeline(const Graph& g, const StateSpace* ss, const PipelineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const bool weighted = options.mode == Mode::kWeighted;
  if (weighted && ss == nullptr) throw DomainError("weighted mode needs a state space");
  if (ss != nullptr) ss->require_covers(g);
  const StateSpace metric_ss = ss != nullptr ? *ss : StateSpace::uniform(g, 2);
  const Measure measure = weighted ? Measure::weighted(*ss) : Measure::cardinality();

  RunReport report;
  report.n = g.num_vertices();
  report.m = g.num_edges();
  report.mode = options.mode;

  const SimplicialStrip strip = strip_simplicial(g);
  report.stripped = strip.removed;
  report.ordering = strip.removed;
  double lower = 0.0;
  for (const auto& c : stripped_cliques(g, strip.removed)) lower = std::max(lower, measure.of_all(c));

  EdgeSet fills;
  EscalationPolicy policy;
  policy.jump = options.jump;
  TriangulateOptions tri_options;
  tri_options.check_nodes = options.check_nodes;
  for (const VertexSet& component : connected_components(strip.residual)) {
    const Graph sub = induced_subgraph(strip.residual, component);
    EscalationResult esc = escalate(sub, options.alpha, policy, weighted ? ss : nullptr, tri_options);
    ComponentReport cr;
    cr.vertices = component;
    cr.threshold = esc.threshold;
    cr.last_failed = esc.last_failed;
    cr.lower_bound = esc.lower_bound;
    cr.largest_clique = esc.result.largest_clique_size;
    cr.heaviest_clique = esc.result.heaviest_clique_weight;
    cr.ratio_bound = esc.result.ratio_bound;
    cr.rounds = esc.rounds;
    cr.trace = esc.result.trace;
    report.components.push_back(cr);
    report.k_accepted = std::max(report.k_accepted.value_or(0.0), esc.threshold);
    lower = std::max(lower, esc.lower_bound);
    fills.insert(esc.result.fill_edges.begin(), esc.result.fill_edges.end());
    report.ordering.insert(report.ordering.end(), esc.result.ordering.begin(),
                           esc.result.ordering.end());
  }
  if (!report.k_accepted && !g.empty()) report.k_accepted = lower;

  finish(g, metric_ss, fills, options.minimize, options.force_tree, report);
  report.lower_bound = lower;
  if (lower > 0.0) {
    const double achieved = weighted ? report.heaviest : static_cast<double>(report.l);
    report.ratio_bound = achieved / lower;
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

RunReport run_enhanced_greedy(const Graph& g, const StateSpace& ss, bool minimize, bool force_tree) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.n = g.num_vertices();
  report.m = g.num_edges();
  report.mode = Mode::kWeighted;
  TriangulationResult greedy = greedy_min_weight(g, ss);
  report.ordering = greedy.ordering;
  finish(g, ss, greedy.fill_edges, minimize, force_tree, report);
  report.wall_ms = elapsed_ms(start);
  return report;
}

std::string report_json(const RunReport& report, int indent) {
  using nlohmann::json;
  auto optional_number = [](const std::optional<double>& x) -> json {
    return x ? json(*x) : json(nullptr);
  };
  json components = json::array();
  for (const auto& c : report.components) {
    components.push_back({
        {"vertices", c.vertices},
        {"threshold", c.threshold},
        {"last_failed", optional_number(c.last_failed)},
        {"lower_bound", c.lower_bound},
        {"largest_clique", c.largest_clique},
        {"heaviest_clique", c.heaviest_clique},
        {"ratio_bound", optional_number(c.ratio_bound)},
        {"rounds", c.rounds},
        {"max_w", c.trace.max_w},
        {"depth", c.trace.depth},
        {"partitions", c.trace.partitions},
        {"nodes", c.trace.nodes},
    });
  }
  json out = {
      {"n", report.n},
      {"m", report.m},
      {"mode", report.mode == Mode::kWeighted ? "weighted" : "card"},
      {"k_accepted", optional_number(report.k_accepted)},
      {"l", report.l},
      {"ratio_bound", optional_number(report.ratio_bound)},
      {"lower_bound", report.lower_bound},
      {"M", report.metrics.heaviest},
      {"T", report.metrics.total},
      {"fills_before", report.fills_before},
      {"fills_after", report.fills_after},
      {"wall_ms", report.wall_ms},
      {"bags", report.tree.bags.size()},
      {"stripped", report.stripped.size()},
      {"components", components},
  };
  return out.dump(indent);
}

}  // namespace jta
