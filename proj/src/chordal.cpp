#include "jtapprox/chordal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "jtapprox/errors.hpp"

namespace jta {

namespace {

/// Maximum-cardinality search over local indices; returns the reverse visit
/// order, which is a perfect elimination ordering iff the graph is chordal.
template <typename Neighbors>
std::vector<int> mcs_order(int n, Neighbors&& neighbors) {
  std::vector<int> count(n, 0);
  std::vector<char> numbered(n, 0);
  std::vector<int> visit;
  visit.reserve(n);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (!numbered[v] && (pick < 0 || count[v] > count[pick])) pick = v;
    }
    numbered[pick] = 1;
    visit.push_back(pick);
    neighbors(pick, [&](int w) {
      if (!numbered[w]) ++count[w];
    });
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

/// Linear-style check: each vertex's later neighbors minus the earliest of
/// them must be adjacent to that earliest one.
template <typename Neighbors, typename Adjacent>
bool peo_holds(const std::vector<int>& order, Neighbors&& neighbors, Adjacent&& adjacent) {
  const int n = static_cast<int>(order.size());
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<int> later;
  for (int v : order) {
    later.clear();
    int parent = -1;
    neighbors(v, [&](int w) {
      if (pos[w] > pos[v]) {
        later.push_back(w);
        if (parent < 0 || pos[w] < pos[parent]) parent = w;
      }
    });
    for (int u : later) {
      if (u != parent && !adjacent(parent, u)) return false;
    }
  }
  return true;
}

std::vector<Vertex> find_chordless_cycle(const Graph& g) {
  const int n = static_cast<int>(g.num_vertices());
  const auto adj = g.local_adjacency();
  for (int v = 0; v < n; ++v) {
    const auto& nv = adj[v];
    for (std::size_t i = 0; i < nv.size(); ++i) {
      for (std::size_t j = i + 1; j < nv.size(); ++j) {
        const int u = nv[i];
        const int w = nv[j];
        if (g.adjacent(g.vertices()[u], g.vertices()[w])) continue;
        // Shortest u-w path avoiding v and its other neighbors closes a chordless cycle.
        std::vector<char> blocked(n, 0);
        blocked[v] = 1;
        for (int x : nv) {
          if (x != u && x != w) blocked[x] = 1;
        }
        std::vector<int> parent(n, -1);
        std::queue<int> queue;
        queue.push(u);
        parent[u] = u;
        while (!queue.empty() && parent[w] < 0) {
          int x = queue.front();
          queue.pop();
          for (int y : adj[x]) {
            if (blocked[y] || parent[y] >= 0) continue;
            if (x == u && y == w) continue;
            parent[y] = x;
            queue.push(y);
          }
        }
        if (parent[w] < 0) continue;
        std::vector<Vertex> cycle{g.vertices()[v]};
        std::vector<Vertex> path;
        for (int x = w; x != u; x = parent[x]) path.push_back(g.vertices()[x]);
        path.push_back(g.vertices()[u]);
        std::reverse(path.begin(), path.end());
        cycle.insert(cycle.end(), path.begin(), path.end());
        return cycle;
      }
    }
  }
  throw InternalError("non-chordal graph without a chordless cycle");
}

}  // namespace

ChordalityCheck check_chordal(const Graph& g) {
  const auto adj = g.local_adjacency();
  auto neighbors = [&](int v, auto&& fn) {
    for (int w : adj[v]) fn(w);
  };
  auto adjacent = [&](int a, int b) { return g.adjacent(g.vertices()[a], g.vertices()[b]); };
  const auto order = mcs_order(static_cast<int>(g.num_vertices()), neighbors);
  ChordalityCheck out;
  if (peo_holds(order, neighbors, adjacent)) {
    for (int v : order) out.elimination_order.push_back(g.vertices()[v]);
  } else {
    out.chordless_cycle = find_chordless_cycle(g);
  }
  return out;
}

bool is_chordal(const Graph& g) {
  const auto adj = g.local_adjacency();
  auto neighbors = [&](int v, auto&& fn) {
    for (int w : adj[v]) fn(w);
  };
  auto adjacent = [&](int a, int b) { return g.adjacent(g.vertices()[a], g.vertices()[b]); };
  return peo_holds(mcs_order(static_cast<int>(g.num_vertices()), neighbors), neighbors, adjacent);
}

namespace detail {

bool is_chordal_dense(const std::vector<std::vector<char>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  auto neighbors = [&](int v, auto&& fn) {
    for (int w = 0; w < n; ++w) {
      if (adjacency[v][w]) fn(w);
    }
  };
  auto adjacent = [&](int a, int b) { return adjacency[a][b] != 0; };
  return peo_holds(mcs_order(n, neighbors), neighbors, adjacent);
}

}  // namespace detail

bool is_perfect_elimination_ordering(const Graph& g, std::span<const Vertex> order) {
  if (order.size() != g.num_vertices()) return false;
  std::vector<int> pos(g.num_vertices(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!g.contains(order[i])) return false;
    auto& p = pos[g.index_of(order[i])];
    if (p >= 0) return false;
    p = static_cast<int>(i);
  }
  for (Vertex v : order) {
    std::vector<Vertex> later;
    for (Vertex w : g.neighbors(v)) {
      if (pos[g.index_of(w)] > pos[g.index_of(v)]) later.push_back(w);
    }
    for (std::size_t i = 0; i < later.size(); ++i) {
      for (std::size_t j = i + 1; j < later.size(); ++j) {
        if (!g.adjacent(later[i], later[j])) return false;
      }
    }
  }
  return true;
}

std::vector<VertexSet> extract_cliques(const Graph& g, std::span<const Vertex> peo) {
  if (!is_perfect_elimination_ordering(g, peo)) {
    throw DomainError("extract_cliques: not a perfect elimination ordering");
  }
  std::vector<int> pos(g.num_vertices());
  for (std::size_t i = 0; i < peo.size(); ++i) pos[g.index_of(peo[i])] = static_cast<int>(i);
  std::vector<VertexSet> candidates;
  candidates.reserve(peo.size());
  for (Vertex v : peo) {
    VertexSet c{v};
    for (Vertex w : g.neighbors(v)) {
      if (pos[g.index_of(w)] > pos[g.index_of(v)]) c.insert(w);
    }
    candidates.push_back(std::move(c));
  }
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < candidates.size() && maximal; ++j) {
      if (i != j && candidates[j].size() > candidates[i].size() &&
          std::includes(candidates[j].begin(), candidates[j].end(), candidates[i].begin(),
                        candidates[i].end())) {
        maximal = false;
      }
    }
    if (maximal) out.push_back(candidates[i]);
  }
  return out;
}

VertexSet JunctionTree::separator(std::size_t edge) const {
  const auto& [i, j] = edges.at(edge);
  VertexSet out;
  std::set_intersection(bags[i].begin(), bags[i].end(), bags[j].begin(), bags[j].end(),
                        std::inserter(out, out.end()));
  return out;
}

std::size_t JunctionTree::max_bag_size() const {
  std::size_t best = 0;
  for (const auto& bag : bags) best = std::max(best, bag.size());
  return best;
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

/// For each vertex: bags containing it must induce a connected subforest,
/// i.e. exactly (count - 1) tree edges when the edge set is acyclic.
std::string running_intersection_problem(const JunctionTree& jt) {
  std::map<Vertex, std::size_t> bag_count;
  std::map<Vertex, std::size_t> edge_count;
  for (const auto& bag : jt.bags) {
    for (Vertex v : bag) ++bag_count[v];
  }
  for (const auto& [i, j] : jt.edges) {
    for (Vertex v : jt.bags[i]) {
      if (jt.bags[j].count(v)) ++edge_count[v];
    }
  }
  for (const auto& [v, count] : bag_count) {
    if (edge_count[v] + 1 != count) {
      return "running intersection fails for vertex " + std::to_string(v);
    }
  }
  return {};
}

}  // namespace

JunctionTree build_junction_tree(const std::vector<VertexSet>& cliques, bool connect_components) {
  struct Candidate {
    std::size_t weight;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    for (std::size_t j = i + 1; j < cliques.size(); ++j) {
      const std::size_t w = intersection_size(cliques[i], cliques[j]);
      if (w > 0 || connect_components) candidates.push_back({w, i, j});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  JunctionTree jt;
  jt.bags = cliques;
  UnionFind uf(cliques.size());
  for (const auto& c : candidates) {
    if (uf.unite(c.i, c.j)) jt.edges.emplace_back(c.i, c.j);
  }
  if (auto problem = running_intersection_problem(jt); !problem.empty()) {
    throw InternalError("build_junction_tree: " + problem);
  }
  return jt;
}

std::string verify_junction_tree(const JunctionTree& jt, const Graph& chordal_graph,
                                 bool require_connected) {
  const std::size_t k = jt.bags.size();
  UnionFind uf(k);
  for (const auto& [i, j] : jt.edges) {
    if (i >= k || j >= k || i == j) return "tree edge refers to an invalid bag";
    if (!uf.unite(i, j)) return "tree edges contain a cycle";
  }
  if (require_connected && k > 0 && jt.edges.size() + 1 != k) return "tree is not connected";
  for (const auto& bag : jt.bags) {
    if (bag.empty()) return "empty bag";
    for (Vertex v : bag) {
      if (!chordal_graph.contains(v)) return "bag contains unknown vertex " + std::to_string(v);
    }
    if (!is_clique(chordal_graph, bag)) return "bag is not a clique of the graph";
  }
  for (std::size_t i = 0; i < k; ++i) {
    const VertexSet& bag = jt.bags[i];
    for (Vertex u : chordal_graph.neighbors(*bag.begin())) {
      if (bag.count(u)) continue;
      bool extends = true;
      for (Vertex v : bag) {
        if (!chordal_graph.adjacent(u, v)) {
          extends = false;
          break;
        }
      }
      if (extends) return "bag " + std::to_string(i) + " is not a maximal clique";
    }
    for (std::size_t j = i + 1; j < k; ++j) {
      if (jt.bags[j] == bag) return "bags " + std::to_string(i) + " and " + std::to_string(j) + " coincide";
    }
  }
  VertexSet covered;
  for (const auto& bag : jt.bags) covered.insert(bag.begin(), bag.end());
  if (covered.size() != chordal_graph.num_vertices()) return "some vertex is in no bag";
  for (const auto& [u, v] : chordal_graph.edges()) {
    bool found = false;
    for (const auto& bag : jt.bags) {
      if (bag.count(u) && bag.count(v)) {
        found = true;
        break;
      }
    }
    if (!found) return "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag";
  }
  return running_intersection_problem(jt);
}

Metrics compute_metrics(const JunctionTree& jt, const StateSpace& ss) {
  Metrics m;
  if (jt.bags.empty()) return m;
  std::vector<double> log_sizes;
  log_sizes.reserve(jt.bags.size());
  for (const auto& bag : jt.bags) {
    double w = 0.0;
    for (Vertex v : bag) w += ss.weight(v);
    log_sizes.push_back(w);
    m.largest_bag_size = std::max(m.largest_bag_size, bag.size());
  }
  m.heaviest = *std::max_element(log_sizes.begin(), log_sizes.end());
  // log2 sum 2^x, shifted by the max to stay in range.
  double acc = 0.0;
  for (double x : log_sizes) acc += std::exp2(x - m.heaviest);
  m.total = m.heaviest + std::log2(acc);
  return m;
}

std::string write_td(const JunctionTree& jt, std::size_t num_vertices) {
  std::ostringstream out;
  out << "s td " << jt.bags.size() << ' ' << jt.max_bag_size() << ' ' << num_vertices << '\n';
  for (std::size_t i = 0; i < jt.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : jt.bags[i]) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [i, j] : jt.edges) out << i + 1 << ' ' << j + 1 << '\n';
  return out.str();
}

TdFile parse_td(std::string_view text) {
  TdFile out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t declared_bags = 0;
  std::vector<char> bag_seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first == "c") continue;
    if (first == "s") {
      std::string td;
      std::size_t max_bag = 0;
      if (have_header || !(fields >> td >> declared_bags >> max_bag >> out.num_vertices) || td != "td") {
        throw ParseError(line_no, "malformed 's td' header");
      }
      have_header = true;
      out.tree.bags.resize(declared_bags);
      bag_seen.assign(declared_bags, 0);
      continue;
    }
    if (!have_header) throw ParseError(line_no, "content before 's td' header");
    if (first == "b") {
      std::size_t id = 0;
      if (!(fields >> id) || id < 1 || id > declared_bags || bag_seen[id - 1]) {
        throw ParseError(line_no, "bad bag id");
      }
      bag_seen[id - 1] = 1;
      long long v = 0;
      while (fields >> v) {
        if (v < 1 || static_cast<std::size_t>(v) > out.num_vertices) {
          throw ParseError(line_no, "bag vertex out of range");
        }
        out.tree.bags[id - 1].insert(static_cast<Vertex>(v));
      }
      if (!fields.eof()) throw ParseError(line_no, "malformed bag line");
      continue;
    }
    std::istringstream edge_fields(line);
    std::size_t i = 0;
    std::size_t j = 0;
    std::string extra;
    if (!(edge_fields >> i >> j) || (edge_fields >> extra) || i < 1 || j < 1 || i > declared_bags ||
        j > declared_bags) {
      throw ParseError(line_no, "malformed tree edge line");
    }
    out.tree.edges.emplace_back(i - 1, j - 1);
  }
  if (!have_header) throw ParseError(line_no, "missing 's td' header");
  return out;
}

}  // namespace jta
