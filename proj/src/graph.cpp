#include "jtapprox/graph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <sstream>

#include "jtapprox/errors.hpp"

namespace jta {

Graph::Graph(std::vector<Vertex> vertices, std::span<const Edge> edges) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  vertices_ = std::move(vertices);
  adjacency_.resize(vertices_.size());
  for (const auto& [u, v] : edges) {
    if (u == v) throw DomainError("self-loop on vertex " + std::to_string(u));
    adjacency_[index_of(u)].push_back(v);
    adjacency_[index_of(v)].push_back(u);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    num_edges_ += nbrs.size();
  }
  num_edges_ /= 2;
}

bool Graph::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t Graph::index_of(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw DomainError("vertex " + std::to_string(v) + " is not in the graph");
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::span<const Vertex> Graph::neighbors(Vertex v) const { return adjacency_[index_of(v)]; }

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (Vertex w : adjacency_[i]) {
      if (vertices_[i] < w) out.emplace_back(vertices_[i], w);
    }
  }
  return out;
}

std::vector<std::vector<int>> Graph::local_adjacency() const {
  std::vector<std::vector<int>> out(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    out[i].reserve(adjacency_[i].size());
    for (Vertex w : adjacency_[i]) out[i].push_back(static_cast<int>(index_of(w)));
  }
  return out;
}

Graph Graph::with_edges(const EdgeSet& extra) const {
  std::vector<Edge> all = edges();
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph(vertices_, all);
}

void require_subset(const Graph& g, const VertexSet& s, const char* what) {
  for (Vertex v : s) {
    if (!g.contains(v)) {
      throw DomainError(std::string(what) + ": vertex " + std::to_string(v) +
                        " is not in the graph");
    }
  }
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view s, long long& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    fn(line_no, text.substr(pos, end - pos));
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace

Graph parse_graph(std::string_view text) {
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::size_t last_line = 0;
  std::vector<Edge> edges;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    last_line = line_no;
    auto fields = split_fields(line);
    if (fields.empty() || fields[0] == "c") return;
    if (fields[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (fields.size() != 4 || fields[1] != "tw" || !parse_int(fields[2], n) ||
          !parse_int(fields[3], m) || n < 0 || m < 0) {
        throw ParseError(line_no, "malformed header, expected 'p tw <n> <m>'");
      }
      have_header = true;
      return;
    }
    if (!have_header) throw ParseError(line_no, "edge line before 'p tw' header");
    long long u = 0;
    long long v = 0;
    if (fields.size() != 2 || !parse_int(fields[0], u) || !parse_int(fields[1], v)) {
      throw ParseError(line_no, "malformed edge line, expected '<u> <v>'");
    }
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ParseError(line_no, "vertex id out of range 1.." + std::to_string(n));
    }
    if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
    edges.push_back(make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)));
  });
  if (!have_header) throw ParseError(last_line, "missing 'p tw <n> <m>' header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(last_line, "header declares " + std::to_string(m) + " edges but " +
                                    std::to_string(edges.size()) + " edge lines were found");
  }
  std::vector<Vertex> vertices(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) vertices[static_cast<std::size_t>(i)] = static_cast<Vertex>(i + 1);
  return Graph(std::move(vertices), edges);
}

std::string write_graph(const Graph& g) {
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] != static_cast<Vertex>(i + 1)) {
      throw DomainError("write_graph requires vertex ids 1..n");
    }
  }
  std::ostringstream out;
  out << "p tw " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  require_subset(g, s, "induced_subgraph");
  std::vector<Edge> edges;
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && s.count(v)) edges.emplace_back(u, v);
    }
  }
  return Graph(std::vector<Vertex>(s.begin(), s.end()), edges);
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> out;
  const auto adj = g.local_adjacency();
  const auto& vs = g.vertices();
  std::vector<char> seen(vs.size(), 0);
  for (std::size_t start = 0; start < vs.size(); ++start) {
    if (seen[start]) continue;
    VertexSet comp;
    std::queue<int> queue;
    queue.push(static_cast<int>(start));
    seen[start] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      comp.insert(vs[u]);
      for (int w : adj[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_clique(const Graph& g, const VertexSet& s) {
  for (auto it = s.begin(); it != s.end(); ++it) {
    for (auto jt = std::next(it); jt != s.end(); ++jt) {
      if (!g.adjacent(*it, *jt)) return false;
    }
  }
  return true;
}

SimplicialStrip strip_simplicial(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto adj = g.local_adjacency();
  std::vector<std::vector<char>> matrix(n, std::vector<char>(n, 0));
  for (std::size_t u = 0; u < n; ++u) {
    for (int w : adj[u]) matrix[u][w] = 1;
  }
  std::vector<char> alive(n, 1);
  auto simplicial = [&](std::size_t v) {
    std::vector<int> nbrs;
    for (int w : adj[v]) {
      if (alive[w]) nbrs.push_back(w);
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (!matrix[nbrs[i]][nbrs[j]]) return false;
      }
    }
    return true;
  };

  SimplicialStrip out;
  bool removed_any = true;
  while (removed_any) {
    removed_any = false;
    // Lowest id first: restart the scan after every removal.
    for (std::size_t v = 0; v < n; ++v) {
      if (alive[v] && simplicial(v)) {
        alive[v] = 0;
        out.removed.push_back(g.vertices()[v]);
        removed_any = true;
        break;
      }
    }
  }
  VertexSet rest;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v]) rest.insert(g.vertices()[v]);
  }
  out.residual = induced_subgraph(g, rest);
  return out;
}

CliqueCompletion add_clique_edges(const Graph& g, const VertexSet& s) {
  require_subset(g, s, "add_clique_edges");
  CliqueCompletion out;
  for (auto it = s.begin(); it != s.end(); ++it) {
    for (auto jt = std::next(it); jt != s.end(); ++jt) {
      if (!g.adjacent(*it, *jt)) out.added.emplace(*it, *jt);
    }
  }
  out.graph = out.added.empty() ? g : g.with_edges(out.added);
  return out;
}

}  // namespace jta
