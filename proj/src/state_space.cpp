#include <charconv>
#include <cmath>
#include <sstream>

#include "jtapprox/errors.hpp"
#include "jtapprox/graph.hpp"

namespace jta {

StateSpace StateSpace::uniform(const Graph& g, std::uint64_t size) {
  StateSpace ss;
  for (Vertex v : g.vertices()) ss.set(v, size);
  return ss;
}

void StateSpace::set(Vertex v, std::uint64_t size) {
  if (size < 2) {
    throw DomainError("state size of vertex " + std::to_string(v) + " must be at least 2");
  }
  sizes_[v] = size;
}

std::uint64_t StateSpace::size(Vertex v) const {
  auto it = sizes_.find(v);
  if (it == sizes_.end()) {
    throw DomainError("no state size for vertex " + std::to_string(v));
  }
  return it->second;
}

double StateSpace::weight(Vertex v) const { return std::log2(static_cast<double>(size(v))); }

void StateSpace::require_covers(const Graph& g) const {
  for (Vertex v : g.vertices()) (void)size(v);
}

StateSpace parse_state_space(std::string_view text, const Graph& g) {
  StateSpace ss = StateSpace::uniform(g, 2);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    std::istringstream in(line);
    std::string first;
    if (!(in >> first) || first == "c") continue;
    long long v = 0;
    long long size = 0;
    std::string extra;
    auto [ptr, ec] = std::from_chars(first.data(), first.data() + first.size(), v);
    if (ec != std::errc{} || ptr != first.data() + first.size() || !(in >> size) || (in >> extra)) {
      throw ParseError(line_no, "malformed state-space line, expected '<v> <size>'");
    }
    if (!g.contains(static_cast<Vertex>(v))) {
      throw ParseError(line_no, "vertex " + std::to_string(v) + " is not in the graph");
    }
    if (size < 2) throw ParseError(line_no, "state size must be at least 2");
    ss.set(static_cast<Vertex>(v), static_cast<std::uint64_t>(size));
  }
  return ss;
}

std::string write_state_space(const StateSpace& ss) {
  std::ostringstream out;
  for (const auto& [v, size] : ss.sizes()) out << v << ' ' << size << '\n';
  return out.str();
}

Measure Measure::weighted(const StateSpace& ss) {
  auto weights = std::make_shared<std::map<Vertex, double>>();
  for (const auto& [v, size] : ss.sizes()) {
    (void)size;
    (*weights)[v] = ss.weight(v);
  }
  Measure m;
  m.weights_ = std::move(weights);
  return m;
}

double Measure::of(Vertex v) const {
  if (!weights_) return 1.0;
  auto it = weights_->find(v);
  if (it == weights_->end()) {
    throw DomainError("no weight for vertex " + std::to_string(v));
  }
  return it->second;
}

}  // namespace jta
