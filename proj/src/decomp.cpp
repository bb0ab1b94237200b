#include "jtapprox/decomp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "jtapprox/errors.hpp"
#include "vertex_cut_solver.hpp"

namespace jta {

namespace {

using detail::kInfiniteCapacity;
using detail::VertexCutSolver;

double measure_of(const Measure& m, const VertexSet& s) { return m.of_all(s); }

bool disjoint(const VertexSet& a, const VertexSet& b) {
  for (Vertex v : a) {
    if (b.count(v)) return false;
  }
  return true;
}

/// Smallest threshold satisfying every W-decomposition bound, given the
/// measures of W, X and of (W n P) u X for P = A, B, C.
double threshold_for(double m_w, double m_x, const std::array<double, 3>& m_parts,
                     const DecompBudget& budget) {
  const double a = budget.alpha;
  double strict_max = m_w;
  for (double m : m_parts) strict_max = std::max(strict_max, m);
  if (budget.measure.is_weighted()) {
    return std::max((strict_max + 2 * kTolerance) / (a + 1), m_x / a);
  }
  const double from_strict = std::floor((strict_max + kTolerance) / (a + 1)) + 1;
  const double from_x = std::max(1.0, std::ceil((m_x - kTolerance) / a));
  return std::max(from_strict, from_x);
}

enum Label : signed char { kA = 0, kB = 1, kC = 2, kX = 3, kOutside = 4 };

class Searcher {
 public:
  Searcher(const Graph& g, const VertexSet& w, const DecompBudget& budget, bool record,
           std::optional<double> record_cap = std::nullopt)
      : g_(g),
        budget_(budget),
        record_(record),
        record_cap_(record_cap),
        n_(static_cast<int>(g.num_vertices())),
        solver_(g.local_adjacency()),
        weight_(g.num_vertices()),
        in_w_(g.num_vertices(), 0) {
    for (int i = 0; i < n_; ++i) {
      weight_[i] = budget.measure.of(g.vertices()[i]);
      measure_v_ += weight_[i];
    }
    for (Vertex v : w) {
      const int i = static_cast<int>(g.index_of(v));
      in_w_[i] = 1;
      w_local_.push_back(i);
      measure_w_ += weight_[i];
    }
    std::sort(w_local_.begin(), w_local_.end());
    all_w_bits_ = w_local_.size() >= 64 ? ~std::uint64_t{0}
                                        : (std::uint64_t{1} << w_local_.size()) - 1;
    suffix_weight_.assign(w_local_.size() + 1, 0.0);
    for (std::size_t i = w_local_.size(); i-- > 0;) {
      suffix_weight_[i] = suffix_weight_[i + 1] + weight_[w_local_[i]];
    }
  }

  std::vector<signed char> labels_from(const WPartition& p) const {
    std::vector<signed char> labels(n_, kOutside);
    auto put = [&](const VertexSet& s, Label label) {
      for (Vertex v : s) labels[g_.index_of(v)] = label;
    };
    put(p.a, kA);
    put(p.b, kB);
    put(p.c, kC);
    put(p.x, kX);
    return labels;
  }

  std::optional<Decomposition> procedure_one(const std::vector<signed char>& labels);
  std::optional<Decomposition> procedure_two(const std::vector<signed char>& labels);
  std::optional<Decomposition> all_pairs(const std::vector<signed char>& labels);
  SearchResult search();

 private:
  struct Parts {
    std::array<std::vector<char>, 4> mask;
    std::array<double, 4> measure{};
    std::array<bool, 4> empty{true, true, true, true};
  };

  Parts split(const std::vector<signed char>& labels) const {
    Parts parts;
    for (auto& m : parts.mask) m.assign(n_, 0);
    for (int v = 0; v < n_; ++v) {
      if (labels[v] == kOutside) continue;
      parts.mask[labels[v]][v] = 1;
      parts.measure[labels[v]] += weight_[v];
      parts.empty[labels[v]] = false;
    }
    return parts;
  }

  /// Non-W vertices keep their weight; W vertices are uncuttable.
  const std::vector<double>& capacities() {
    if (caps_.empty()) {
      caps_ = weight_;
      for (int v : w_local_) caps_[v] = kInfiniteCapacity;
    }
    return caps_;
  }

  /// Largest cut weight that can still matter. `heaviest_side` is the W
  /// measure forced onto one side of the cut, `removed` the measure of W_X.
  /// While recording, a cut matters as long as the decomposition it yields
  /// could lower the smallest rejected threshold seen so far.
  double cut_limit(double heaviest_side, double removed) const {
    const double t = budget_.threshold;
    const double a = budget_.alpha;
    auto at = [&](double tau) { return std::min(a * tau, (a + 1) * tau - heaviest_side) - removed; };
    if (!record_) return at(t);
    std::optional<double> tau = record_cap_;
    if (next_threshold_ && (!tau || *next_threshold_ < *tau)) tau = next_threshold_;
    if (!tau) return kInfiniteCapacity;
    return std::max(at(t), at(*tau) + kRecordSlack);
  }

  static constexpr double kRecordSlack = 1e-6;

  /// Cut between `source` and the rest of W in G - `removed`, where `removed`
  /// and `source` are subsets of W. Many partitions share the same pair, so
  /// outcomes are memoized by their W bitmasks.
  VertexCutSolver::Outcome w_cut(const std::vector<double>& caps, const std::vector<char>& removed,
                                 const std::vector<char>& source, double limit);

  /// Builds (X, A, B, C) from X: A collects the components meeting `a_seed`;
  /// B those meeting `b_seed`, or everything left when `b_seed` is null.
  /// Accepts when `procedure_bound` and every W-decomposition bound hold.
  std::optional<Decomposition> evaluate(const std::vector<char>& x_mask,
                                        const std::vector<char>& a_seed,
                                        const std::vector<char>* b_seed, double procedure_bound);

  SearchResult result_;
  bool backtrack(std::size_t pos, int x_needed, std::vector<signed char>& labels,
                 std::array<double, 4>& partial);
  bool canonical(const std::vector<signed char>& labels) const;

  const Graph& g_;
  DecompBudget budget_;
  bool record_;
  std::optional<double> record_cap_;
  int n_;
  VertexCutSolver solver_;
  std::vector<double> weight_;
  std::vector<double> caps_;
  std::vector<char> in_w_;
  std::vector<int> w_local_;
  std::vector<double> suffix_weight_;  // W measure from position i on
  std::uint64_t all_w_bits_ = 0;
  double measure_v_ = 0.0;
  double measure_w_ = 0.0;
  std::optional<double> next_threshold_;
  std::optional<Decomposition> found_;

  struct CacheKey {
    std::uint64_t removed;
    std::uint64_t source;
    bool operator==(const CacheKey&) const = default;
  };
  struct CacheHash {
    std::size_t operator()(const CacheKey& k) const {
      return std::hash<std::uint64_t>()(k.removed * 0x9E3779B97F4A7C15ULL ^ k.source);
    }
  };
  struct CachedCut {
    VertexCutSolver::Outcome outcome;
  };
  static constexpr std::size_t kMaxCachedCuts = 1 << 20;
  std::unordered_map<CacheKey, CachedCut, CacheHash> cut_cache_;

  /// Single-pair cut weights between W vertices i, j (positions in w_local_)
  /// after removing W_X; negative while unknown.
  struct PairTable {
    std::vector<double> weight;
  };
  static constexpr std::size_t kMaxPairTables = 1 << 14;
  std::unordered_map<std::uint64_t, PairTable> pair_tables_;

  /// Every S-T cut also separates each pair s in S, t in T (other W vertices
  /// stay uncuttable), so the largest pair cut bounds it from below. Returns
  /// a bound above `limit` (infinity when some pair cannot be cut), or
  /// nullopt when the pairs do not rule the cut out.
  std::optional<double> pair_bound(const std::vector<double>& caps, const CacheKey& key,
                                   double limit);
};

std::optional<double> Searcher::pair_bound(const std::vector<double>& caps, const CacheKey& key,
                                           double limit) {
  const std::size_t w = w_local_.size();
  auto [it, fresh] = pair_tables_.try_emplace(key.removed);
  if (fresh && pair_tables_.size() > kMaxPairTables) {
    pair_tables_.clear();
    it = pair_tables_.try_emplace(key.removed).first;
  }
  PairTable& table = it->second;
  if (table.weight.empty()) table.weight.assign(w * w, -1.0);
  const std::uint64_t sink_bits = all_w_bits_ & ~key.removed & ~key.source;
  auto over_limit = [&](double b) { return b > limit + detail::kCutLimitTolerance; };

  std::vector<std::pair<std::size_t, std::size_t>> unknown;
  for (std::size_t i = 0; i < w; ++i) {
    if (!(key.source >> i & 1)) continue;
    for (std::size_t j = 0; j < w; ++j) {
      if (!(sink_bits >> j & 1)) continue;
      const std::size_t cell = std::min(i, j) * w + std::max(i, j);
      if (over_limit(table.weight[cell])) return table.weight[cell];
      if (table.weight[cell] < 0.0) unknown.emplace_back(i, j);
    }
  }
  std::vector<char> removed(n_, 0);
  for (std::size_t i = 0; i < w; ++i) removed[w_local_[i]] = key.removed >> i & 1;
  std::vector<char> s(n_, 0);
  std::vector<char> t(n_, 0);
  for (auto [i, j] : unknown) {
    const std::size_t cell = std::min(i, j) * w + std::max(i, j);
    s[w_local_[i]] = 1;
    t[w_local_[j]] = 1;
    // Solved to completion: the same pair recurs under many limits.
    const auto outcome = solver_.solve(caps, removed, s, t);
    s[w_local_[i]] = 0;
    t[w_local_[j]] = 0;
    table.weight[cell] =
        outcome.status == VertexCutSolver::Status::kCut ? outcome.weight : kInfiniteCapacity;
    if (over_limit(table.weight[cell])) return table.weight[cell];
  }
  return std::nullopt;
}

VertexCutSolver::Outcome Searcher::w_cut(const std::vector<double>& caps,
                                         const std::vector<char>& removed,
                                         const std::vector<char>& source, double limit) {
  auto sink = [&] {
    std::vector<char> out(n_, 0);
    for (int v : w_local_) out[v] = !removed[v] && !source[v];
    return out;
  };
  if (w_local_.size() > 64) return solver_.solve(caps, removed, source, sink(), limit);

  CacheKey key{0, 0};
  for (std::size_t i = 0; i < w_local_.size(); ++i) {
    const int v = w_local_[i];
    if (removed[v]) key.removed |= std::uint64_t{1} << i;
    if (source[v]) key.source |= std::uint64_t{1} << i;
  }
  using Status = VertexCutSolver::Status;
  auto over = [](double flow) {
    VertexCutSolver::Outcome out;
    out.status = Status::kOverLimit;
    out.weight = flow;
    return out;
  };
  // Outcomes store the cut, or for over-limit solves the flow reached, which
  // bounds the cut weight from below.
  auto exceeds = [&](const CachedCut& c) {
    return c.outcome.status != Status::kUncuttable &&
           c.outcome.weight > limit + detail::kCutLimitTolerance;
  };
  auto it = cut_cache_.find(key);
  if (it != cut_cache_.end()) {
    const CachedCut& hit = it->second;
    if (hit.outcome.status == Status::kUncuttable) return hit.outcome;
    if (exceeds(hit)) return over(hit.outcome.weight);
    if (hit.outcome.status == Status::kCut) return hit.outcome;
  }
  // Swapping source and sink leaves the flow value unchanged.
  const CacheKey mirror{key.removed, all_w_bits_ & ~key.removed & ~key.source};
  auto twin = cut_cache_.find(mirror);
  if (twin != cut_cache_.end()) {
    if (twin->second.outcome.status == Status::kUncuttable) return twin->second.outcome;
    if (exceeds(twin->second)) return over(twin->second.outcome.weight);
  }
  if (auto bound = pair_bound(caps, key, limit)) {
    if (std::isinf(*bound)) {
      VertexCutSolver::Outcome out;
      out.status = Status::kUncuttable;
      return out;
    }
    return over(*bound);
  }
  VertexCutSolver::Outcome outcome = solver_.solve(caps, removed, source, sink(), limit);
  if (cut_cache_.size() >= kMaxCachedCuts) cut_cache_.clear();
  cut_cache_[key] = CachedCut{outcome};
  return outcome;
}

std::optional<Decomposition> Searcher::evaluate(const std::vector<char>& x_mask,
                                                const std::vector<char>& a_seed,
                                                const std::vector<char>* b_seed,
                                                double procedure_bound) {
  const std::vector<int> comp = solver_.components(x_mask);
  std::vector<char> comp_in_a(n_, 0);
  std::vector<char> comp_in_b(n_, 0);
  for (int v = 0; v < n_; ++v) {
    if (a_seed[v] && comp[v] >= 0) comp_in_a[comp[v]] = 1;
    if (b_seed && (*b_seed)[v] && comp[v] >= 0) comp_in_b[comp[v]] = 1;
  }
  // 0 = X, 1 = A, 2 = B, 3 = C
  std::vector<signed char> side(n_, 0);
  std::array<double, 4> m_side{};
  std::array<double, 4> m_w_side{};
  std::array<bool, 4> nonempty{};
  for (int v = 0; v < n_; ++v) {
    if (x_mask[v]) {
      side[v] = 0;
    } else if (comp_in_a[comp[v]]) {
      side[v] = 1;
    } else if (b_seed == nullptr || comp_in_b[comp[v]]) {
      side[v] = 2;
    } else {
      side[v] = 3;
    }
    m_side[side[v]] += weight_[v];
    if (in_w_[v]) m_w_side[side[v]] += weight_[v];
    nonempty[side[v]] = true;
  }
  if (!nonempty[1] || !nonempty[2]) return std::nullopt;

  const double t = budget_.threshold;
  const double a = budget_.alpha;
  const double m_x = m_side[0];
  const std::array<double, 3> m_parts{m_w_side[1] + m_x, m_w_side[2] + m_x, m_w_side[3] + m_x};
  bool ok = at_most((2 * a + 1) * t, measure_v_) && strictly_less(measure_w_, (a + 1) * t) &&
            at_most(m_x, a * t) && strictly_less(m_x, procedure_bound);
  for (double m : m_parts) ok = ok && strictly_less(m, (a + 1) * t);

  if (!ok) {
    if (record_) {
      const double next = threshold_for(measure_w_, m_x, m_parts, budget_);
      if (next > t + kTolerance && (!next_threshold_ || next < *next_threshold_)) {
        next_threshold_ = next;
      }
    }
    return std::nullopt;
  }
  Decomposition d;
  for (int v = 0; v < n_; ++v) {
    const Vertex id = g_.vertices()[v];
    switch (side[v]) {
      case 0: d.x.insert(id); break;
      case 1: d.a.insert(id); break;
      case 2: d.b.insert(id); break;
      default: d.c.insert(id); break;
    }
  }
  return d;
}

std::optional<Decomposition> Searcher::procedure_one(const std::vector<signed char>& labels) {
  const Parts parts = split(labels);
  if (parts.empty[kA]) return std::nullopt;
  const double t = budget_.threshold;
  const double a = budget_.alpha;
  const double bound = (a + 1) * t - parts.measure[kA];
  const double base_limit = cut_limit(parts.measure[kA], parts.measure[kX]);
  if (base_limit < -kTolerance) return std::nullopt;
  const std::vector<double>& caps = capacities();
  const std::vector<char>& removed = parts.mask[kX];

  auto with_cut = [&](const std::vector<int>& cut) {
    std::vector<char> x_mask(removed);
    for (int v : cut) x_mask[v] = 1;
    return x_mask;
  };

  if (!parts.empty[kB]) {
    if (parts.empty[kC]) {
      auto outcome = w_cut(caps, removed, parts.mask[kA], base_limit);
      if (outcome.status != VertexCutSolver::Status::kCut) return std::nullopt;
      return evaluate(with_cut(outcome.cut), parts.mask[kA], &parts.mask[kB], bound);
    }
    // 2-approximate 3-way cut: union of the two cheapest isolating cuts.
    // The union weighs at least as much as either of them, so one isolating
    // cut may run over the limit but not two.
    std::array<VertexCutSolver::Outcome, 3> isolating;
    int over_limit = 0;
    for (int i = 0; i < 3; ++i) {
      isolating[i] = w_cut(caps, removed, parts.mask[i], base_limit);
      if (isolating[i].status == VertexCutSolver::Status::kUncuttable) return std::nullopt;
      if (isolating[i].status == VertexCutSolver::Status::kOverLimit && ++over_limit > 1) {
        return std::nullopt;
      }
    }
    auto cost = [&](int i) {
      return isolating[i].status == VertexCutSolver::Status::kCut ? isolating[i].weight
                                                                  : kInfiniteCapacity;
    };
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return strictly_less(cost(x), cost(y)); });
    std::vector<int> cut = isolating[order[0]].cut;
    cut.insert(cut.end(), isolating[order[1]].cut.begin(), isolating[order[1]].cut.end());
    std::vector<char> x_mask = with_cut(cut);
    if (!solver_.separated(x_mask, parts.mask[kA], parts.mask[kB]) ||
        !solver_.separated(x_mask, parts.mask[kA], parts.mask[kC]) ||
        !solver_.separated(x_mask, parts.mask[kB], parts.mask[kC])) {
      throw InternalError("3-way cut does not separate W_A, W_B, W_C");
    }
    return evaluate(x_mask, parts.mask[kA], &parts.mask[kB], bound);
  }

  // W_B empty: each vertex outside W stands in for it; cheapest accepted wins.
  std::optional<Decomposition> best;
  double best_measure = std::numeric_limits<double>::infinity();
  std::vector<char> single(n_, 0);
  for (int v = 0; v < n_; ++v) {
    if (labels[v] != kOutside) continue;
    double limit = base_limit;
    if (best) limit = std::min(limit, best_measure - parts.measure[kX] - 2 * kTolerance);
    single[v] = 1;
    auto outcome = solver_.solve(caps, removed, parts.mask[kA], single, limit);
    if (outcome.status == VertexCutSolver::Status::kCut) {
      auto d = evaluate(with_cut(outcome.cut), parts.mask[kA], &single, bound);
      const double m_x = outcome.weight + parts.measure[kX];
      if (d && strictly_less(m_x, best_measure)) {
        best = std::move(d);
        best_measure = m_x;
      }
    }
    single[v] = 0;
  }
  return best;
}

std::optional<Decomposition> Searcher::procedure_two(const std::vector<signed char>& labels) {
  const Parts parts = split(labels);
  if (parts.empty[kA]) return std::nullopt;
  const double t = budget_.threshold;
  const double a = budget_.alpha;
  const double m_bc = parts.measure[kB] + parts.measure[kC];
  const double bound = std::min((a + 1) * t - parts.measure[kA], (a + 1) * t - m_bc);
  const double base_limit = cut_limit(std::max(parts.measure[kA], m_bc), parts.measure[kX]);
  if (base_limit < -kTolerance) return std::nullopt;
  const std::vector<double>& caps = capacities();
  const std::vector<char>& removed = parts.mask[kX];

  auto with_cut = [&](const std::vector<int>& cut) {
    std::vector<char> x_mask(removed);
    for (int v : cut) x_mask[v] = 1;
    return x_mask;
  };

  if (!parts.empty[kB] || !parts.empty[kC]) {
    auto outcome = w_cut(caps, removed, parts.mask[kA], base_limit);
    if (outcome.status != VertexCutSolver::Status::kCut) return std::nullopt;
    return evaluate(with_cut(outcome.cut), parts.mask[kA], nullptr, bound);
  }

  std::optional<Decomposition> best;
  double best_measure = std::numeric_limits<double>::infinity();
  std::vector<char> single(n_, 0);
  for (int v = 0; v < n_; ++v) {
    if (labels[v] != kOutside) continue;
    double limit = base_limit;
    if (best) limit = std::min(limit, best_measure - parts.measure[kX] - 2 * kTolerance);
    single[v] = 1;
    auto outcome = solver_.solve(caps, removed, parts.mask[kA], single, limit);
    single[v] = 0;
    if (outcome.status != VertexCutSolver::Status::kCut) continue;
    auto d = evaluate(with_cut(outcome.cut), parts.mask[kA], nullptr, bound);
    const double m_x = outcome.weight + parts.measure[kX];
    if (d && strictly_less(m_x, best_measure)) {
      best = std::move(d);
      best_measure = m_x;
    }
  }
  return best;
}

std::optional<Decomposition> Searcher::all_pairs(const std::vector<signed char>& labels) {
  const Parts parts = split(labels);
  const double base_limit = cut_limit(0.0, parts.measure[kX]);
  if (base_limit < -kTolerance) return std::nullopt;
  const std::vector<double>& caps = capacities();
  const std::vector<char>& removed = parts.mask[kX];
  const auto& adj = solver_.adjacency();

  std::optional<Decomposition> best;
  double best_measure = std::numeric_limits<double>::infinity();
  std::vector<char> source(n_, 0);
  std::vector<char> sink(n_, 0);
  std::vector<char> is_neighbor(n_, 0);
  for (int s = 0; s < n_; ++s) {
    if (labels[s] != kOutside) continue;
    for (int u : adj[s]) is_neighbor[u] = 1;
    source[s] = 1;
    for (int t = s + 1; t < n_; ++t) {
      if (labels[t] != kOutside || is_neighbor[t]) continue;
      double limit = base_limit;
      if (best) limit = std::min(limit, best_measure - parts.measure[kX] - 2 * kTolerance);
      sink[t] = 1;
      auto outcome = solver_.solve(caps, removed, source, sink, limit);
      sink[t] = 0;
      if (outcome.status != VertexCutSolver::Status::kCut) continue;
      std::vector<char> x_mask(removed);
      for (int v : outcome.cut) x_mask[v] = 1;
      auto d = evaluate(x_mask, source, nullptr, std::numeric_limits<double>::infinity());
      const double m_x = outcome.weight + parts.measure[kX];
      if (d && strictly_less(m_x, best_measure)) {
        best = std::move(d);
        best_measure = m_x;
      }
    }
    source[s] = 0;
    for (int u : adj[s]) is_neighbor[u] = 0;
  }
  return best;
}

bool Searcher::canonical(const std::vector<signed char>& labels) const {
  std::array<double, 3> m{};
  std::array<int, 3> first{n_, n_, n_};
  for (int v : w_local_) {
    const int l = labels[v];
    if (l == kX) continue;
    m[l] += weight_[v];
    first[l] = std::min(first[l], v);
  }
  for (int i = 0; i < 2; ++i) {
    if (strictly_less(m[i], m[i + 1])) return false;
    // Equal measures: keep only the labeling with the smaller leading vertex first.
    if (nearly_equal(m[i], m[i + 1]) && first[i + 1] < n_ && first[i + 1] < first[i]) return false;
  }
  return true;
}

bool Searcher::backtrack(std::size_t pos, int x_needed, std::vector<signed char>& labels,
                         std::array<double, 4>& partial) {
  const double t = budget_.threshold;
  const double a = budget_.alpha;
  if (pos == w_local_.size()) {
    if (x_needed != 0 || !canonical(labels)) return false;
    ++result_.partitions_tested;
    bool a_empty = true;
    double m_a = 0.0;
    for (int v : w_local_) {
      if (labels[v] == kA) {
        a_empty = false;
        m_a += weight_[v];
      }
    }
    std::optional<Decomposition> d;
    if (a_empty) {
      d = all_pairs(labels);
    } else if (strictly_less(m_a, t)) {
      d = procedure_one(labels);
    } else {
      d = procedure_two(labels);
    }
    if (d) {
      found_ = std::move(d);
      return true;
    }
    return false;
  }
  const int v = w_local_[pos];
  const int remaining = static_cast<int>(w_local_.size() - pos);
  for (int l = kA; l <= kX; ++l) {
    if (l == kX && x_needed == 0) continue;
    if (l != kX && x_needed >= remaining) continue;
    if (l != kX) {
      // Adjacent W vertices on different sides can never be separated.
      bool conflict = false;
      for (int u : solver_.adjacency()[v]) {
        if (in_w_[u] && labels[u] != kOutside && labels[u] != kX && labels[u] != l) {
          conflict = true;
          break;
        }
      }
      if (conflict) continue;
    }
    partial[l] += weight_[v];
    bool feasible = at_most(partial[kX], a * t);
    for (int p = kA; p <= kC && feasible; ++p) {
      feasible = strictly_less(partial[p] + partial[kX], (a + 1) * t);
    }
    // Canonical order needs measure(W_A) >= measure(W_B) >= measure(W_C) at
    // the end; give up once the rest of W cannot restore it.
    const double rest = suffix_weight_[pos + 1] + kTolerance;
    feasible = feasible && !strictly_less(partial[kA] + rest, partial[kB]) &&
               !strictly_less(partial[kB] + rest, partial[kC]);
    if (feasible) {
      labels[v] = static_cast<signed char>(l);
      if (backtrack(pos + 1, x_needed - (l == kX ? 1 : 0), labels, partial)) return true;
      labels[v] = kOutside;
    }
    partial[l] -= weight_[v];
  }
  return false;
}

SearchResult Searcher::search() {
  const double t = budget_.threshold;
  const double a = budget_.alpha;
  if (!strictly_less(measure_w_, (a + 1) * t)) {
    throw DomainError("find_w_decomposition requires measure(W) < (alpha + 1) t");
  }
  if (!at_most((2 * a + 1) * t, measure_v_)) {
    throw DomainError("find_w_decomposition requires measure(V) >= (2 alpha + 1) t");
  }
  std::vector<signed char> labels(n_, kOutside);
  const int w_size = static_cast<int>(w_local_.size());
  for (int x_count = 0; x_count <= w_size && !found_; ++x_count) {
    std::array<double, 4> partial{};
    backtrack(0, x_count, labels, partial);
  }
  result_.decomposition = std::move(found_);
  result_.next_threshold = next_threshold_;
  return std::move(result_);
}

WPartition checked_partition(const Graph& g, const WPartition& p) {
  for (const VertexSet* s : {&p.a, &p.b, &p.c, &p.x}) require_subset(g, *s, "WPartition");
  if (!disjoint(p.a, p.b) || !disjoint(p.a, p.c) || !disjoint(p.a, p.x) || !disjoint(p.b, p.c) ||
      !disjoint(p.b, p.x) || !disjoint(p.c, p.x)) {
    throw DomainError("WPartition parts must be pairwise disjoint");
  }
  return p;
}

VertexSet union_of(const WPartition& p) {
  VertexSet w = p.a;
  w.insert(p.b.begin(), p.b.end());
  w.insert(p.c.begin(), p.c.end());
  w.insert(p.x.begin(), p.x.end());
  return w;
}

void reverify(const Graph& g, const std::optional<Decomposition>& d, const VertexSet& w,
              const DecompBudget& budget) {
  if (d && !is_w_decomposition(g, *d, w, budget)) {
    throw InternalError("accepted decomposition fails the W-decomposition re-check");
  }
}

}  // namespace

bool is_decomposition(const Graph& g, const Decomposition& d) {
  if (d.a.empty() || d.b.empty()) return false;
  const std::array<const VertexSet*, 4> parts{&d.x, &d.a, &d.b, &d.c};
  std::size_t total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    total += parts[i]->size();
    for (Vertex v : *parts[i]) {
      if (!g.contains(v)) return false;
    }
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!disjoint(*parts[i], *parts[j])) return false;
    }
  }
  if (total != g.num_vertices()) return false;
  for (const auto& [u, v] : g.edges()) {
    auto side = [&](Vertex x) {
      for (int i = 1; i < 4; ++i) {
        if (parts[i]->count(x)) return i;
      }
      return 0;
    };
    const int su = side(u);
    const int sv = side(v);
    if (su != 0 && sv != 0 && su != sv) return false;
  }
  return true;
}

bool is_w_decomposition(const Graph& g, const Decomposition& d, const VertexSet& w,
                        const DecompBudget& budget) {
  for (Vertex v : w) {
    if (!g.contains(v)) return false;
  }
  if (!is_decomposition(g, d)) return false;
  const Measure& m = budget.measure;
  const double t = budget.threshold;
  const double a = budget.alpha;
  if (!at_most((2 * a + 1) * t, m.of_all(g.vertices()))) return false;
  if (!strictly_less(measure_of(m, w), (a + 1) * t)) return false;
  const double m_x = measure_of(m, d.x);
  if (!at_most(m_x, a * t)) return false;
  for (const VertexSet* part : {&d.a, &d.b, &d.c}) {
    double m_part = m_x;
    for (Vertex v : w) {
      if (part->count(v)) m_part += m.of(v);
    }
    if (!strictly_less(m_part, (a + 1) * t)) return false;
  }
  return true;
}

double min_valid_threshold(const Decomposition& d, const VertexSet& w, const DecompBudget& budget) {
  const Measure& m = budget.measure;
  const double m_x = measure_of(m, d.x);
  std::array<double, 3> parts{m_x, m_x, m_x};
  const std::array<const VertexSet*, 3> sides{&d.a, &d.b, &d.c};
  for (Vertex v : w) {
    for (int i = 0; i < 3; ++i) {
      if (sides[i]->count(v)) parts[i] += m.of(v);
    }
  }
  return threshold_for(measure_of(m, w), m_x, parts, budget);
}

std::optional<Decomposition> procedure_one(const Graph& g, const WPartition& p,
                                           const DecompBudget& budget) {
  checked_partition(g, p);
  const VertexSet w = union_of(p);
  Searcher searcher(g, w, budget, false);
  auto d = searcher.procedure_one(searcher.labels_from(p));
  reverify(g, d, w, budget);
  return d;
}

std::optional<Decomposition> procedure_two(const Graph& g, const WPartition& p,
                                           const DecompBudget& budget) {
  checked_partition(g, p);
  const VertexSet w = union_of(p);
  Searcher searcher(g, w, budget, false);
  auto d = searcher.procedure_two(searcher.labels_from(p));
  reverify(g, d, w, budget);
  return d;
}

SearchResult find_w_decomposition(const Graph& g, const VertexSet& w, const DecompBudget& budget,
                                  const SearchOptions& options) {
  require_subset(g, w, "find_w_decomposition");
  if (!(budget.alpha >= 1.0) || !(budget.threshold > 0.0)) {
    throw DomainError("find_w_decomposition requires alpha >= 1 and a positive threshold");
  }
  Searcher searcher(g, w, budget, options.record_thresholds, options.record_cap);
  SearchResult result = searcher.search();
  reverify(g, result.decomposition, w, budget);
  return result;
}

}  // namespace jta
