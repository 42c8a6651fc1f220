#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qwzeta/errors.hpp"
#include "qwzeta/numeric.hpp"

namespace qwzeta {

// An oriented edge. Each undirected edge of the graph contributes two arcs,
// stored at indices 2k and 2k+1 so that inverse(e) = e ^ 1.
struct Arc {
  int origin;
  int terminal;
};

// Finite simple connected graph with its arc set. Immutable once built; all
// operations on it are pure.
class Graph {
public:
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges)
      : n_(vertex_count), edges_(std::move(edges)) {
    validate_and_index();
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int arc_count() const { return 2 * edge_count(); }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const Arc& arc(int e) const { return arcs_[e]; }
  int inverse(int e) const { return e ^ 1; }
  int degree(int v) const { return degrees_[v]; }
  const std::vector<int>& degrees() const { return degrees_; }

  // r = m - n + 1 for a connected graph.
  int betti_number() const { return edge_count() - n_ + 1; }

  bool min_degree_two() const {
    return *std::min_element(degrees_.begin(), degrees_.end()) >= 2;
  }

  Eigen::MatrixXd adjacency_matrix() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& [u, v] : edges_) {
      a(u, v) = 1.0;
      a(v, u) = 1.0;
    }
    return a;
  }

  Eigen::MatrixXd degree_matrix() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
    for (int v = 0; v < n_; ++v) d(v, v) = degrees_[v];
    return d;
  }

private:
  void validate_and_index() {
    if (n_ <= 0) throw ValidationError("graph: vertex count must be positive");
    std::set<std::pair<int, int>> seen;
    degrees_.assign(n_, 0);
    arcs_.reserve(2 * edges_.size());
    for (const auto& [u, v] : edges_) {
      if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw ValidationError("graph: vertex id out of range [0, n)");
      if (u == v)
        throw ValidationError("graph: loop edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ") not allowed");
      auto key = std::minmax(u, v);
      if (!seen.insert(key).second)
        throw ValidationError("graph: duplicate edge (" + std::to_string(u) +
                              "," + std::to_string(v) + ")");
      arcs_.push_back({u, v});
      arcs_.push_back({v, u});
      ++degrees_[u];
      ++degrees_[v];
    }
    // connectivity
    std::vector<char> reached(n_, 0);
    std::vector<int> stack{0};
    reached[0] = 1;
    int count = 1;
    std::vector<std::vector<int>> nbr(n_);
    for (const auto& [u, v] : edges_) {
      nbr[u].push_back(v);
      nbr[v].push_back(u);
    }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : nbr[v])
        if (!reached[w]) {
          reached[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    if (count != n_) throw ValidationError("graph: not connected");
  }

  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Arc> arcs_;
  std::vector<int> degrees_;
};

inline Graph build_graph(const std::vector<std::pair<int, int>>& edges, int n) {
  return Graph(n, edges);
}

// Simple random walk: T(u,v) = 1/deg(u) for each neighbour v of u. Row sums
// are exactly 1 because each row holds deg(u) copies of the same reciprocal.
inline Eigen::MatrixXd transition_matrix(const Graph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    t(u, v) = 1.0 / g.degree(u);
    t(v, u) = 1.0 / g.degree(v);
  }
  return t;
}

inline int betti_number(const Graph& g) { return g.betti_number(); }

// Counts of closed non-backtracking tail-free paths by length, one count per
// starting arc. counts[m-1] is the length-m count.
struct CycleCountSeries {
  std::vector<std::int64_t> counts;

  std::int64_t at_length(int m) const { return counts.at(m - 1); }
};

namespace detail {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix checked_multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t aik = a[i][k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t prod;
        if (__builtin_mul_overflow(aik, b[k][j], &prod) ||
            __builtin_add_overflow(c[i][j], prod, &c[i][j]))
          throw DomainError(DomainError::Kind::Overflow,
                            "cycle counts exceed 64-bit integer range");
      }
    }
  return c;
}

}  // namespace detail

// Arc-to-arc non-backtracking matrix: W(e,f) = 1 iff t(e) = o(f) and
// f != inverse(e). trace(W^m) counts the length-m reduced closed paths
// exactly, in integer arithmetic.
inline detail::IntMatrix non_backtracking_matrix(const Graph& g) {
  const int r = g.arc_count();
  detail::IntMatrix w(r, std::vector<std::int64_t>(r, 0));
  for (int e = 0; e < r; ++e)
    for (int f = 0; f < r; ++f)
      if (g.arc(e).terminal == g.arc(f).origin && f != g.inverse(e))
        w[e][f] = 1;
  return w;
}

inline CycleCountSeries reduced_cycle_counts(const Graph& g, int max_length) {
  if (max_length < 1)
    throw ValidationError("reduced_cycle_counts: length bound must be >= 1");
  const auto w = non_backtracking_matrix(g);
  const int r = g.arc_count();
  CycleCountSeries series;
  series.counts.reserve(max_length);
  detail::IntMatrix power = w;
  for (int m = 1; m <= max_length; ++m) {
    if (m > 1) power = detail::checked_multiply(power, w);
    std::int64_t trace = 0;
    for (int i = 0; i < r; ++i)
      if (__builtin_add_overflow(trace, power[i][i], &trace))
        throw DomainError(DomainError::Kind::Overflow,
                          "cycle counts exceed 64-bit integer range");
    series.counts.push_back(trace);
  }
  return series;
}

// ---- named graphs ----

inline Graph cycle_graph(int n) {
  if (n < 3) throw ValidationError("cycle graph needs n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

inline Graph path_graph(int n) {
  if (n < 2) throw ValidationError("path graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

inline Graph complete_graph(int n) {
  if (n < 2) throw ValidationError("complete graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer 5-cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph(10, edges);
}

// Random connected graph: a random increasing spanning tree plus a few extra
// edges. Deterministic for a given seed.
inline Graph random_connected_graph(int n, unsigned seed, int extra_edges = -1) {
  if (n < 2) throw ValidationError("random graph needs n >= 2");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> present;
  for (int v = 1; v < n; ++v) {
    int u = static_cast<int>(rng() % static_cast<unsigned>(v));
    edges.emplace_back(u, v);
    present.insert(std::minmax(u, v));
  }
  if (extra_edges < 0) extra_edges = n / 2;
  int attempts = 8 * n;
  while (extra_edges > 0 && attempts-- > 0) {
    int u = static_cast<int>(rng() % static_cast<unsigned>(n));
    int v = static_cast<int>(rng() % static_cast<unsigned>(n));
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (present.count(key)) continue;
    present.insert(key);
    edges.emplace_back(key.first, key.second);
    --extra_edges;
  }
  return Graph(n, edges);
}

// ---- JSON format: {"n": int, "edges": [[u,v], ...]} ----

inline Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw ValidationError("graph json: expected {\"n\": int, \"edges\": [[u,v],...]}");
  if (!j["n"].is_number_integer())
    throw ValidationError("graph json: \"n\" must be an integer");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw ValidationError("graph json: each edge must be a pair [u, v]");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph(j["n"].get<int>(), edges);
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

}  // namespace qwzeta
