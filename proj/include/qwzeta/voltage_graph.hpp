#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qwzeta/errors.hpp"
#include "qwzeta/graph.hpp"
#include "qwzeta/numeric.hpp"
#include "qwzeta/operators.hpp"

namespace qwzeta {

// An edge of the quotient graph carrying a Z^d voltage, oriented u -> v.
// The reverse arc carries -z.
struct VoltageEdge {
  int u;
  int v;
  std::vector<long long> z;
};

namespace detail {

// True iff the columns generate all of Z^d. Integer column reduction; the
// spanned lattice has full rank with unit index exactly when every pivot of
// the triangular form is +-1.
inline bool generates_full_lattice(std::vector<std::vector<long long>> cols,
                                   int d) {
  int rank = 0;
  long long index = 1;
  for (int row = 0; row < d; ++row) {
    while (true) {
      int best = -1;
      for (int j = rank; j < static_cast<int>(cols.size()); ++j)
        if (cols[j][row] != 0 &&
            (best < 0 || std::abs(cols[j][row]) < std::abs(cols[best][row])))
          best = j;
      if (best < 0) break;
      std::swap(cols[best], cols[static_cast<std::size_t>(rank)]);
      const long long pivot = cols[rank][row];
      bool clean = true;
      for (int j = rank + 1; j < static_cast<int>(cols.size()); ++j) {
        const long long q = cols[j][row] / pivot;
        if (q != 0)
          for (int r = 0; r < d; ++r) cols[j][r] -= q * cols[rank][r];
        if (cols[j][row] != 0) clean = false;
      }
      if (clean) {
        index *= std::abs(pivot);
        ++rank;
        break;
      }
    }
  }
  return rank == d && index == 1;
}

inline long long mod_positive(long long x, long long l) {
  return ((x % l) + l) % l;
}

}  // namespace detail

// Quotient of a Z^d-periodic graph under the translation action: finitely
// many vertices and edges, each edge labelled by the lattice step between
// the cover copies it joins. Construction validates that the infinite cover
// is a simple connected graph.
class VoltageGraph {
public:
  VoltageGraph(int dim, int vertex_count, std::vector<VoltageEdge> edges)
      : dim_(dim), n_(vertex_count), edges_(std::move(edges)) {
    validate();
  }

  int dim() const { return dim_; }
  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int arc_count() const { return 2 * edge_count(); }
  const std::vector<VoltageEdge>& edges() const { return edges_; }

  int arc_origin(int e) const {
    return (e & 1) ? edges_[e >> 1].v : edges_[e >> 1].u;
  }
  int arc_terminal(int e) const {
    return (e & 1) ? edges_[e >> 1].u : edges_[e >> 1].v;
  }
  std::vector<long long> arc_voltage(int e) const {
    std::vector<long long> z = edges_[e >> 1].z;
    if (e & 1)
      for (auto& x : z) x = -x;
    return z;
  }
  int inverse(int e) const { return e ^ 1; }

  int degree(int v) const { return degrees_[v]; }
  const std::vector<int>& degrees() const { return degrees_; }

private:
  void validate() {
    if (dim_ < 1) throw ValidationError("voltage graph: dim must be >= 1");
    if (n_ <= 0) throw ValidationError("voltage graph: vertex count must be positive");
    degrees_.assign(n_, 0);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const auto& e = edges_[k];
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw ValidationError("voltage graph: vertex id out of range on edge " +
                              std::to_string(k));
      if (static_cast<int>(e.z.size()) != dim_)
        throw ValidationError("voltage graph: edge " + std::to_string(k) +
                              " voltage has wrong dimension");
      ++degrees_[e.u];
      ++degrees_[e.v];
    }
    check_cover_simple();
    check_cover_connected();
  }

  // The cover is simple iff loops carry nonzero voltage, parallel edges
  // carry distinct voltages (in a common orientation), and no two loops at
  // one vertex carry equal or opposite voltages.
  void check_cover_simple() const {
    auto is_zero = [](const std::vector<long long>& z) {
      return std::all_of(z.begin(), z.end(), [](long long x) { return x == 0; });
    };
    for (std::size_t k = 0; k < edges_.size(); ++k)
      if (edges_[k].u == edges_[k].v && is_zero(edges_[k].z))
        throw ValidationError("voltage graph: loop edge " + std::to_string(k) +
                              " with zero voltage gives a loop in the cover");
    for (std::size_t k = 0; k < edges_.size(); ++k)
      for (std::size_t l = k + 1; l < edges_.size(); ++l) {
        const auto& a = edges_[k];
        const auto& b = edges_[l];
        if (std::minmax(a.u, a.v) != std::minmax(b.u, b.v)) continue;
        const bool loops = a.u == a.v;
        // b's voltage oriented to match a's u -> v direction
        std::vector<long long> zb = b.z;
        if (!loops && a.u != b.u)
          for (auto& x : zb) x = -x;
        bool equal = a.z == zb;
        bool opposite = true;
        for (int r = 0; r < dim_; ++r)
          if (a.z[r] != -zb[r]) opposite = false;
        if (equal || (loops && opposite))
          throw ValidationError("voltage graph: edges " + std::to_string(k) +
                                " and " + std::to_string(l) +
                                " give a multi-edge in the cover");
      }
  }

  // Connected cover needs a connected quotient whose cycle voltages,
  // corrected by a spanning-tree potential, generate Z^d.
  void check_cover_connected() const {
    std::vector<std::vector<std::pair<int, std::size_t>>> nbr(n_);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      nbr[edges_[k].u].emplace_back(edges_[k].v, k);
      nbr[edges_[k].v].emplace_back(edges_[k].u, k);
    }
    std::vector<char> reached(n_, 0);
    std::vector<char> in_tree(edges_.size(), 0);
    std::vector<std::vector<long long>> potential(
        n_, std::vector<long long>(dim_, 0));
    std::vector<int> stack{0};
    reached[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [w, k] : nbr[v]) {
        if (reached[w]) continue;
        reached[w] = 1;
        ++count;
        in_tree[k] = 1;
        const long long sign = (edges_[k].u == v) ? 1 : -1;
        for (int r = 0; r < dim_; ++r)
          potential[w][r] = potential[v][r] + sign * edges_[k].z[r];
        stack.push_back(w);
      }
    }
    if (count != n_)
      throw ValidationError("voltage graph: quotient not connected");
    std::vector<std::vector<long long>> cycle_voltages;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      if (in_tree[k]) continue;
      std::vector<long long> w(dim_);
      for (int r = 0; r < dim_; ++r)
        w[r] = edges_[k].z[r] + potential[edges_[k].u][r] -
               potential[edges_[k].v][r];
      cycle_voltages.push_back(std::move(w));
    }
    if (!detail::generates_full_lattice(std::move(cycle_voltages), dim_))
      throw ValidationError(
          "voltage graph: cycle voltages do not generate Z^" +
          std::to_string(dim_) + ", cover is disconnected");
  }

  int dim_;
  int n_;
  std::vector<VoltageEdge> edges_;
  std::vector<int> degrees_;
};

// Gamma-trace of the identity on vertex and arc sections: the quotient
// vertex and arc counts.
struct GammaTraces {
  int identity_on_vertices;
  int identity_on_arcs;
};

inline GammaTraces tr_gamma_constants(const VoltageGraph& vg) {
  return {vg.vertex_count(), vg.arc_count()};
}

inline int l2_euler_characteristic(const VoltageGraph& vg) {
  return vg.vertex_count() - vg.edge_count();
}

// ---- Bloch fibers ----
//
// A(theta)_{uv} = sum over arcs e: v -> u of exp(i theta . z_e). Hermitian
// for every theta because the reverse arc carries the opposite voltage.

inline Complex fiber_phase(const std::vector<double>& theta,
                           const std::vector<long long>& z) {
  double dot = 0.0;
  for (std::size_t r = 0; r < z.size(); ++r) dot += theta[r] * z[r];
  return std::polar(1.0, dot);
}

inline CMatrix fiber_adjacency(const VoltageGraph& vg,
                               const std::vector<double>& theta) {
  const int n = vg.vertex_count();
  CMatrix a = CMatrix::Zero(n, n);
  for (int e = 0; e < vg.arc_count(); ++e)
    a(vg.arc_terminal(e), vg.arc_origin(e)) +=
        fiber_phase(theta, vg.arc_voltage(e));
  return a;
}

inline Eigen::MatrixXd quotient_degree_matrix(const VoltageGraph& vg) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(vg.vertex_count(), vg.vertex_count());
  for (int v = 0; v < vg.vertex_count(); ++v) d(v, v) = vg.degree(v);
  return d;
}

// D^{-1/2} A(theta) D^{-1/2}, the fiber of the discriminant dSd*.
inline CMatrix fiber_dsd(const VoltageGraph& vg,
                         const std::vector<double>& theta) {
  const int n = vg.vertex_count();
  CMatrix m = fiber_adjacency(vg, theta);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      m(u, v) /= std::sqrt(static_cast<double>(vg.degree(u)) * vg.degree(v));
  return m;
}

// S(theta)_{e f} = [f = inverse(e)] exp(-i theta . z_e).
inline CMatrix fiber_shift(const VoltageGraph& vg,
                           const std::vector<double>& theta) {
  const int r = vg.arc_count();
  CMatrix s = CMatrix::Zero(r, r);
  for (int e = 0; e < r; ++e)
    s(e, vg.inverse(e)) = std::conj(fiber_phase(theta, vg.arc_voltage(e)));
  return s;
}

// d(theta)_{v e} = [v = t(e)] exp(i theta . z_e) / sqrt(deg t(e)).
// Satisfies d(theta) d(theta)* = I and d S d*(theta) = fiber_dsd.
inline CMatrix fiber_boundary(const VoltageGraph& vg,
                              const std::vector<double>& theta) {
  const int n = vg.vertex_count();
  const int r = vg.arc_count();
  CMatrix d = CMatrix::Zero(n, r);
  for (int e = 0; e < r; ++e) {
    const int v = vg.arc_terminal(e);
    d(v, e) = fiber_phase(theta, vg.arc_voltage(e)) /
              std::sqrt(static_cast<double>(vg.degree(v)));
  }
  return d;
}

inline CMatrix fiber_coin(const VoltageGraph& vg,
                          const std::vector<double>& theta,
                          const CoinParams& coin) {
  const int r = vg.arc_count();
  const CMatrix d = fiber_boundary(vg, theta);
  const CMatrix p = d.adjoint() * d;
  return coin.a * p + coin.b * (CMatrix::Identity(r, r) - p);
}

inline CMatrix fiber_evolution(const VoltageGraph& vg,
                               const std::vector<double>& theta,
                               const CoinParams& coin) {
  return fiber_shift(vg, theta) * fiber_coin(vg, theta, coin);
}

// ---- finite quotients ----
//
// The derived graph over Z^d / L: vertices (v, k), one edge per quotient
// edge and k joining (u, k) to (v, k + z mod L). Vertex (v, k) maps to
// index v + n0 * (k_0 + L k_1 + L^2 k_2 + ...).

inline Graph finite_quotient(const VoltageGraph& vg, long long l) {
  if (l < 1) throw ValidationError("finite quotient: L must be >= 1");
  const int d = vg.dim();
  const int n0 = vg.vertex_count();
  long long cells = 1;
  for (int r = 0; r < d; ++r) {
    cells *= l;
    if (cells > 4096)
      throw ValidationError("finite quotient: L^dim too large");
  }
  auto flat = [&](const std::vector<long long>& k) {
    long long idx = 0;
    for (int r = d - 1; r >= 0; --r) idx = idx * l + k[r];
    return idx;
  };
  std::vector<std::pair<int, int>> edges;
  std::map<std::pair<int, int>, std::size_t> seen;
  std::vector<long long> k(d, 0);
  for (long long cell = 0; cell < cells; ++cell) {
    for (std::size_t j = 0; j < vg.edges().size(); ++j) {
      const auto& e = vg.edges()[j];
      std::vector<long long> k2(d);
      for (int r = 0; r < d; ++r)
        k2[r] = detail::mod_positive(k[r] + e.z[r], l);
      const int a = static_cast<int>(e.u + n0 * flat(k));
      const int b = static_cast<int>(e.v + n0 * flat(k2));
      if (a == b)
        throw ValidationError("finite quotient: edge " + std::to_string(j) +
                              " collapses to a loop at L = " +
                              std::to_string(l));
      const auto key = std::minmax(a, b);
      auto [it, fresh] = seen.emplace(key, j);
      if (!fresh)
        throw ValidationError("finite quotient: edges " +
                              std::to_string(it->second) + " and " +
                              std::to_string(j) +
                              " become parallel at L = " + std::to_string(l));
      edges.emplace_back(key.first, key.second);
    }
    for (int r = 0; r < d; ++r) {
      if (++k[r] < l) break;
      k[r] = 0;
    }
  }
  return Graph(static_cast<int>(n0 * cells), edges);
}

// ---- named lattices ----

inline VoltageGraph line_lattice() {
  return VoltageGraph(1, 1, {{0, 0, {1}}});
}

inline VoltageGraph grid2d_lattice() {
  return VoltageGraph(2, 1, {{0, 0, {1, 0}}, {0, 0, {0, 1}}});
}

inline VoltageGraph honeycomb_lattice() {
  return VoltageGraph(2, 2, {{0, 1, {0, 0}}, {0, 1, {1, 0}}, {0, 1, {0, 1}}});
}

// ---- JSON format ----
// {"dim": d, "n": n0, "edges": [{"u": int, "v": int, "z": [int x d]}, ...]}

inline VoltageGraph voltage_graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("n") ||
      !j.contains("edges"))
    throw ValidationError(
        "voltage graph json: expected {\"dim\", \"n\", \"edges\"}");
  if (!j["dim"].is_number_integer() || !j["n"].is_number_integer())
    throw ValidationError("voltage graph json: \"dim\" and \"n\" must be integers");
  std::vector<VoltageEdge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") ||
        !e.contains("z") || !e["z"].is_array())
      throw ValidationError(
          "voltage graph json: each edge must be {\"u\", \"v\", \"z\"}");
    VoltageEdge ve;
    ve.u = e["u"].get<int>();
    ve.v = e["v"].get<int>();
    for (const auto& x : e["z"]) {
      if (!x.is_number_integer())
        throw ValidationError("voltage graph json: voltages must be integers");
      ve.z.push_back(x.get<long long>());
    }
    edges.push_back(std::move(ve));
  }
  return VoltageGraph(j["dim"].get<int>(), j["n"].get<int>(), edges);
}

inline nlohmann::json voltage_graph_to_json(const VoltageGraph& vg) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : vg.edges())
    edges.push_back({{"u", e.u}, {"v", e.v}, {"z", e.z}});
  return {{"dim", vg.dim()}, {"n", vg.vertex_count()}, {"edges", edges}};
}

}  // namespace qwzeta
