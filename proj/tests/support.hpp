#pragma once

#include <qwzeta/qwzeta.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace qwzeta::testing {

// Independent oracle for trace(W^m): walks the arc digraph directly,
// counting the closed non-backtracking arc sequences of length m from each
// starting arc.
inline std::int64_t brute_force_closed_paths(const Graph& g, int length) {
  const int arcs = g.arc_count();
  std::int64_t total = 0;
  for (int start = 0; start < arcs; ++start) {
    std::vector<int> frontier{start};
    for (int step = 1; step < length; ++step) {
      std::vector<int> next;
      for (int e : frontier)
        for (int f = 0; f < arcs; ++f)
          if (g.arc(e).terminal == g.arc(f).origin && f != g.inverse(e))
            next.push_back(f);
      frontier = std::move(next);
    }
    for (int e : frontier)
      if (g.arc(e).terminal == g.arc(start).origin && start != g.inverse(e))
        ++total;
  }
  return total;
}

inline Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * 3.141592653589793 * unit(rng);
  return std::polar(r, phi);
}

inline CoinParams random_unimodular_coin(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-3.141592653589793,
                                               3.141592653589793);
  return {std::polar(1.0, angle(rng)), std::polar(1.0, angle(rng))};
}

inline std::vector<double> random_theta(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
  std::vector<double> theta(dim);
  for (double& x : theta) x = angle(rng);
  return theta;
}

// The two block operators whose products triangularize the fiber walk
// determinant: LM has the vertex kernel in its top-left corner, ML carries
// (I - uU)(I + ubS) in the bottom-right.
struct FactorizationBlocks {
  CMatrix l;
  CMatrix m;
};

inline FactorizationBlocks make_lm_blocks(const VoltageGraph& vg,
                                          const std::vector<double>& theta,
                                          Complex u, const CoinParams& coin) {
  const int n = vg.vertex_count();
  const int r = vg.arc_count();
  const CMatrix d = fiber_boundary(vg, theta);
  const CMatrix s = fiber_shift(vg, theta);
  const Complex b2u2 = coin.b * coin.b * u * u;
  const Complex c = coin.c();
  FactorizationBlocks out;
  out.l = CMatrix::Zero(n + r, n + r);
  out.m = CMatrix::Zero(n + r, n + r);
  out.l.topLeftCorner(n, n) = (Complex(1.0) - b2u2) * CMatrix::Identity(n, n);
  out.l.topRightCorner(n, r) = -c * d - coin.b * c * u * d * s;
  out.l.bottomRightCorner(r, r) = CMatrix::Identity(r, r);
  out.m.topLeftCorner(n, n) = CMatrix::Identity(n, n);
  out.m.topRightCorner(n, r) = c * d + coin.b * c * u * d * s;
  out.m.bottomLeftCorner(r, n) = u * s * d.adjoint();
  out.m.bottomRightCorner(r, r) =
      (Complex(1.0) - b2u2) * CMatrix::Identity(r, r);
  return out;
}

}  // namespace qwzeta::testing
