#pragma once

#include <string>
#include <vector>

#include "qwzeta/graph.hpp"
#include "qwzeta/operators.hpp"

namespace qwzeta {

struct NamedGraph {
  std::string name;
  Graph graph;
};

struct NamedCoin {
  std::string name;
  CoinParams coin;
};

// Fixed sweep of small connected graphs, mixing regular, non-regular, and
// pseudorandom shapes. Every entry has minimum degree >= 2 except the path.
inline std::vector<NamedGraph> standard_graph_corpus() {
  std::vector<NamedGraph> out;
  for (int n = 3; n <= 7; ++n)
    out.push_back({"cycle" + std::to_string(n), cycle_graph(n)});
  out.push_back({"complete4", complete_graph(4)});
  out.push_back({"complete5", complete_graph(5)});
  out.push_back({"petersen", petersen_graph()});
  out.push_back({"random8", random_connected_graph(8, 20260822u, 4)});
  out.push_back({"random10", random_connected_graph(10, 7u, 5)});
  return out;
}

inline CoinParams unimodular_coin(double phi, double psi) {
  return {std::polar(1.0, phi), std::polar(1.0, psi)};
}

// Coin sweep: the Grover coin, generic unimodular pairs, the degenerate
// a = b case, and two coins off the unit circle.
inline std::vector<NamedCoin> standard_coin_corpus() {
  std::vector<NamedCoin> out;
  out.push_back({"grover", CoinParams::grover()});
  out.push_back({"unimodular1", unimodular_coin(0.3, 2.1)});
  out.push_back({"unimodular2", unimodular_coin(1.7, -0.4)});
  out.push_back({"unimodular3", unimodular_coin(-2.9, 0.8)});
  out.push_back({"equal", {Complex(0.6, 0.8), Complex(0.6, 0.8)}});
  out.push_back({"contracting", {std::polar(0.8, 0.5), std::polar(0.7, -1.1)}});
  out.push_back({"expanding", {std::polar(1.2, -0.9), std::polar(1.1, 0.4)}});
  return out;
}

}  // namespace qwzeta
