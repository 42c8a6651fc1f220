#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace qwzeta;

TEST_CASE("coin parameters know their derived quantities") {
  const CoinParams grover = CoinParams::grover();
  CHECK(grover.a == Complex(1.0, 0.0));
  CHECK(grover.b == Complex(-1.0, 0.0));
  CHECK(grover.c() == Complex(2.0, 0.0));
  CHECK(grover.unitary());
  CHECK(unimodular_coin(0.4, -1.2).unitary());
  CHECK_FALSE(CoinParams{Complex(0.8, 0.0), Complex(-1.0, 0.0)}.unitary());
}

TEST_CASE("shift is the arc-reversal involution") {
  for (const auto& entry : standard_graph_corpus()) {
    INFO(entry.name);
    const CMatrix s = shift_matrix(entry.graph);
    const int r = entry.graph.arc_count();
    CHECK(max_abs(s * s - CMatrix::Identity(r, r)) == 0.0);
    CHECK(max_abs(s - s.transpose()) == 0.0);
  }
}

TEST_CASE("boundary map is a coisometry and d*d a projection") {
  for (const auto& entry : standard_graph_corpus()) {
    INFO(entry.name);
    const CMatrix d = boundary_map(entry.graph);
    const int n = entry.graph.vertex_count();
    CHECK(max_abs(d * d.adjoint() - CMatrix::Identity(n, n)) < 1e-14);
    const CMatrix p = d.adjoint() * d;
    CHECK(max_abs(p * p - p) < 1e-14);
    CHECK(max_abs(p - p.adjoint()) < 1e-15);
  }
}

TEST_CASE("entrywise Grover matrix equals the factored walk") {
  for (const auto& entry : standard_graph_corpus()) {
    INFO(entry.name);
    CHECK(max_abs(grover_matrix(entry.graph) -
                  evolution_matrix(entry.graph, CoinParams::grover())) <
          1e-15);
  }
}

TEST_CASE("Grover matrix entries follow the degree rule") {
  // triangle arcs: 0:0->1, 1:1->0, 2:1->2, 3:2->1, 4:2->0, 5:0->2
  const Graph g = cycle_graph(3);
  const CMatrix u = grover_matrix(g);
  CHECK(u(2, 0) == Complex(1.0, 0.0));   // continue 0->1->2, weight 2/2
  CHECK(u(1, 0) == Complex(0.0, 0.0));   // reversal, weight 2/2 - 1
  CHECK(u(0, 2) == Complex(0.0, 0.0));   // incompatible endpoints
  const Graph k4 = complete_graph(4);
  const CMatrix u4 = grover_matrix(k4);
  // arc 0 is 0->1, arc 1 is 1->0: reversal weight 2/3 - 1
  CHECK(std::abs(u4(0, 1) - Complex(2.0 / 3.0 - 1.0, 0.0)) < 1e-15);
}

TEST_CASE("walk is unitary exactly when the coin is") {
  for (const auto& entry : standard_graph_corpus()) {
    for (const auto& named : standard_coin_corpus()) {
      INFO(entry.name << " / " << named.name);
      const CMatrix u = evolution_matrix(entry.graph, named.coin);
      const int r = entry.graph.arc_count();
      const double defect = max_abs(u.adjoint() * u - CMatrix::Identity(r, r));
      if (named.coin.unitary())
        CHECK(defect < 1e-12);
      else
        CHECK(defect > 1e-3);
    }
  }
}

TEST_CASE("coin spectrum is a on the vertex range and b on its complement") {
  for (const auto& entry : {standard_graph_corpus()[1],
                            standard_graph_corpus()[7]}) {
    for (const auto& named : {standard_coin_corpus()[0],
                              standard_coin_corpus()[1],
                              standard_coin_corpus()[6]}) {
      INFO(entry.name << " / " << named.name);
      const int n = entry.graph.vertex_count();
      const int r = entry.graph.arc_count();
      const CMatrix c = coin_matrix(entry.graph, named.coin);
      const std::vector<Complex> spectrum = matrix_eigenvalues(c);
      int at_a = 0;
      int at_b = 0;
      for (Complex lambda : spectrum) {
        if (std::abs(lambda - named.coin.a) < 1e-9) ++at_a;
        if (std::abs(lambda - named.coin.b) < 1e-9) ++at_b;
      }
      CHECK(at_a == n);
      CHECK(at_b == r - n);
    }
  }
}

TEST_CASE("discriminant equals the symmetrized adjacency") {
  for (const auto& entry : standard_graph_corpus()) {
    INFO(entry.name);
    const Graph& g = entry.graph;
    const OperatorBundle ops = make_operators(g, CoinParams::grover());
    const int n = g.vertex_count();
    CMatrix expected = g.adjacency_matrix().cast<Complex>();
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        expected(u, v) /= std::sqrt(static_cast<double>(g.degree(u)) *
                                    static_cast<double>(g.degree(v)));
    CHECK(max_abs(ops.dsd - expected) < 1e-14);
  }
}

TEST_CASE("discriminant and transition matrix share their spectrum") {
  for (const auto& entry : standard_graph_corpus()) {
    INFO(entry.name);
    const OperatorBundle ops = make_operators(entry.graph, CoinParams::grover());
    const std::vector<Complex> disc = sorted_spectrum(matrix_eigenvalues(ops.dsd));
    const std::vector<Complex> walk = sorted_spectrum(
        matrix_eigenvalues(transition_matrix(entry.graph).cast<Complex>()));
    CHECK(multiset_distance(disc, walk) < 1e-9);
  }
}

TEST_CASE("positive support of the Grover matrix is the non-backtracking matrix") {
  // U(e, f) propagates arc f into arc e, so for min-degree-2 graphs its
  // positive entries mark exactly the transposed non-backtracking relation
  for (const auto& entry :
       {standard_graph_corpus()[0], standard_graph_corpus()[5],
        standard_graph_corpus()[7]}) {
    INFO(entry.name);
    const Graph& g = entry.graph;
    REQUIRE(g.min_degree_two());
    const Eigen::MatrixXd support = positive_support(grover_matrix(g));
    const auto w = non_backtracking_matrix(g);
    for (int e = 0; e < g.arc_count(); ++e)
      for (int f = 0; f < g.arc_count(); ++f)
        CHECK(support(e, f) == static_cast<double>(w[f][e]));
  }
}

TEST_CASE("positive support refuses genuinely complex matrices") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, 1.0);
  CHECK_THROWS_AS(positive_support(m), ValidationError);
}
