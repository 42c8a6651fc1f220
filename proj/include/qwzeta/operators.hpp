#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "qwzeta/errors.hpp"
#include "qwzeta/graph.hpp"
#include "qwzeta/numeric.hpp"

namespace qwzeta {

using CMatrix = Eigen::MatrixXcd;

// Two-parameter coin family: C = a P + b (I - P) with P = d* d the projection
// onto the vertex subspace. a = 2/deg - style Grover behaviour corresponds to
// a = 1, b = -1.
struct CoinParams {
  Complex a;
  Complex b;

  Complex c() const { return a - b; }

  bool unitary() const {
    return std::abs(std::abs(a) - 1.0) < 1e-12 &&
           std::abs(std::abs(b) - 1.0) < 1e-12;
  }

  static CoinParams grover() { return {Complex(1, 0), Complex(-1, 0)}; }
};

// Arc inversion S: (S x)(e) = x(inverse e). An involution, S^2 = I.
inline CMatrix shift_matrix(const Graph& g) {
  const int r = g.arc_count();
  CMatrix s = CMatrix::Zero(r, r);
  for (int e = 0; e < r; ++e) s(e, g.inverse(e)) = 1.0;
  return s;
}

// Boundary map d : arcs -> vertices, d(v, e) = 1/sqrt(deg v) when e ends at v.
// Satisfies d d* = I on vertices.
inline CMatrix boundary_map(const Graph& g) {
  const int n = g.vertex_count();
  const int r = g.arc_count();
  CMatrix d = CMatrix::Zero(n, r);
  for (int e = 0; e < r; ++e) {
    const int v = g.arc(e).terminal;
    d(v, e) = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  }
  return d;
}

inline CMatrix coin_matrix(const Graph& g, const CoinParams& coin) {
  const int r = g.arc_count();
  const CMatrix d = boundary_map(g);
  const CMatrix p = d.adjoint() * d;
  return coin.a * p + coin.b * (CMatrix::Identity(r, r) - p);
}

// One step of the walk: U = S C.
inline CMatrix evolution_matrix(const Graph& g, const CoinParams& coin) {
  return shift_matrix(g) * coin_matrix(g, coin);
}

// The Grover walk matrix from its entrywise definition, kept separate from
// evolution_matrix so the two constructions can check each other.
inline CMatrix grover_matrix(const Graph& g) {
  const int r = g.arc_count();
  CMatrix u = CMatrix::Zero(r, r);
  for (int e = 0; e < r; ++e)
    for (int f = 0; f < r; ++f) {
      if (g.arc(f).terminal != g.arc(e).origin) continue;
      const double w = 2.0 / g.degree(g.arc(f).terminal);
      u(e, f) = (f == g.inverse(e)) ? w - 1.0 : w;
    }
  return u;
}

// 0/1 matrix marking the strictly positive entries of a real matrix.
inline Eigen::MatrixXd positive_support(const CMatrix& m, double tol = 1e-12) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j).imag()) > tol)
        throw ValidationError("positive_support: matrix has complex entries");
      if (m(i, j).real() > tol) s(i, j) = 1.0;
    }
  return s;
}

// All the walk operators for one (graph, coin) pair. dsd is the n x n
// discriminant d S d*, similar to the transition matrix of the simple walk.
struct OperatorBundle {
  CMatrix shift;
  CMatrix boundary;
  CMatrix coin;
  CMatrix evolution;
  CMatrix dsd;
};

inline OperatorBundle make_operators(const Graph& g, const CoinParams& coin) {
  OperatorBundle ops;
  ops.shift = shift_matrix(g);
  ops.boundary = boundary_map(g);
  ops.coin = coin_matrix(g, coin);
  ops.evolution = ops.shift * ops.coin;
  ops.dsd = ops.boundary * ops.shift * ops.boundary.adjoint();
  return ops;
}

}  // namespace qwzeta
