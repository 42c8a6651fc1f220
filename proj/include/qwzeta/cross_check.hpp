#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qwzeta/det_gamma.hpp"
#include "qwzeta/errors.hpp"
#include "qwzeta/graph.hpp"
#include "qwzeta/operators.hpp"
#include "qwzeta/voltage_graph.hpp"
#include "qwzeta/zeta_finite.hpp"

namespace qwzeta {

// One line of the identity ladder: the residual actually measured against
// the tolerance it must clear.
struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
};

inline CheckResult make_check(std::string name, double residual,
                              double tolerance) {
  const bool pass = residual <= tolerance;
  return {std::move(name), residual, tolerance, pass};
}

inline double max_abs(const CMatrix& m) {
  return m.cwiseAbs().maxCoeff();
}

// Worst coefficient difference relative to the larger polynomial's scale.
inline double poly_relative_residual(const ComplexPolynomial& p,
                                     const ComplexPolynomial& q) {
  double scale = 1.0;
  double worst = 0.0;
  const std::size_t len = std::max(p.coefficients.size(), q.coefficients.size());
  auto at = [](const ComplexPolynomial& poly, std::size_t k) {
    return k < poly.coefficients.size() ? poly.coefficients[k] : Complex(0.0);
  };
  for (std::size_t k = 0; k < len; ++k) {
    scale = std::max({scale, std::abs(at(p, k)), std::abs(at(q, k))});
    worst = std::max(worst, std::abs(at(p, k) - at(q, k)));
  }
  return worst / scale;
}

// Mean over eigenvalues of the principal log of a finite operator, the
// quantity the torus quadrature reproduces exactly at grid size L.
inline Complex mean_eigen_log(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw Error("eigenvalue solver failed to converge");
  std::vector<Complex> logs;
  logs.reserve(static_cast<std::size_t>(solver.eigenvalues().size()));
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex lambda = solver.eigenvalues()(i);
    if (std::abs(lambda - 1.0) >= 1.0)
      throw BranchError("finite-quotient eigenvalue (" +
                            std::to_string(lambda.real()) + "," +
                            std::to_string(lambda.imag()) +
                            ") leaves the disk |z - 1| < 1",
                        {}, lambda);
    logs.push_back(std::log(lambda));
  }
  return pairwise_sum(logs) / static_cast<double>(logs.size());
}

// Runs the determinant identities that tie the walk operators together on
// one finite graph. inject_fault corrupts the Bass prefactor exponent so
// the failure path stays testable end to end.
inline std::vector<CheckResult> cross_check_graph(const Graph& g,
                                                  const CoinParams& coin,
                                                  Complex u,
                                                  bool inject_fault = false) {
  std::vector<CheckResult> out;
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const OperatorBundle ops = make_operators(g, coin);
  const CMatrix eye_r = CMatrix::Identity(2 * m, 2 * m);

  out.push_back(make_check("shift-involution",
                           max_abs(ops.shift * ops.shift - eye_r), 1e-14));
  out.push_back(make_check(
      "boundary-row-orthonormality",
      max_abs(ops.boundary * ops.boundary.adjoint() -
              CMatrix::Identity(n, n)),
      1e-14));
  out.push_back(make_check(
      "grover-coin-factorization",
      max_abs(grover_matrix(g) -
              evolution_matrix(g, CoinParams::grover())),
      1e-14));
  if (coin.unitary())
    out.push_back(make_check("walk-unitarity",
                             max_abs(ops.evolution.adjoint() * ops.evolution -
                                     eye_r),
                             1e-12));

  {
    const Complex direct = qw_reciprocal_direct(g, coin, u);
    const Complex reduced = qw_reciprocal_reduced(g, coin, u);
    const double scale = std::max(1.0, std::abs(direct));
    out.push_back(make_check("determinant-reduction",
                             std::abs(direct - reduced) / scale, 1e-10));
  }

  {
    // log of the Bass determinant must reproduce the integer counts of
    // closed reduced paths
    const int depth = std::min(8, 2 * m);
    ComplexPolynomial recip = bass_reciprocal_polynomial(g);
    if (inject_fault) {
      ComplexPolynomial extra;
      extra.coefficients = {1.0, 0.0, -1.0};
      recip = poly_multiply(recip, extra);
    }
    const std::vector<Complex> series = log_series(recip, depth);
    const std::vector<double> counts = ihara_log_series(g, depth);
    double worst = 0.0;
    for (int k = 0; k < depth; ++k)
      worst = std::max(worst, std::abs(-series[k] - counts[k]));
    out.push_back(make_check("bass-cycle-count-series", worst, 1e-8));
  }

  if (g.betti_number() >= 1) {
    const ComplexPolynomial direct = qw_charpoly_direct(g, coin);
    const ComplexPolynomial reduced = qw_charpoly_reduced(g, coin);
    out.push_back(make_check("characteristic-factorization",
                             poly_relative_residual(direct, reduced), 1e-10));
    const ComplexPolynomial grover = qw_charpoly_direct(g, CoinParams::grover());
    const ComplexPolynomial t_form = konno_sato_charpoly(g);
    const ComplexPolynomial d_form = konno_sato_charpoly_degree_form(g);
    out.push_back(make_check(
        "konno-sato-factorization",
        std::max(poly_relative_residual(grover, t_form),
                 poly_relative_residual(t_form, d_form)),
        1e-10));
  }

  out.push_back(make_check(
      "spectral-map",
      multiset_distance(qw_spectrum_direct(g, coin).eigenvalues,
                        qw_spectrum_mapped(g, coin).eigenvalues),
      1e-8));
  return out;
}

// Fiber-level identities for a periodic graph, sampled at a handful of
// incommensurate torus points plus the two routes to the walk zeta.
inline std::vector<CheckResult> cross_check_voltage(const VoltageGraph& vg,
                                                    const CoinParams& coin,
                                                    Complex u, long long grid,
                                                    long long l = 3,
                                                    bool inject_fault = false) {
  std::vector<CheckResult> out;
  const int n = vg.vertex_count();
  const int r = vg.arc_count();

  std::vector<std::vector<double>> sample_thetas;
  for (int s = 0; s < 4; ++s) {
    std::vector<double> theta(vg.dim());
    for (int d = 0; d < vg.dim(); ++d)
      theta[d] = 0.7 + 1.1 * s + 0.41 * d;
    sample_thetas.push_back(theta);
  }

  double worst_orth = 0.0;
  double worst_disc = 0.0;
  double worst_ks = 0.0;
  double deg_product = 1.0;
  for (int v = 0; v < n; ++v) deg_product *= vg.degree(v);
  for (const auto& theta : sample_thetas) {
    const CMatrix d = fiber_boundary(vg, theta);
    const CMatrix s = fiber_shift(vg, theta);
    worst_orth = std::max(
        worst_orth, max_abs(d * d.adjoint() - CMatrix::Identity(n, n)));
    worst_disc =
        std::max(worst_disc, max_abs(d * s * d.adjoint() - fiber_dsd(vg, theta)));
    const CMatrix dsd = fiber_dsd(vg, theta);
    const CMatrix a = fiber_adjacency(vg, theta);
    const CMatrix deg = quotient_degree_matrix(vg).cast<Complex>();
    const Complex lhs =
        ((u * u + 1.0) * CMatrix::Identity(n, n) - 2.0 * u * dsd).determinant();
    const Complex rhs =
        ((u * u + 1.0) * deg - 2.0 * u * a).determinant() / deg_product;
    worst_ks = std::max(worst_ks, std::abs(lhs - rhs));
  }
  out.push_back(make_check("fiber-boundary-orthonormality", worst_orth, 1e-13));
  out.push_back(make_check("fiber-discriminant-factorization", worst_disc, 1e-13));
  out.push_back(make_check("fiber-konno-sato-normalization", worst_ks, 1e-10));

  {
    double worst = 0.0;
    for (const auto& theta : sample_thetas) {
      const CMatrix s = fiber_shift(vg, theta);
      const Complex det =
          (CMatrix::Identity(r, r) + coin.b * u * s).determinant();
      const Complex closed = ipow(Complex(1.0) - coin.b * coin.b * u * u,
                                  vg.edge_count());
      worst = std::max(worst, std::abs(det - closed));
    }
    out.push_back(make_check("shift-resolvent-determinant", worst, 1e-12));
  }

  {
    Complex interior = periodic_qw_zeta(vg, u, coin, grid,
                                        PeriodicQwRoute::Interior);
    const Complex arc =
        periodic_qw_zeta(vg, u, coin, grid, PeriodicQwRoute::Arc);
    if (inject_fault)
      interior *= (Complex(1.0) - coin.b * coin.b * u * u);
    const double scale = std::max(1.0, std::abs(arc));
    out.push_back(make_check("interior-arc-route-agreement",
                             std::abs(interior - arc) / scale, 1e-9));
  }

  // At grid size L the quadrature is exact: the torus points are the
  // momenta that block-diagonalize the operators of the degree-L^d
  // finite quotient, so the two log-means must coincide.
  {
    const Graph q = finite_quotient(vg, l);
    const int nq = q.vertex_count();
    const CMatrix eye_q = CMatrix::Identity(nq, nq);

    const Complex ihara_fibers =
        det_gamma(vg.dim(), l, ihara_kernel(vg, u)).log_mean;
    const CMatrix ihara_big =
        eye_q - u * q.adjacency_matrix().cast<Complex>() +
        (u * u) * (q.degree_matrix() - Eigen::MatrixXd::Identity(nq, nq))
                      .cast<Complex>();
    double worst = std::abs(ihara_fibers - static_cast<double>(n) *
                                               mean_eigen_log(ihara_big));

    const Complex interior_fibers =
        det_gamma(vg.dim(), l, qw_interior_kernel(vg, u, coin)).log_mean;
    const OperatorBundle ops_q = make_operators(q, coin);
    const CMatrix interior_big =
        (Complex(1.0) - coin.a * coin.b * u * u) * eye_q -
        coin.c() * u * ops_q.dsd;
    worst = std::max(worst,
                     std::abs(interior_fibers -
                              static_cast<double>(n) * mean_eigen_log(interior_big)));

    const Complex arc_fibers =
        det_gamma(vg.dim(), l, qw_arc_kernel(vg, u, coin)).log_mean;
    const CMatrix arc_big =
        CMatrix::Identity(2 * q.edge_count(), 2 * q.edge_count()) -
        u * ops_q.evolution;
    worst = std::max(worst,
                     std::abs(arc_fibers -
                              static_cast<double>(r) * mean_eigen_log(arc_big)));
    out.push_back(make_check("quotient-sampling-identity", worst, 1e-10));
  }
  return out;
}

}  // namespace qwzeta
