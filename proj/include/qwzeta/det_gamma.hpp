#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qwzeta/errors.hpp"
#include "qwzeta/numeric.hpp"
#include "qwzeta/operators.hpp"
#include "qwzeta/voltage_graph.hpp"
#include "qwzeta/zeta_finite.hpp"

namespace qwzeta {

using FiberKernel = std::function<CMatrix(const std::vector<double>&)>;

// Gamma-determinant of a kernel given fiberwise over the torus, approximated
// on the uniform N^dim grid theta_j = 2 pi j / N:
//   log det = mean over fibers of sum of principal logs of the eigenvalues.
// Every fiber eigenvalue must lie in the open disk |z - 1| < 1, which keeps
// each principal log well inside a branch.
struct DetGammaResult {
  Complex log_mean;
  Complex value;
  long long fiber_count;
  std::vector<Complex> fiber_logdets;
};

inline DetGammaResult det_gamma(int dim, long long grid,
                                const FiberKernel& kernel) {
  if (dim < 1) throw ValidationError("det_gamma: dim must be >= 1");
  if (grid < 1) throw ValidationError("det_gamma: grid size must be >= 1");
  long long fibers = 1;
  for (int r = 0; r < dim; ++r) {
    fibers *= grid;
    if (fibers > (1LL << 24))
      throw ValidationError("det_gamma: grid^dim too large");
  }
  const double step = 2.0 * 3.141592653589793238462643383279502884 / grid;
  DetGammaResult out;
  out.fiber_count = fibers;
  out.fiber_logdets.assign(static_cast<std::size_t>(fibers), Complex(0.0));
  // violations are collected per fiber and the lowest-index one is reported,
  // so the error does not depend on thread scheduling
  std::vector<std::optional<BranchError>> violations(
      static_cast<std::size_t>(fibers));
  parallel_for(static_cast<std::size_t>(fibers), [&](std::size_t idx) {
    std::vector<double> theta(dim);
    long long rem = static_cast<long long>(idx);
    for (int r = 0; r < dim; ++r) {
      theta[r] = step * (rem % grid);
      rem /= grid;
    }
    const CMatrix f = kernel(theta);
    Eigen::ComplexEigenSolver<CMatrix> solver(f, false);
    if (solver.info() != Eigen::Success)
      throw Error("det_gamma: eigenvalue solver failed to converge");
    Complex logdet = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      const Complex lambda = solver.eigenvalues()(i);
      if (std::abs(lambda - 1.0) >= 1.0) {
        std::string where = "(";
        for (int r = 0; r < dim; ++r)
          where += (r ? "," : "") + std::to_string(theta[r]);
        where += ")";
        violations[idx].emplace(
            "det_gamma: fiber eigenvalue (" + std::to_string(lambda.real()) +
                "," + std::to_string(lambda.imag()) + ") at theta = " + where +
                " leaves the disk |z - 1| < 1",
            theta, lambda);
        return;
      }
      logdet += std::log(lambda);
    }
    out.fiber_logdets[idx] = logdet;
  });
  for (const auto& violation : violations)
    if (violation) throw *violation;
  out.log_mean = pairwise_sum(out.fiber_logdets) / static_cast<double>(fibers);
  out.value = std::exp(out.log_mean);
  return out;
}

// ---- named kernels ----

// I - t A(theta) + t^2 (D - I), the Bass kernel of the periodic Ihara zeta.
inline FiberKernel ihara_kernel(const VoltageGraph& vg, Complex t) {
  const int n = vg.vertex_count();
  const CMatrix q =
      (quotient_degree_matrix(vg) - Eigen::MatrixXd::Identity(n, n))
          .cast<Complex>();
  return [&vg, t, q, n](const std::vector<double>& theta) {
    return CMatrix(CMatrix::Identity(n, n) -
                   t * fiber_adjacency(vg, theta) + (t * t) * q);
  };
}

// (1 - ab u^2) I - cu dSd(theta), the vertex-sized walk kernel.
inline FiberKernel qw_interior_kernel(const VoltageGraph& vg, Complex u,
                                      const CoinParams& coin) {
  const int n = vg.vertex_count();
  const Complex scale = Complex(1.0) - coin.a * coin.b * u * u;
  const Complex cu = coin.c() * u;
  return [&vg, scale, cu, n](const std::vector<double>& theta) {
    return CMatrix(scale * CMatrix::Identity(n, n) -
                   cu * fiber_dsd(vg, theta));
  };
}

// I - u U(theta) on arc sections. No prefactor is needed on this route.
inline FiberKernel qw_arc_kernel(const VoltageGraph& vg, Complex u,
                                 const CoinParams& coin) {
  const int r = vg.arc_count();
  return [&vg, u, coin, r](const std::vector<double>& theta) {
    return CMatrix(CMatrix::Identity(r, r) -
                   u * fiber_evolution(vg, theta, coin));
  };
}

// ---- periodic zetas ----

inline Complex periodic_zeta_from_reciprocal(Complex recip, Complex at,
                                             const char* name) {
  if (recip == Complex(0.0))
    throw PoleError(std::string(name) + " has a pole at (" +
                        std::to_string(at.real()) + "," +
                        std::to_string(at.imag()) + ")",
                    recip);
  if (!std::isfinite(std::abs(recip)))
    throw Error(std::string(name) + " reciprocal is not finite");
  return Complex(1.0) / recip;
}

// Per-cell Ihara zeta of the periodic graph:
//   1/zeta = (1 - t^2)^(m0 - n0) detGamma(I - t A(theta) + t^2 (D - I)).
inline Complex periodic_ihara_zeta(const VoltageGraph& vg, Complex t,
                                   long long grid) {
  const DetGammaResult dg = det_gamma(vg.dim(), grid, ihara_kernel(vg, t));
  const int excess = vg.edge_count() - vg.vertex_count();
  const Complex recip = ipow(Complex(1.0) - t * t, excess) * dg.value;
  return periodic_zeta_from_reciprocal(recip, t, "periodic ihara zeta");
}

enum class PeriodicQwRoute { Interior, Arc };

// Per-cell walk zeta:
//   1/zeta = (1 - b^2 u^2)^(m0 - n0) detGamma((1 - ab u^2) I - cu dSd(theta))
// or equivalently detGamma(I - u U(theta)) with no prefactor.
inline Complex periodic_qw_zeta(const VoltageGraph& vg, Complex u,
                                const CoinParams& coin, long long grid,
                                PeriodicQwRoute route = PeriodicQwRoute::Interior) {
  Complex recip;
  if (route == PeriodicQwRoute::Arc) {
    recip = det_gamma(vg.dim(), grid, qw_arc_kernel(vg, u, coin)).value;
  } else {
    const DetGammaResult dg =
        det_gamma(vg.dim(), grid, qw_interior_kernel(vg, u, coin));
    const int excess = vg.edge_count() - vg.vertex_count();
    recip =
        ipow(Complex(1.0) - coin.b * coin.b * u * u, excess) * dg.value;
  }
  return periodic_zeta_from_reciprocal(recip, u, "periodic walk zeta");
}

}  // namespace qwzeta
