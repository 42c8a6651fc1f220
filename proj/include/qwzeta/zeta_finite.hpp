#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "qwzeta/errors.hpp"
#include "qwzeta/graph.hpp"
#include "qwzeta/numeric.hpp"
#include "qwzeta/operators.hpp"
#include "qwzeta/polynomial.hpp"

namespace qwzeta {

// ---- Ihara zeta via the Bass determinant ----
//
// 1/Z(t) = (1 - t^2)^(r-1) det(I - tA + t^2 (D - I)), r = m - n + 1.

inline Complex ihara_reciprocal(const Graph& g, Complex t) {
  const int n = g.vertex_count();
  const Eigen::MatrixXd a = g.adjacency_matrix();
  const Eigen::MatrixXd q = g.degree_matrix() - Eigen::MatrixXd::Identity(n, n);
  CMatrix kernel = CMatrix::Identity(n, n) - t * a.cast<Complex>() +
                   (t * t) * q.cast<Complex>();
  const Complex det = kernel.determinant();
  const Complex pre = ipow(Complex(1.0) - t * t, g.betti_number() - 1);
  return pre * det;
}

inline Complex ihara_zeta_bass(const Graph& g, Complex t) {
  const Complex recip = ihara_reciprocal(g, t);
  if (recip == Complex(0.0))
    throw PoleError("ihara zeta has a pole at t = (" +
                        std::to_string(t.real()) + "," +
                        std::to_string(t.imag()) + ")",
                    recip);
  return Complex(1.0) / recip;
}

// Coefficients of log Z(t) = sum_m (N_m / m) t^m for m = 1..max_degree,
// computed from exact integer cycle counts.
inline std::vector<double> ihara_log_series(const Graph& g, int max_degree) {
  const CycleCountSeries counts = reduced_cycle_counts(g, max_degree);
  std::vector<double> out(max_degree);
  for (int m = 1; m <= max_degree; ++m)
    out[m - 1] = static_cast<double>(counts.at_length(m)) / m;
  return out;
}

// 1/Z as an explicit polynomial in t (degree 2m), recovered from values on
// the unit circle.
inline ComplexPolynomial bass_reciprocal_polynomial(const Graph& g) {
  ComplexPolynomial p = poly_from_unit_circle_samples(
      g.arc_count(), [&](Complex t) { return ihara_reciprocal(g, t); });
  // the determinant of an integer polynomial matrix has integer
  // coefficients; snapping removes the interpolation noise that the
  // log-series recurrence would otherwise amplify
  for (Complex& c : p.coefficients) {
    const double re = std::round(c.real());
    if (std::abs(c - Complex(re)) < 1e-6) c = Complex(re);
  }
  return p;
}

// ---- coined-walk zeta ----
//
// zeta(u) = 1/det(I - uU). The reduced route replaces the 2m x 2m
// determinant by an n x n one:
//   det(I - uU) = (1 - b^2 u^2)^(m-n) det((1 - ab u^2) I - cu dSd*).

inline Complex qw_reciprocal_direct(const Graph& g, const CoinParams& coin,
                                    Complex u) {
  const CMatrix walk = evolution_matrix(g, coin);
  const int r = g.arc_count();
  return (CMatrix::Identity(r, r) - u * walk).determinant();
}

inline Complex qw_reciprocal_reduced(const Graph& g, const CoinParams& coin,
                                     Complex u) {
  const int n = g.vertex_count();
  const int excess = g.edge_count() - n;
  const OperatorBundle ops = make_operators(g, coin);
  const Complex ab = coin.a * coin.b;
  CMatrix kernel = (Complex(1.0) - ab * u * u) * CMatrix::Identity(n, n) -
                   coin.c() * u * ops.dsd;
  const Complex pre = ipow(Complex(1.0) - coin.b * coin.b * u * u, excess);
  return pre * kernel.determinant();
}

inline Complex qw_zeta_from_reciprocal(Complex recip, Complex u) {
  if (recip == Complex(0.0))
    throw PoleError("walk zeta has a pole at u = (" +
                        std::to_string(u.real()) + "," +
                        std::to_string(u.imag()) + ")",
                    recip);
  if (!std::isfinite(std::abs(recip)))
    throw Error("walk zeta reciprocal is not finite");
  return Complex(1.0) / recip;
}

inline Complex qw_zeta_direct(const Graph& g, const CoinParams& coin,
                              Complex u) {
  return qw_zeta_from_reciprocal(qw_reciprocal_direct(g, coin, u), u);
}

inline Complex qw_zeta_reduced(const Graph& g, const CoinParams& coin,
                               Complex u) {
  return qw_zeta_from_reciprocal(qw_reciprocal_reduced(g, coin, u), u);
}

// ---- characteristic polynomials of the walk matrix ----

inline std::vector<Complex> matrix_eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw Error("eigenvalue solver failed to converge");
  const auto& ev = solver.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

// det(lambda I - U), monic of degree 2m, expanded from the eigenvalues.
inline ComplexPolynomial qw_charpoly_direct(const Graph& g,
                                            const CoinParams& coin) {
  return poly_from_roots(matrix_eigenvalues(evolution_matrix(g, coin)));
}

// Same polynomial through the vertex-sized identity
//   det(lambda I - U) = (lambda^2 - b^2)^(m-n)
//                       det((lambda^2 - ab) I - c lambda dSd*).
inline ComplexPolynomial qw_charpoly_reduced(const Graph& g,
                                             const CoinParams& coin) {
  const int n = g.vertex_count();
  const int excess = g.edge_count() - n;
  if (excess < 0)
    throw ValidationError(
        "reduced characteristic polynomial needs cycle rank >= 1");
  const OperatorBundle ops = make_operators(g, coin);
  const Complex ab = coin.a * coin.b;
  const Complex b2 = coin.b * coin.b;
  const Complex c = coin.c();
  const CMatrix eye = CMatrix::Identity(n, n);
  return poly_from_unit_circle_samples(g.arc_count(), [&](Complex lam) {
    const CMatrix kernel = (lam * lam - ab) * eye - c * lam * ops.dsd;
    return ipow(lam * lam - b2, excess) * kernel.determinant();
  });
}

// Grover-walk characteristic polynomial via the simple random walk:
//   det(lambda I - U) = (lambda^2 - 1)^(m-n) det((lambda^2 + 1) I - 2 lambda T).
inline ComplexPolynomial konno_sato_charpoly(const Graph& g) {
  const int n = g.vertex_count();
  const int excess = g.edge_count() - n;
  if (excess < 0)
    throw ValidationError(
        "reduced characteristic polynomial needs cycle rank >= 1");
  const CMatrix t = transition_matrix(g).cast<Complex>();
  const CMatrix eye = CMatrix::Identity(n, n);
  return poly_from_unit_circle_samples(g.arc_count(), [&](Complex lam) {
    const CMatrix kernel = (lam * lam + 1.0) * eye - 2.0 * lam * t;
    return ipow(lam * lam - 1.0, excess) * kernel.determinant();
  });
}

// Equivalent degree-matrix form, clearing the 1/deg entries of T:
//   det((lambda^2 + 1) D - 2 lambda A) / prod_v deg(v).
inline ComplexPolynomial konno_sato_charpoly_degree_form(const Graph& g) {
  const int n = g.vertex_count();
  const int excess = g.edge_count() - n;
  if (excess < 0)
    throw ValidationError(
        "reduced characteristic polynomial needs cycle rank >= 1");
  const CMatrix a = g.adjacency_matrix().cast<Complex>();
  const CMatrix d = g.degree_matrix().cast<Complex>();
  double deg_product = 1.0;
  for (int v = 0; v < n; ++v) deg_product *= g.degree(v);
  return poly_from_unit_circle_samples(g.arc_count(), [&](Complex lam) {
    const CMatrix kernel = (lam * lam + 1.0) * d - 2.0 * lam * a;
    return ipow(lam * lam - 1.0, excess) * kernel.determinant() / deg_product;
  });
}

// ---- spectra ----

inline std::vector<Complex> sorted_spectrum(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return v;
}

// Largest distance in a greedy nearest-neighbour matching of two equal-size
// eigenvalue multisets.
inline double multiset_distance(const std::vector<Complex>& a,
                                const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<char> used(b.size(), 0);
  double worst = 0.0;
  for (const Complex& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(x - b[j]);
      if (dist < best) {
        best = dist;
        best_j = j;
      }
    }
    used[best_j] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

// Walk spectrum plus the structural multiplicities of the +-b eigenvalues
// contributed by the (m - n)-dimensional complement of the vertex subspace.
struct SpectrumResult {
  std::vector<Complex> eigenvalues;
  int multiplicity_plus_b;
  int multiplicity_minus_b;
};

inline SpectrumResult qw_spectrum_direct(const Graph& g,
                                         const CoinParams& coin) {
  SpectrumResult out;
  out.eigenvalues = sorted_spectrum(matrix_eigenvalues(evolution_matrix(g, coin)));
  out.multiplicity_plus_b = g.edge_count() - g.vertex_count();
  out.multiplicity_minus_b = out.multiplicity_plus_b;
  return out;
}

// Real symmetric discriminant spectrum of dSd* = D^{-1/2} A D^{-1/2}.
// Values at the endpoints +-1 are exact when they occur (the random-walk
// Perron eigenvalue, and its bipartite reflection), so they are snapped;
// otherwise the spectral map's square root would turn the solver's O(eps)
// error into O(sqrt(eps)) at its branch points.
inline std::vector<double> discriminant_spectrum(const Graph& g) {
  const OperatorBundle ops = make_operators(g, CoinParams::grover());
  Eigen::MatrixXd sym = ops.dsd.real();
  sym = 0.5 * (sym + sym.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("eigenvalue solver failed to converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  for (double& mu : out) {
    if (std::abs(mu - 1.0) < 1e-10) mu = 1.0;
    if (std::abs(mu + 1.0) < 1e-10) mu = -1.0;
  }
  return out;
}

// Spectrum through the spectral map: each discriminant eigenvalue mu yields
//   lambda = (c mu +- sqrt(c^2 mu^2 + 4ab)) / 2,
// and the complement contributes (m - n) copies each of +b and -b.
inline SpectrumResult qw_spectrum_mapped(const Graph& g,
                                         const CoinParams& coin) {
  const int excess = g.edge_count() - g.vertex_count();
  const Complex c = coin.c();
  const Complex ab = coin.a * coin.b;
  SpectrumResult out;
  out.multiplicity_plus_b = excess;
  out.multiplicity_minus_b = excess;
  for (double mu : discriminant_spectrum(g)) {
    const Complex root = std::sqrt(c * c * mu * mu + 4.0 * ab);
    out.eigenvalues.push_back((c * mu + root) / 2.0);
    out.eigenvalues.push_back((c * mu - root) / 2.0);
  }
  for (int k = 0; k < excess; ++k) {
    out.eigenvalues.push_back(coin.b);
    out.eigenvalues.push_back(-coin.b);
  }
  out.eigenvalues = sorted_spectrum(out.eigenvalues);
  return out;
}

}  // namespace qwzeta
