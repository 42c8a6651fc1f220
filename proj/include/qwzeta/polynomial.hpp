#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qwzeta/errors.hpp"
#include "qwzeta/numeric.hpp"

namespace qwzeta {

// Dense polynomial over C, coefficients in ascending degree order.
struct ComplexPolynomial {
  std::vector<Complex> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }

  Complex evaluate(Complex z) const {
    Complex acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
      acc = acc * z + *it;
    return acc;
  }

  void trim(double tol = 0.0) {
    while (coefficients.size() > 1 && std::abs(coefficients.back()) <= tol)
      coefficients.pop_back();
  }
};

inline ComplexPolynomial poly_multiply(const ComplexPolynomial& p,
                                       const ComplexPolynomial& q) {
  ComplexPolynomial out;
  out.coefficients.assign(p.coefficients.size() + q.coefficients.size() - 1,
                          0.0);
  for (std::size_t i = 0; i < p.coefficients.size(); ++i)
    for (std::size_t j = 0; j < q.coefficients.size(); ++j)
      out.coefficients[i + j] += p.coefficients[i] * q.coefficients[j];
  return out;
}

// prod (z - root_k), expanded with long double intermediates.
inline ComplexPolynomial poly_from_roots(const std::vector<Complex>& roots) {
  using LC = std::complex<long double>;
  std::vector<LC> coeff{LC(1.0L, 0.0L)};
  for (const Complex& root : roots) {
    const LC r(root.real(), root.imag());
    coeff.push_back(LC(0.0L, 0.0L));
    for (std::size_t k = coeff.size() - 1; k > 0; --k)
      coeff[k] = coeff[k - 1] - r * coeff[k];
    coeff[0] = -r * coeff[0];
  }
  ComplexPolynomial out;
  out.coefficients.reserve(coeff.size());
  for (const LC& c : coeff)
    out.coefficients.emplace_back(static_cast<double>(c.real()),
                                  static_cast<double>(c.imag()));
  return out;
}

// Coefficients l_1..l_max_degree of log p(z) where p(0) = 1, via the
// recurrence k l_k = k p_k - sum_{j<k} j l_j p_{k-j}.
inline std::vector<Complex> log_series(const ComplexPolynomial& p,
                                       int max_degree) {
  if (p.coefficients.empty() || std::abs(p.coefficients[0] - 1.0) > 1e-9)
    throw ValidationError("log_series: constant term must be 1");
  // the recurrence multiplies coefficients that grow like the cycle counts,
  // so it accumulates in extended precision
  using LC = std::complex<long double>;
  auto pk = [&](int k) -> LC {
    return k < static_cast<int>(p.coefficients.size())
               ? LC(p.coefficients[k].real(), p.coefficients[k].imag())
               : LC(0.0L);
  };
  std::vector<LC> l(max_degree + 1, LC(0.0L));
  for (int k = 1; k <= max_degree; ++k) {
    LC s = static_cast<long double>(k) * pk(k);
    for (int j = 1; j < k; ++j)
      s -= static_cast<long double>(j) * l[j] * pk(k - j);
    l[k] = s / static_cast<long double>(k);
  }
  std::vector<Complex> out(max_degree);
  for (int k = 1; k <= max_degree; ++k)
    out[k - 1] = Complex(static_cast<double>(l[k].real()),
                         static_cast<double>(l[k].imag()));
  return out;
}

// Recovers a degree <= max_degree polynomial from its values at the
// (max_degree+1)-th roots of unity. The inverse transform runs in
// long double to keep high-degree coefficients sharp.
inline ComplexPolynomial poly_from_unit_circle_samples(
    int max_degree, const std::function<Complex(Complex)>& value_at) {
  using LC = std::complex<long double>;
  const int n = max_degree + 1;
  const long double two_pi = 6.283185307179586476925286766559L;
  std::vector<LC> samples(n);
  for (int k = 0; k < n; ++k) {
    const long double ang = two_pi * k / n;
    const Complex z(static_cast<double>(std::cos(ang)),
                    static_cast<double>(std::sin(ang)));
    const Complex v = value_at(z);
    samples[k] = LC(v.real(), v.imag());
  }
  ComplexPolynomial out;
  out.coefficients.resize(n);
  for (int j = 0; j < n; ++j) {
    LC acc(0.0L, 0.0L);
    for (int k = 0; k < n; ++k) {
      const long double ang = -two_pi * j * k / n;
      acc += samples[k] * LC(std::cos(ang), std::sin(ang));
    }
    acc /= static_cast<long double>(n);
    out.coefficients[j] = Complex(static_cast<double>(acc.real()),
                                  static_cast<double>(acc.imag()));
  }
  return out;
}

}  // namespace qwzeta
