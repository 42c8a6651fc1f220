#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwzeta {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad graph data, bad JSON, parameter out of range.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Evaluation refused on mathematical grounds, as opposed to bad input.
// Carries a machine-readable kind so callers can tell a pole from a
// spectral branch violation without parsing the message.
class DomainError : public Error {
public:
  enum class Kind { Pole, BranchViolation, Overflow };

  DomainError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

  const char* kind_name() const {
    switch (kind_) {
      case Kind::Pole: return "pole";
      case Kind::BranchViolation: return "branch_violation";
      case Kind::Overflow: return "overflow";
    }
    return "domain_error";
  }

private:
  Kind kind_;
};

// A zeta evaluated where its reciprocal vanishes. `vanishing_factor` is the
// value of the factor that collapsed (prefactor or determinant).
class PoleError : public DomainError {
public:
  PoleError(const std::string& what, std::complex<double> vanishing_factor)
      : DomainError(Kind::Pole, what), vanishing_factor_(vanishing_factor) {}

  std::complex<double> vanishing_factor() const { return vanishing_factor_; }

private:
  std::complex<double> vanishing_factor_;
};

// A fiber eigenvalue left the open disk |z - 1| < 1 on which the principal
// logarithm underlying the Gamma-determinant is valid.
class BranchError : public DomainError {
public:
  BranchError(const std::string& what, std::vector<double> theta,
              std::complex<double> eigenvalue)
      : DomainError(Kind::BranchViolation, what),
        theta_(std::move(theta)),
        eigenvalue_(eigenvalue) {}

  const std::vector<double>& theta() const { return theta_; }
  std::complex<double> eigenvalue() const { return eigenvalue_; }

private:
  std::vector<double> theta_;
  std::complex<double> eigenvalue_;
};

}  // namespace qwzeta
