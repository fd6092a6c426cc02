#pragma once

#include <stdexcept>
#include <string>

namespace crembed {

/// Base class for all engine errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structure-constant tensor is not antisymmetric in its first two indices.
class AntisymmetryViolation : public Error {
 public:
  AntisymmetryViolation(std::string msg, int alpha, int beta, int gamma)
      : Error(std::move(msg)), alpha(alpha), beta(beta), gamma(gamma) {}
  int alpha, beta, gamma;  // 0-based witness
};

/// Jacobi identity fails beyond tolerance.
class JacobiViolation : public Error {
 public:
  JacobiViolation(std::string msg, double residual, int alpha, int beta, int gamma, int nu)
      : Error(std::move(msg)), max_residual(residual), alpha(alpha), beta(beta), gamma(gamma), nu(nu) {}
  double max_residual;
  int alpha, beta, gamma, nu;  // 0-based witness
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The matrix exponential produced a non-finite result.
class ExpConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// Coordinate point lies outside the configured chart validity radius.
class ValidityRadiusExceeded : public Error {
 public:
  ValidityRadiusExceeded(std::string msg, double norm, double r_max)
      : Error(std::move(msg)), norm(norm), r_max(r_max) {}
  double norm, r_max;
};

class StepTooSmall : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

/// Exact exponential requested for a matrix that is not nilpotent.
class NotNilpotent : public Error {
 public:
  NotNilpotent(std::string msg, int power, int row, int col)
      : Error(std::move(msg)), power(power), row(row), col(col) {}
  int power;     // tested power with a surviving entry
  int row, col;  // 0-based witness entry of that power
};

/// Requested transverse-basis size cannot be reached.
class TargetUnreachable : public Error {
 public:
  using Error::Error;
};

/// CR subspace basis has deficient column rank.
class RankDeficient : public Error {
 public:
  RankDeficient(std::string msg, int rank, int expected)
      : Error(std::move(msg)), rank(rank), expected(expected) {}
  int rank, expected;
};

/// CR subspace is not closed under the bracket.
class NotIntegrable : public Error {
 public:
  NotIntegrable(std::string msg, double defect, int u, int v)
      : Error(std::move(msg)), defect(defect), u(u), v(v) {}
  double defect;
  int u, v;  // 0-based columns whose bracket escapes the span
};

/// CR subspace meets its conjugate nontrivially.
class IntersectsConjugate : public Error {
 public:
  IntersectsConjugate(std::string msg, int rank, int expected)
      : Error(std::move(msg)), rank(rank), expected(expected) {}
  int rank, expected;  // rank of [h | conj(h)] vs required 2n
};

/// Malformed input file or unknown catalog entry.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace crembed
