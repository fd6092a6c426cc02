#pragma once

#include <Eigen/Dense>

#include <complex>

namespace crembed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Point in the second-kind exponential chart. Entries are real when
/// evaluating the Maurer-Cartan coefficients; the continuation path
/// evaluates at complex arguments.
struct CoordinatePoint {
  Vector t;

  CoordinatePoint() = default;
  explicit CoordinatePoint(Vector coords) : t(std::move(coords)) {}

  static CoordinatePoint zero(int dim) { return CoordinatePoint{Vector::Zero(dim)}; }
  static CoordinatePoint real(const RealVector& x) {
    return CoordinatePoint{x.cast<Complex>()};
  }

  int dim() const { return static_cast<int>(t.size()); }

  /// Max-norm of the coordinates; the chart validity radius is measured in it.
  double max_abs() const { return t.size() == 0 ? 0.0 : t.cwiseAbs().maxCoeff(); }

  bool all_finite() const {
    for (Eigen::Index i = 0; i < t.size(); ++i)
      if (!is_finite(t[i])) return false;
    return true;
  }
  bool is_real() const {
    for (Eigen::Index i = 0; i < t.size(); ++i)
      if (t[i].imag() != 0.0) return false;
    return true;
  }
};

/// Sample of a matrix-valued coefficient function: values(gamma, alpha) is
/// the xi_gamma coefficient of the dt^alpha component at the stored point.
/// At t = 0 the matrix is the identity.
struct CoefficientMatrix {
  CoordinatePoint at;
  Matrix values;
};

}  // namespace crembed
