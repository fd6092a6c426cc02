#include "crembed/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "crembed/errors.hpp"
#include "crembed/exact/oracle.hpp"
#include "residual_sweep.hpp"

namespace crembed {

CoefficientMatrix lambda_at(const LieAlgebra& algebra, const CoordinatePoint& point,
                            double r_max) {
  // omega is entire in each variable, so the continuation is evaluation at
  // the rotated argument: lambda(t) = omega(-i t).
  CoordinatePoint rotated{Complex(0, -1) * point.t};
  Matrix values = omega_at(algebra, rotated, r_max).values;
  return {point, std::move(values)};
}

namespace {

struct CoefficientSample {
  Matrix values;                 // lambda at the point
  std::vector<Matrix> partials;  // partials[a](g, b) = d_a lambda_b^g
};

CoefficientSample sample_lambda(const LieAlgebra& algebra, const CoordinatePoint& point,
                                const FDSpec& fd, double r_max) {
  fd.validate();
  if (!point.is_real()) throw Error("flatness verification requires real coordinates");
  const int s = algebra.dim();
  auto lambda_values = [&](const CoordinatePoint& p) {
    return lambda_at(algebra, p, r_max).values;
  };
  CoefficientSample sample{lambda_values(point), {}};
  sample.partials.resize(s);
  for (int a = 0; a < s; ++a)
    sample.partials[a] = partial_derivative(lambda_values, point, a, fd);
  return sample;
}

}  // namespace

ResidualTensor flatness_residual(const LieAlgebra& algebra, const CoordinatePoint& point,
                                 const FDSpec& fd, double r_max) {
  if (fd.mode == DerivativeMode::exact_polynomial)
    return exact::exact_flatness_residual(algebra).evaluate(point);

  const int s = algebra.dim();
  const CoefficientSample sample = sample_lambda(algebra, point, fd, r_max);
  const Complex minus_i(0, -1);

  ResidualTensor residual(point, s);
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      const Vector bracket = algebra.bracket(sample.values.col(a), sample.values.col(b));
      for (int g = 0; g < s; ++g) {
        const Complex derivative = sample.partials[a](g, b) - sample.partials[b](g, a);
        residual.set(a, b, g, derivative + minus_i * bracket[g]);
      }
    }
  }
  return residual;
}

namespace {

// Commutator route in exact arithmetic, mirroring the numeric path below:
// both contraction orders are formed explicitly.
ResidualTensor exact_bracket_form(const LieAlgebra& algebra, const CoordinatePoint& point) {
  using exact::GaussianRational;
  using exact::Polynomial;
  using exact::PolyMatrix;

  const int s = algebra.dim();
  const PolyMatrix lambda = exact::exact_lambda(algebra);
  std::vector<PolyMatrix> partial;
  partial.reserve(s);
  for (int a = 0; a < s; ++a) partial.push_back(lambda.derivative(a));

  const GaussianRational half_i(exact::Rational(0), exact::Rational(1, 2));
  ResidualTensor out(point, s);
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      for (int g = 0; g < s; ++g) {
        Polynomial commutator(s);
        for (int m = 0; m < s; ++m) {
          for (int n = 0; n < s; ++n) {
            const Complex c = algebra.c(m, n, g);
            if (c == Complex(0)) continue;
            commutator += (lambda(m, a) * lambda(n, b) - lambda(m, b) * lambda(n, a))
                          * GaussianRational::from_complex(c);
          }
        }
        const Polynomial residual =
            partial[a](g, b) - partial[b](g, a) - commutator * half_i;
        out.set(a, b, g, residual.evaluate(point.t));
      }
    }
  }
  return out;
}

}  // namespace

ResidualTensor bracket_form_residual(const LieAlgebra& algebra, const CoordinatePoint& point,
                                     const FDSpec& fd, double r_max) {
  if (fd.mode == DerivativeMode::exact_polynomial) return exact_bracket_form(algebra, point);

  const int s = algebra.dim();
  const CoefficientSample sample = sample_lambda(algebra, point, fd, r_max);
  const Complex half_i(0, 0.5);

  ResidualTensor residual(point, s);
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      // Commutator contraction [Lambda, Lambda]_{ab}^g with both orders.
      const Vector forward = algebra.bracket(sample.values.col(a), sample.values.col(b));
      const Vector reverse = algebra.bracket(sample.values.col(b), sample.values.col(a));
      for (int g = 0; g < s; ++g) {
        const Complex derivative = sample.partials[a](g, b) - sample.partials[b](g, a);
        residual.set(a, b, g, derivative - half_i * (forward[g] - reverse[g]));
      }
    }
  }
  return residual;
}

ResidualReport verify_flatness(const LieAlgebra& algebra, const GridSpec& grid,
                               const FDSpec& fd, double r_max) {
  auto residual_at = [&](const CoordinatePoint& p, const FDSpec& spec) {
    return flatness_residual(algebra, p, spec, r_max);
  };
  return detail::sweep_residual(residual_at, grid, fd, algebra.dim());
}

ResidualReport verify_bracket_form(const LieAlgebra& algebra, const GridSpec& grid,
                                   const FDSpec& fd, double r_max) {
  auto residual_at = [&](const CoordinatePoint& p, const FDSpec& spec) {
    return bracket_form_residual(algebra, p, spec, r_max);
  };
  return detail::sweep_residual(residual_at, grid, fd, algebra.dim());
}

double form_agreement(const LieAlgebra& algebra, const GridSpec& grid, const FDSpec& fd,
                      double r_max) {
  const int s = algebra.dim();
  double worst = 0.0;
  for (const CoordinatePoint& point : grid_points(grid, s)) {
    const ResidualTensor indexed = flatness_residual(algebra, point, fd, r_max);
    const ResidualTensor bracket = bracket_form_residual(algebra, point, fd, r_max);
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b)
        for (int g = 0; g < s; ++g)
          worst = std::max(worst, std::abs(indexed(a, b, g) - bracket(a, b, g)));
  }
  return worst;
}

std::string DependenceReport::summary() const {
  std::ostringstream out;
  out << (passed ? "pass" : "FAIL") << ": " << samples
      << " perturbation trials, max column deviation " << max_deviation;
  if (column >= 0) out << " (column " << column + 1 << ")";
  return out.str();
}

DependenceReport check_triangular_dependence(const LieAlgebra& algebra, int samples,
                                             double tol, unsigned seed, double r_max) {
  if (samples < 1) throw IndexOutOfRange("dependence check needs at least one sample");
  const int s = algebra.dim();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> box(-0.5 * r_max, 0.5 * r_max);
  std::uniform_int_distribution<int> column_of(0, s - 1);

  DependenceReport report;
  report.samples = samples;
  for (int trial = 0; trial < samples; ++trial) {
    const int a = column_of(rng);
    Vector base(s), perturbed(s);
    for (int d = 0; d < s; ++d) base[d] = box(rng);
    perturbed = base;
    for (int d = a; d < s; ++d) perturbed[d] = box(rng);  // column a reads t^1..t^a only

    const CoordinatePoint p1{base}, p2{perturbed};
    const Matrix l1 = lambda_at(algebra, p1, r_max).values;
    const Matrix l2 = lambda_at(algebra, p2, r_max).values;
    const double deviation = (l1.col(a) - l2.col(a)).cwiseAbs().maxCoeff();
    if (deviation >= report.max_deviation) {
      report.max_deviation = deviation;
      report.column = a;
      report.base_point = p1;
      report.perturbed_point = p2;
    }
    if (deviation > tol) report.passed = false;
  }
  return report;
}

}  // namespace crembed
