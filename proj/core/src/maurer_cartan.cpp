#include "crembed/maurer_cartan.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "crembed/errors.hpp"
#include "crembed/exact/oracle.hpp"
#include "crembed/matrix_exp.hpp"
#include "residual_sweep.hpp"

namespace crembed {

ResidualTensor::ResidualTensor(CoordinatePoint at, int dim)
    : at_(std::move(at)),
      dim_(dim),
      slots_(static_cast<std::size_t>(dim) * dim * (dim - 1) / 2, Complex(0)) {}

int ResidualTensor::slot(int alpha, int beta, int gamma) const {
  // Pairs (a, b) with a < b, enumerated a-major: pair_index = a*s - a(a+1)/2 + b - a - 1.
  const int pair = alpha * dim_ - alpha * (alpha + 1) / 2 + beta - alpha - 1;
  return pair * dim_ + gamma;
}

Complex ResidualTensor::operator()(int alpha, int beta, int gamma) const {
  if (alpha < 0 || alpha >= dim_ || beta < 0 || beta >= dim_ || gamma < 0 || gamma >= dim_)
    throw IndexOutOfRange("residual tensor index out of range");
  if (alpha == beta) return Complex(0);
  if (alpha < beta) return slots_[slot(alpha, beta, gamma)];
  return -slots_[slot(beta, alpha, gamma)];
}

void ResidualTensor::set(int alpha, int beta, int gamma, Complex value) {
  if (alpha < 0 || beta >= dim_ || gamma < 0 || gamma >= dim_ || alpha >= beta)
    throw IndexOutOfRange("residual tensor stores slots with alpha < beta only");
  slots_[slot(alpha, beta, gamma)] = value;
}

double ResidualTensor::max_abs() const {
  double m = 0.0;
  for (Complex z : slots_) m = std::max(m, std::abs(z));
  return m;
}

std::array<int, 3> ResidualTensor::argmax() const {
  std::array<int, 3> worst{-1, -1, -1};
  double best = -1.0;
  for (int a = 0; a < dim_; ++a)
    for (int b = a + 1; b < dim_; ++b)
      for (int g = 0; g < dim_; ++g)
        if (double r = std::abs(slots_[slot(a, b, g)]); r > best) {
          best = r;
          worst = {a, b, g};
        }
  return worst;
}

std::vector<CoordinatePoint> grid_points(const GridSpec& grid, int dim) {
  std::vector<CoordinatePoint> points;
  if (dim <= 0) return points;

  if (dim <= grid.max_grid_axes) {
    const int per_axis = std::max(1, grid.points_per_axis);
    std::vector<double> axis(per_axis);
    if (per_axis == 1) {
      axis[0] = 0.0;
    } else {
      for (int i = 0; i < per_axis; ++i)
        axis[i] = -grid.extent + 2.0 * grid.extent * i / (per_axis - 1);
    }
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= axis.size();
    points.reserve(total);
    std::vector<int> digit(dim, 0);
    for (std::size_t p = 0; p < total; ++p) {
      Vector t(dim);
      for (int d = 0; d < dim; ++d) t[d] = axis[digit[d]];
      points.emplace_back(std::move(t));
      for (int d = 0; d < dim; ++d) {
        if (++digit[d] < per_axis) break;
        digit[d] = 0;
      }
    }
    return points;
  }

  std::mt19937 rng(grid.seed);
  std::uniform_real_distribution<double> box(-grid.extent, grid.extent);
  points.reserve(grid.random_samples);
  for (int p = 0; p < grid.random_samples; ++p) {
    Vector t(dim);
    for (int d = 0; d < dim; ++d) t[d] = box(rng);
    points.emplace_back(std::move(t));
  }
  return points;
}

CoefficientMatrix omega_at(const LieAlgebra& algebra, const CoordinatePoint& point,
                           double r_max) {
  const int s = algebra.dim();
  if (point.dim() != s)
    throw IndexOutOfRange("coordinate point dimension does not match the algebra");
  if (!point.all_finite()) throw Error("coordinate point has non-finite entries");
  if (point.max_abs() > r_max) {
    std::ostringstream msg;
    msg << "point max-norm " << point.max_abs() << " exceeds the chart radius " << r_max;
    throw ValidityRadiusExceeded(msg.str(), point.max_abs(), r_max);
  }

  Matrix w = Matrix::Identity(s, s);
  Matrix prefix = Matrix::Identity(s, s);
  for (int a = 1; a < s; ++a) {
    prefix = prefix * expm_scaled(adjoint_matrix(algebra, a - 1), -point.t[a - 1]);
    w.col(a) = prefix.col(a);
  }
  return {point, std::move(w)};
}

namespace {

ResidualTensor exact_mc_residual(const LieAlgebra& algebra, const CoordinatePoint& point) {
  using exact::GaussianRational;
  const auto residual = exact::exact_structure_residual(
      algebra, exact::exact_omega(algebra), GaussianRational(1), GaussianRational(1));
  return residual.evaluate(point);
}

}  // namespace

ResidualTensor maurer_cartan_residual(const LieAlgebra& algebra, const CoordinatePoint& point,
                                      const FDSpec& fd, double r_max) {
  fd.validate();
  if (!point.is_real())
    throw Error("structure-equation verification requires real coordinates");
  if (fd.mode == DerivativeMode::exact_polynomial) return exact_mc_residual(algebra, point);

  const int s = algebra.dim();
  auto omega_values = [&](const CoordinatePoint& p) { return omega_at(algebra, p, r_max).values; };

  const Matrix w = omega_values(point);
  std::vector<Matrix> partial(s);
  for (int a = 0; a < s; ++a) partial[a] = partial_derivative(omega_values, point, a, fd);

  ResidualTensor residual(point, s);
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      const Vector bracket = algebra.bracket(w.col(a), w.col(b));
      for (int g = 0; g < s; ++g)
        residual.set(a, b, g, partial[a](g, b) - partial[b](g, a) + bracket[g]);
    }
  }
  return residual;
}

ResidualReport verify_maurer_cartan(const LieAlgebra& algebra, const GridSpec& grid,
                                    const FDSpec& fd, double r_max) {
  auto residual_at = [&](const CoordinatePoint& p, const FDSpec& spec) {
    return maurer_cartan_residual(algebra, p, spec, r_max);
  };
  ResidualReport report = detail::sweep_residual(residual_at, grid, fd, algebra.dim());
  report.grid = grid;
  report.fd = fd;
  return report;
}

namespace detail {

ResidualReport sweep_residual(const ResidualAtFn& residual_at, const GridSpec& grid,
                              const FDSpec& fd, int dim) {
  ResidualReport report;
  report.grid = grid;
  report.fd = fd;
  for (const CoordinatePoint& point : grid_points(grid, dim)) {
    const ResidualTensor residual = residual_at(point, fd);
    ++report.points_evaluated;
    const double worst = residual.max_abs();
    if (worst >= report.max_residual) {
      report.max_residual = worst;
      report.witness_point = point;
      report.witness_indices = residual.argmax();
    }
  }
  if (report.points_evaluated > 0 && fd.mode == DerivativeMode::finite_difference)
    report.diagnostic = diagnose_step(residual_at, report.witness_point, fd, report.max_residual);
  return report;
}

std::string diagnose_step(const ResidualAtFn& residual_at, const CoordinatePoint& witness,
                          const FDSpec& fd, double max_residual) {
  // Small residuals mean the step already sits inside the healthy window.
  if (max_residual <= 1e-6 || witness.dim() == 0) return {};

  FDSpec probe = fd;
  probe.richardson_levels = 0;
  const double at_h = residual_at(witness, probe).max_abs();
  probe.step = fd.step / 2.0;
  const double at_half = residual_at(witness, probe).max_abs();

  std::ostringstream msg;
  if (at_half <= at_h / 3.0) {
    msg << "step_too_large: residual at the witness falls from " << at_h << " to " << at_half
        << " when the step halves (truncation-dominated); consider a smaller step";
  } else if (at_half >= at_h / 1.5) {
    msg << "step_too_small: residual at the witness stays near " << at_h
        << " when the step halves (round-off-dominated); consider a larger step";
  }
  return msg.str();
}

}  // namespace detail

}  // namespace crembed
