#pragma once

#include <array>
#include <string>
#include <vector>

#include "crembed/fd.hpp"
#include "crembed/lie_algebra.hpp"
#include "crembed/types.hpp"

namespace crembed {

/// Rank-3 residual sample R_{ab}^g at one point.  Only the a < b slots are
/// stored; the accessor reconstructs the rest, so the tensor is
/// antisymmetric in (a,b) exactly as stored-and-reconstructed.
class ResidualTensor {
 public:
  ResidualTensor() = default;
  ResidualTensor(CoordinatePoint at, int dim);

  const CoordinatePoint& at() const { return at_; }
  int dim() const { return dim_; }

  /// R_{ab}^g with antisymmetric reconstruction: (b,a,g) returns the
  /// negated (a,b,g) slot and the diagonal a == b is exactly zero.
  Complex operator()(int alpha, int beta, int gamma) const;

  void set(int alpha, int beta, int gamma, Complex value);  // requires alpha < beta

  double max_abs() const;
  /// Indices (a,b,g), a < b, of the largest-magnitude slot; {-1,-1,-1}
  /// when there are no pairs (dim < 2).
  std::array<int, 3> argmax() const;

 private:
  int slot(int alpha, int beta, int gamma) const;

  CoordinatePoint at_;
  int dim_ = 0;
  std::vector<Complex> slots_;
};

/// Sampling plan for residual verification: a tensor grid in the box
/// [-extent, extent]^s while s <= max_grid_axes, uniform random points in
/// the same box beyond that (grid size is exponential in s).
struct GridSpec {
  double extent = 0.5;
  int points_per_axis = 5;
  int max_grid_axes = 4;
  int random_samples = 200;
  unsigned seed = 20240901;
};

/// Materialize the sampling plan for an s-dimensional chart.
std::vector<CoordinatePoint> grid_points(const GridSpec& grid, int dim);

/// Worst residual over a sampled set of points, with the witness that
/// attained it.  `diagnostic` is empty when the finite-difference error
/// budget looks healthy; otherwise it names the suspected step problem.
struct ResidualReport {
  double max_residual = 0.0;
  CoordinatePoint witness_point;
  std::array<int, 3> witness_indices{-1, -1, -1};  // (alpha, beta, gamma), 0-based
  int points_evaluated = 0;
  GridSpec grid;
  FDSpec fd;
  std::string diagnostic;

  bool passes(double tol) const { return max_residual <= tol; }
};

/// Maurer-Cartan coefficients at a chart point: column alpha of the result
/// is exp(-t^1 ad_1) ... exp(-t^{alpha-1} ad_{alpha-1}) e_alpha, so column
/// alpha reads only t^1..t^{alpha-1} and column 1 is always e_1.
CoefficientMatrix omega_at(const LieAlgebra& algebra, const CoordinatePoint& point,
                           double r_max = 1.0);

/// Structure-equation residual D_{ab}^g = d_a w_b^g - d_b w_a^g
/// + sum_{mn} w_a^m w_b^n c_{mn}^g at one real point, derivatives by
/// central differences.  Zero (up to FD error) for every algebra.
ResidualTensor maurer_cartan_residual(const LieAlgebra& algebra,
                                      const CoordinatePoint& point, const FDSpec& fd,
                                      double r_max = 1.0);

/// Sweep the grid, keep the worst structure-equation residual.
ResidualReport verify_maurer_cartan(const LieAlgebra& algebra, const GridSpec& grid,
                                    const FDSpec& fd, double r_max = 1.0);

}  // namespace crembed
