#pragma once

#include <functional>

#include "crembed/types.hpp"

namespace crembed {

/// How residual derivatives are obtained.
enum class DerivativeMode {
  finite_difference,  // central differences + Richardson (any algebra)
  exact_polynomial,   // exact oracle differentiation (nilpotent algebras only)
};

// Finite-difference policy shared by every numeric derivative in the
// library.  `step` is the base stencil width h; `richardson_levels`
// extrapolation levels are applied on top of the central difference
// (level 0 = plain O(h^2) central difference, level 1 = O(h^4), ...).
struct FDSpec {
  double step = 1e-4;
  int richardson_levels = 1;
  DerivativeMode mode = DerivativeMode::finite_difference;

  static constexpr double kMinStep = 1e-8;
  static constexpr double kMaxStep = 1e-2;

  void validate() const;  // throws StepTooSmall / StepTooLarge
};

// d/dx f(x0) for scalar complex f via central differences plus a
// Richardson table with the ratio-2 step sequence h, h/2, h/4, ...
Complex central_derivative(const std::function<Complex(double)>& f, double x0,
                           const FDSpec& fd);

// Partial derivative of a matrix-valued map along real coordinate
// `coord` of `at`.  Applies the same stencil entrywise (one Richardson
// table per entry, sharing the stencil evaluations).
Matrix partial_derivative(const std::function<Matrix(const CoordinatePoint&)>& f,
                          const CoordinatePoint& at, int coord, const FDSpec& fd);

}  // namespace crembed
