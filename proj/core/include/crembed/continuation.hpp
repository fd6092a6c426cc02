#pragma once

#include <array>
#include <optional>
#include <string>

#include "crembed/maurer_cartan.hpp"

namespace crembed {

/// Continued coefficients lambda(t) = omega(-i t): column alpha is
/// exp(+i t^1 ad_1) ... exp(+i t^{alpha-1} ad_{alpha-1}) e_alpha.
/// lambda(0) is the identity for every algebra.
CoefficientMatrix lambda_at(const LieAlgebra& algebra, const CoordinatePoint& point,
                            double r_max = 1.0);

/// Flatness residual, "LHS minus RHS":
///   R_{ab}^g = (d_a l_b^g - d_b l_a^g) - i sum_{mn} l_a^m l_b^n c_{mn}^g.
/// The coefficients lambda of the continued Maurer-Cartan pullback make
/// this vanish identically; finite differences leave O(h^4) noise, exact
/// mode (nilpotent algebras) returns exact zeros.
ResidualTensor flatness_residual(const LieAlgebra& algebra, const CoordinatePoint& point,
                                 const FDSpec& fd, double r_max = 1.0);

/// The same system in bracket form, d Lambda = (i/2)[Lambda, Lambda]:
///   B_{ab}^g = (d_a l_b^g - d_b l_a^g)
///              - (i/2) sum_{mn} (l_a^m l_b^n - l_b^m l_a^n) c_{mn}^g.
/// Algebraically identical to flatness_residual given the antisymmetry of
/// c, but computed through the commutator route so the agreement is an
/// honest cross-check rather than a reevaluation.
ResidualTensor bracket_form_residual(const LieAlgebra& algebra,
                                     const CoordinatePoint& point, const FDSpec& fd,
                                     double r_max = 1.0);

/// Grid sweeps keeping the worst residual (same report shape as the
/// Maurer-Cartan verification).
ResidualReport verify_flatness(const LieAlgebra& algebra, const GridSpec& grid,
                               const FDSpec& fd, double r_max = 1.0);
ResidualReport verify_bracket_form(const LieAlgebra& algebra, const GridSpec& grid,
                                   const FDSpec& fd, double r_max = 1.0);

/// Worst pointwise disagreement |R_{ab}^g - B_{ab}^g| between the indexed
/// and bracket forms over the sweep.  The two routes share the derivative
/// values and differ only in how the quadratic term is contracted, so the
/// disagreement is pure arithmetic noise — orders below the FD error.
double form_agreement(const LieAlgebra& algebra, const GridSpec& grid, const FDSpec& fd,
                      double r_max = 1.0);

/// Outcome of the triangular-dependence check: column alpha of lambda must
/// be bitwise invariant (to tolerance) under perturbation of t^mu, mu >= alpha.
struct DependenceReport {
  bool passed = true;
  int samples = 0;
  double max_deviation = 0.0;
  // Witness of the worst deviation (populated even on pass).
  int column = -1;  // 0-based alpha
  CoordinatePoint base_point;
  CoordinatePoint perturbed_point;

  std::string summary() const;
};

/// For `samples` random pairs of points agreeing in t^1..t^{alpha-1},
/// checks that column alpha of lambda coincides.  This is the property
/// that lets the flatness system be solved column by column.
DependenceReport check_triangular_dependence(const LieAlgebra& algebra, int samples,
                                             double tol = 1e-12, unsigned seed = 20240901,
                                             double r_max = 1.0);

}  // namespace crembed
