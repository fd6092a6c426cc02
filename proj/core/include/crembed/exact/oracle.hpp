#pragma once

#include <array>
#include <vector>

#include "crembed/exact/polynomial.hpp"
#include "crembed/lie_algebra.hpp"
#include "crembed/maurer_cartan.hpp"

namespace crembed::exact {

/// Residual tensor with exact polynomial slots, stored for index pairs
/// alpha < beta only (antisymmetry is structural, as in the numeric twin).
class ExactResidualTensor {
 public:
  ExactResidualTensor() = default;
  explicit ExactResidualTensor(int dim);

  int dim() const { return dim_; }

  /// Slot (alpha, beta, gamma) with alpha < beta.
  const Polynomial& at(int alpha, int beta, int gamma) const;
  Polynomial& at(int alpha, int beta, int gamma);

  /// True when every slot is the zero polynomial — the theorem's claim.
  bool identically_zero() const;

  /// Largest total degree over all slots; -1 when identically zero.
  int max_total_degree() const;

  /// Floating-point evaluation at a real point (for cross-checks against
  /// the finite-difference residual).
  ResidualTensor evaluate(const CoordinatePoint& point) const;

 private:
  int dim_ = 0;
  std::vector<Polynomial> slots_;
};

/// The adjoint matrix of basis vector alpha with exactly converted
/// Gaussian-rational entries (degree-0 polynomials in s variables).
PolyMatrix exact_adjoint(const LieAlgebra& algebra, int alpha);

/// exp(scalar * m) as the finite Taylor sum over j < rows(m)+1 terms,
/// requiring m nilpotent: throws NotNilpotent (with the smallest
/// surviving power's witness entry) when no power up to rows(m) vanishes.
/// `scalar` is typically a signed monomial like -t^mu.
PolyMatrix exact_exp_nilpotent(const PolyMatrix& m, const Polynomial& scalar);

/// Exact Maurer-Cartan coefficients: column alpha is the Ad-chain product
/// exp(-t^1 ad_1)...exp(-t^{alpha-1} ad_{alpha-1}) e_alpha.  Defined
/// whenever every basis adjoint is nilpotent (in particular for every
/// nilpotent algebra); throws NotNilpotent otherwise.
PolyMatrix exact_omega(const LieAlgebra& algebra);

/// The continuation omega(-i t) by exact substitution t^mu -> -i t^mu.
PolyMatrix exact_lambda(const LieAlgebra& algebra);

/// Shared residual kernel over an exact coefficient matrix F:
///   T_{ab}^g = dw (d_a F_b^g - d_b F_a^g) + bw sum_{mn} F_a^m F_b^n c_{mn}^g.
/// The structure-equation, flatness, and commutation residuals are the
/// instances (dw, bw) = (1, 1) on omega, (1, -i) on lambda, (i, 1) on lambda.
ExactResidualTensor exact_structure_residual(const LieAlgebra& algebra,
                                             const PolyMatrix& coefficients,
                                             const GaussianRational& derivative_weight,
                                             const GaussianRational& bracket_weight);

/// Exact flatness residual
///   R_{ab}^g = (d_a l_b^g - d_b l_a^g) - i sum_{mn} l_a^m l_b^n c_{mn}^g
/// by exact differentiation and multiplication.  Identically zero is the
/// oracle's certification of the flatness system.
ExactResidualTensor exact_flatness_residual(const LieAlgebra& algebra);

}  // namespace crembed::exact
