#pragma once

#include "crembed/errors.hpp"
#include "crembed/linalg.hpp"
#include "crembed/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace crembed {

inline constexpr double kDefaultJacobiTol = 1e-12;

/// One bracket coefficient: [xi_i, xi_j] has coefficient c on xi_gamma.
/// Indices are 0-based and require i < j; the mirrored entry is implied.
struct BracketTerm {
  int i = 0;
  int j = 0;
  int gamma = 0;
  Complex c;
};

/// Dense antisymmetric tensor c_{ab}^g of bracket coefficients,
/// [xi_a, xi_b] = c_{ab}^g xi_g. Immutable after construction.
class StructureConstants {
 public:
  /// Build from the full s^3 tensor, laid out as tensor[(a*s + b)*s + g].
  /// Antisymmetry in (a, b) is checked, not assumed.
  static StructureConstants from_full(int dim, std::vector<Complex> tensor);

  /// Build from i < j entries only; the antisymmetric completion is filled in.
  static StructureConstants from_brackets(int dim, std::span<const BracketTerm> terms);

  int dim() const { return dim_; }
  Complex c(int a, int b, int g) const { return tensor_[index(a, b, g)]; }
  double max_abs() const { return max_abs_; }

  /// All entries with a < b and c != 0, ordered by (i, j, gamma).
  std::vector<BracketTerm> nonzero_brackets() const;

  bool is_zero() const { return max_abs_ == 0.0; }

 private:
  StructureConstants(int dim, std::vector<Complex> tensor);
  std::size_t index(int a, int b, int g) const {
    return (static_cast<std::size_t>(a) * dim_ + b) * dim_ + g;
  }

  int dim_ = 0;
  std::vector<Complex> tensor_;
  double max_abs_ = 0.0;
};

/// Finite-dimensional complex Lie algebra given by structure constants.
/// Construction validates the Jacobi identity; the maximal residual is kept.
class LieAlgebra {
 public:
  explicit LieAlgebra(StructureConstants constants, std::vector<std::string> labels = {},
                      double jacobi_tol = kDefaultJacobiTol);

  int dim() const { return constants_.dim(); }
  const StructureConstants& constants() const { return constants_; }
  Complex c(int a, int b, int g) const { return constants_.c(a, b, g); }
  const std::vector<std::string>& labels() const { return labels_; }
  double jacobi_residual() const { return jacobi_residual_; }

  /// Bracket of two coordinate vectors: w^g = sum_{ab} u^a v^b c_{ab}^g.
  Vector bracket(const Vector& u, const Vector& v) const;

 private:
  StructureConstants constants_;
  std::vector<std::string> labels_;
  double jacobi_residual_ = 0.0;
};

/// Validated construction; alias for the checking constructor.
LieAlgebra build_algebra(StructureConstants constants, std::vector<std::string> labels = {},
                         double jacobi_tol = kDefaultJacobiTol);

/// Matrix of ad(xi_alpha): entry (g, b) = c_{alpha b}^g, so that
/// ad(xi_alpha) xi_b = c_{alpha b}^g xi_g. alpha is 0-based.
Matrix adjoint_matrix(const LieAlgebra& algebra, int alpha);

struct AlgebraClass {
  enum class Kind { abelian, nilpotent, solvable, general };
  Kind kind = Kind::general;
  int step = 0;            // nilpotency class, when nilpotent (abelian: 1)
  int derived_length = 0;  // when solvable (abelian: 1)

  std::string to_string() const;
};

/// Tightest class among abelian / nilpotent / solvable / general, decided by
/// the lower central and derived series with SVD rank tests.
AlgebraClass classify(const LieAlgebra& algebra, double rank_tol = kRankTol);

/// Algebra in the reordered basis xi'_a = xi_{perm[a]} (labels follow).
LieAlgebra permute_basis(const LieAlgebra& algebra, const std::vector<int>& perm);

}  // namespace crembed
