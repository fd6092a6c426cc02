#pragma once

#include "crembed/types.hpp"

namespace crembed {

inline constexpr double kRankTol = 1e-10;

/// Numerical rank: number of singular values above rank_tol * sigma_max.
int numeric_rank(const Matrix& a, double rank_tol = kRankTol);

/// Orthonormal basis of the column space (left singular vectors above the
/// relative threshold). Returns an s x r matrix, r = numeric rank.
Matrix column_space_basis(const Matrix& a, double rank_tol = kRankTol);

/// Distance of v to the column space of the orthonormal basis q.
double distance_to_span(const Matrix& q, const Vector& v);

}  // namespace crembed
