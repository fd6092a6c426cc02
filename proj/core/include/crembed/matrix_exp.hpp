#pragma once

#include <optional>

#include "crembed/types.hpp"

namespace crembed {

// Smallest m with A^m == 0 (checked against a relative floor: an iterate
// counts as zero when max|entry| <= tol * max(1, max|A|)^m).  Returns
// std::nullopt when no power up to `max_power` vanishes; max_power <= 0
// means "use the matrix dimension", which suffices for genuine nilpotents.
std::optional<int> nilpotency_index(const Matrix& a, int max_power = 0,
                                    double tol = 1e-13);

// exp(A) by the truncated series 1 + A + ... + A^{m-1}/(m-1)! where m is
// the nilpotency index.  Exact up to roundoff — no scaling needed.
Matrix expm_nilpotent(const Matrix& a, int index);

// exp(A) by scaling-and-squaring with diagonal Pade approximants of order
// 3/5/7/9/13, choosing the cheapest order whose backward-error bound
// covers ||A||_1 (Higham's theta thresholds).
Matrix expm_pade(const Matrix& a);

// exp(z*A): identity when z == 0 (exactly), finite Taylor when A is
// nilpotent, Pade otherwise.
Matrix expm_scaled(const Matrix& a, Complex z);

// General entry point: dispatches to the nilpotent series when one
// applies and to Pade otherwise.
Matrix expm(const Matrix& a);

}  // namespace crembed
