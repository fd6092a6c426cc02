#include "crembed/matrix_exp.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

#include "crembed/errors.hpp"

namespace crembed {

namespace {

bool matrix_finite(const Matrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!is_finite(a(i, j))) return false;
  return true;
}

double one_norm(const Matrix& a) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, a.col(j).cwiseAbs().sum());
  return m;
}

// Diagonal Pade approximant of order m: returns exp(A) ~ (V - U)^{-1}(V + U)
// with U the odd and V the even part of the numerator polynomial.
Matrix pade_approximant(const Matrix& a, int m) {
  const Eigen::Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix u, v;

  // Numerator coefficients b_0..b_m of the [m/m] approximant.
  switch (m) {
    case 3: {
      const double b[] = {120, 60, 12, 1};
      u = a * (b[3] * a2 + b[1] * id);
      v = b[2] * a2 + b[0] * id;
      break;
    }
    case 5: {
      const double b[] = {30240, 15120, 3360, 420, 30, 1};
      const Matrix a4 = a2 * a2;
      u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[4] * a4 + b[2] * a2 + b[0] * id;
      break;
    }
    case 7: {
      const double b[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
      const Matrix a4 = a2 * a2;
      const Matrix a6 = a4 * a2;
      u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      break;
    }
    case 9: {
      const double b[] = {17643225600, 8821612800, 2075673600, 302702400,
                          30270240,    2162160,    110880,     3960,
                          90,          1};
      const Matrix a4 = a2 * a2;
      const Matrix a6 = a4 * a2;
      const Matrix a8 = a6 * a2;
      u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      break;
    }
    default: {  // m == 13
      const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                          1187353796428800.0,  129060195264000.0,   10559470521600.0,
                          670442572800.0,      33522128640.0,       1323241920.0,
                          40840800.0,          960960.0,            16380.0,
                          182.0,               1.0};
      const Matrix a4 = a2 * a2;
      const Matrix a6 = a4 * a2;
      u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2)
               + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
      v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2)
          + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      break;
    }
  }

  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

std::optional<int> nilpotency_index(const Matrix& a, int max_power, double tol) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1;
  if (max_power <= 0) max_power = n;
  const double base = std::max(1.0, a.cwiseAbs().maxCoeff());
  Matrix power = a;
  double scale = base;
  for (int m = 1; m <= max_power; ++m) {
    if (power.cwiseAbs().maxCoeff() <= tol * scale) return m;
    power = power * a;
    scale *= base;
  }
  return std::nullopt;
}

Matrix expm_nilpotent(const Matrix& a, int index) {
  const Eigen::Index n = a.rows();
  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int j = 1; j < index; ++j) {
    term = term * a / static_cast<double>(j);
    result += term;
  }
  return result;
}

Matrix expm_pade(const Matrix& a) {
  if (!matrix_finite(a)) throw ExpConvergenceFailure("matrix exponential of non-finite input");

  // Backward-error thresholds for the [m/m] approximants (unit roundoff 2^-53).
  constexpr double theta3 = 1.495585217958292e-2;
  constexpr double theta5 = 2.539398330063230e-1;
  constexpr double theta7 = 9.504178996162932e-1;
  constexpr double theta9 = 2.097847961257068e0;
  constexpr double theta13 = 5.371920351148152e0;

  const double norm = one_norm(a);
  Matrix result;
  if (norm <= theta3) {
    result = pade_approximant(a, 3);
  } else if (norm <= theta5) {
    result = pade_approximant(a, 5);
  } else if (norm <= theta7) {
    result = pade_approximant(a, 7);
  } else if (norm <= theta9) {
    result = pade_approximant(a, 9);
  } else {
    int squarings = 0;
    double scaled = norm;
    while (scaled > theta13) {
      scaled /= 2.0;
      ++squarings;
    }
    result = pade_approximant(a / std::pow(2.0, squarings), 13);
    for (int i = 0; i < squarings; ++i) result = result * result;
  }

  if (!matrix_finite(result))
    throw ExpConvergenceFailure("matrix exponential produced a non-finite result");
  return result;
}

Matrix expm_scaled(const Matrix& a, Complex z) {
  if (z == Complex(0)) return Matrix::Identity(a.rows(), a.cols());
  if (auto index = nilpotency_index(a)) return expm_nilpotent(z * a, *index);
  return expm_pade(z * a);
}

Matrix expm(const Matrix& a) {
  if (auto index = nilpotency_index(a)) return expm_nilpotent(a, *index);
  return expm_pade(a);
}

}  // namespace crembed
