#include "crembed/exact/oracle.hpp"

#include <sstream>
#include <utility>

#include "crembed/errors.hpp"

namespace crembed::exact {

ExactResidualTensor::ExactResidualTensor(int dim)
    : dim_(dim),
      slots_(static_cast<std::size_t>(dim) * dim * (dim - 1) / 2, Polynomial(dim)) {}

namespace {

int pair_slot(int dim, int alpha, int beta, int gamma) {
  const int pair = alpha * dim - alpha * (alpha + 1) / 2 + beta - alpha - 1;
  return pair * dim + gamma;
}

}  // namespace

const Polynomial& ExactResidualTensor::at(int alpha, int beta, int gamma) const {
  if (alpha < 0 || beta >= dim_ || gamma < 0 || gamma >= dim_ || alpha >= beta)
    throw IndexOutOfRange("exact residual tensor stores slots with alpha < beta only");
  return slots_[pair_slot(dim_, alpha, beta, gamma)];
}

Polynomial& ExactResidualTensor::at(int alpha, int beta, int gamma) {
  if (alpha < 0 || beta >= dim_ || gamma < 0 || gamma >= dim_ || alpha >= beta)
    throw IndexOutOfRange("exact residual tensor stores slots with alpha < beta only");
  return slots_[pair_slot(dim_, alpha, beta, gamma)];
}

bool ExactResidualTensor::identically_zero() const {
  for (const Polynomial& p : slots_)
    if (!p.is_zero()) return false;
  return true;
}

int ExactResidualTensor::max_total_degree() const {
  int degree = -1;
  for (const Polynomial& p : slots_) degree = std::max(degree, p.total_degree());
  return degree;
}

ResidualTensor ExactResidualTensor::evaluate(const CoordinatePoint& point) const {
  ResidualTensor out(point, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = a + 1; b < dim_; ++b)
      for (int g = 0; g < dim_; ++g)
        out.set(a, b, g, slots_[pair_slot(dim_, a, b, g)].evaluate(point.t));
  return out;
}

PolyMatrix exact_adjoint(const LieAlgebra& algebra, int alpha) {
  const int s = algebra.dim();
  if (alpha < 0 || alpha >= s) throw IndexOutOfRange("adjoint index out of range");
  PolyMatrix m(s, s, s);
  for (int b = 0; b < s; ++b)
    for (int g = 0; g < s; ++g) {
      const Complex c = algebra.c(alpha, b, g);
      if (c != Complex(0))
        m(g, b) = Polynomial::constant(s, GaussianRational::from_complex(c));
    }
  return m;
}

PolyMatrix exact_exp_nilpotent(const PolyMatrix& m, const Polynomial& scalar) {
  if (m.rows() != m.cols()) throw IndexOutOfRange("exponential of a non-square matrix");
  const int n = m.rows();

  // Find the nilpotency index with exact powers; n steps suffice for a
  // genuine nilpotent.
  int index = -1;
  PolyMatrix power = m;
  for (int p = 1; p <= n; ++p) {
    if (power.is_zero()) {
      index = p;
      break;
    }
    if (p < n) power = power * m;
  }
  if (index < 0) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (!power(r, c).is_zero()) {
          std::ostringstream msg;
          msg << "matrix power " << n << " has a surviving entry at (" << r + 1 << ", "
              << c + 1 << "); not nilpotent";
          throw NotNilpotent(msg.str(), n, r, c);
        }
    index = n;  // unreachable: a zero n-th power is caught in the loop
  }

  const PolyMatrix scaled = m.scaled(scalar);
  PolyMatrix result = PolyMatrix::identity(n, m.nvars());
  PolyMatrix term = PolyMatrix::identity(n, m.nvars());
  for (int j = 1; j < index; ++j) {
    term = (term * scaled).scaled(GaussianRational(Rational(1, j)));
    result = result + term;
  }
  return result;
}

PolyMatrix exact_omega(const LieAlgebra& algebra) {
  const int s = algebra.dim();
  PolyMatrix w = PolyMatrix::identity(s, s);
  PolyMatrix prefix = PolyMatrix::identity(s, s);
  for (int a = 1; a < s; ++a) {
    const Polynomial minus_t =
        Polynomial::variable(s, a - 1) * GaussianRational(-1);
    prefix = prefix * exact_exp_nilpotent(exact_adjoint(algebra, a - 1), minus_t);
    for (int g = 0; g < s; ++g) w(g, a) = prefix(g, a);
  }
  return w;
}

PolyMatrix exact_lambda(const LieAlgebra& algebra) {
  return exact_omega(algebra).scale_variables(GaussianRational(Rational(0), Rational(-1)));
}

ExactResidualTensor exact_structure_residual(const LieAlgebra& algebra,
                                             const PolyMatrix& coefficients,
                                             const GaussianRational& derivative_weight,
                                             const GaussianRational& bracket_weight) {
  const int s = algebra.dim();
  if (coefficients.rows() != s || coefficients.cols() != s || coefficients.nvars() != s)
    throw IndexOutOfRange("coefficient matrix shape does not match the algebra");

  std::vector<PolyMatrix> partial;
  partial.reserve(s);
  for (int a = 0; a < s; ++a) partial.push_back(coefficients.derivative(a));

  ExactResidualTensor out(s);
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      for (int g = 0; g < s; ++g) {
        Polynomial contraction(s);
        for (int m = 0; m < s; ++m) {
          for (int n = 0; n < s; ++n) {
            const Complex c = algebra.c(m, n, g);
            if (c == Complex(0)) continue;
            contraction += coefficients(m, a) * coefficients(n, b)
                           * GaussianRational::from_complex(c);
          }
        }
        out.at(a, b, g) = (partial[a](g, b) - partial[b](g, a)) * derivative_weight
                          + contraction * bracket_weight;
      }
    }
  }
  return out;
}

ExactResidualTensor exact_flatness_residual(const LieAlgebra& algebra) {
  return exact_structure_residual(algebra, exact_lambda(algebra), GaussianRational(1),
                                  GaussianRational(Rational(0), Rational(-1)));
}

}  // namespace crembed::exact
