#include "crembed/fd.hpp"

#include <sstream>
#include <vector>

#include "crembed/errors.hpp"

namespace crembed {

void FDSpec::validate() const {
  std::ostringstream msg;
  if (!(step >= kMinStep)) {
    msg << "finite-difference step " << step << " below the supported minimum " << kMinStep;
    throw StepTooSmall(msg.str());
  }
  if (!(step <= kMaxStep)) {
    msg << "finite-difference step " << step << " above the supported maximum " << kMaxStep;
    throw StepTooLarge(msg.str());
  }
  if (richardson_levels < 0 || richardson_levels > 8)
    throw Error("richardson_levels must be between 0 and 8");
}

Complex central_derivative(const std::function<Complex(double)>& f, double x0,
                           const FDSpec& fd) {
  fd.validate();
  // Neville-style update: row[i] holds the best estimate using i+1 step
  // halvings; each new central difference is folded in with weights 4^j.
  std::vector<Complex> row;
  row.reserve(fd.richardson_levels + 1);
  for (int i = 0; i <= fd.richardson_levels; ++i) {
    const double h = fd.step / static_cast<double>(1 << i);
    Complex estimate = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    double weight = 4.0;
    for (int j = 0; j < i; ++j) {
      const Complex refined = (weight * estimate - row[j]) / (weight - 1.0);
      row[j] = estimate;
      estimate = refined;
      weight *= 4.0;
    }
    row.push_back(estimate);
  }
  return row.back();
}

Matrix partial_derivative(const std::function<Matrix(const CoordinatePoint&)>& f,
                          const CoordinatePoint& at, int coord, const FDSpec& fd) {
  fd.validate();
  if (coord < 0 || coord >= at.dim())
    throw IndexOutOfRange("derivative coordinate out of range");

  auto central = [&](double h) -> Matrix {
    CoordinatePoint plus = at, minus = at;
    plus.t[coord] += h;
    minus.t[coord] -= h;
    return (f(plus) - f(minus)) / (2.0 * h);
  };

  std::vector<Matrix> row;
  row.reserve(fd.richardson_levels + 1);
  for (int i = 0; i <= fd.richardson_levels; ++i) {
    Matrix estimate = central(fd.step / static_cast<double>(1 << i));
    double weight = 4.0;
    for (int j = 0; j < i; ++j) {
      const Matrix refined = (weight * estimate - row[j]) / (weight - 1.0);
      row[j] = estimate;
      estimate = refined;
      weight *= 4.0;
    }
    row.push_back(estimate);
  }
  return row.back();
}

}  // namespace crembed
