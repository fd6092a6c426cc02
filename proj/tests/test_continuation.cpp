#include <doctest.h>

#include <cmath>

#include "crembed/catalog.hpp"
#include "crembed/continuation.hpp"
#include "crembed/errors.hpp"

using namespace crembed;

namespace {

const LieAlgebra& named_algebra(const char* name) {
  const CatalogEntry* entry = find_catalog_entry(name);
  REQUIRE(entry != nullptr);
  return entry->algebra;
}

CoordinatePoint sample_point(const LieAlgebra& algebra, double scale = 0.4) {
  RealVector x(algebra.dim());
  for (int d = 0; d < algebra.dim(); ++d) x[d] = scale * std::cos(1.0 + d);
  return CoordinatePoint::real(x);
}

}  // namespace

TEST_CASE("lambda at the origin is the identity for every catalog algebra") {
  for (const CatalogEntry& entry : catalog()) {
    const int s = entry.algebra.dim();
    const Matrix l = lambda_at(entry.algebra, CoordinatePoint::zero(s)).values;
    CHECK((l - Matrix::Identity(s, s)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("continuation rotates the Heisenberg coefficient to i t^1") {
  // omega_3^2 = -t^1, so lambda_3^2 = -(-i t^1) = i t^1.
  const LieAlgebra& h3 = named_algebra("heisenberg3");
  RealVector x(3);
  x << 0.4, -0.3, 0.1;
  const Matrix l = lambda_at(h3, CoordinatePoint::real(x)).values;
  CHECK(std::abs(l(2, 1) - Complex(0, 0.4)) <= 1e-15);
  CHECK(l(1, 1) == Complex(1));
  CHECK((l.col(0) - Vector::Unit(3, 0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((l.col(2) - Vector::Unit(3, 2)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("continuation turns the affine-line exponential into a phase") {
  // omega_2^2 = exp(-t^1) continues to exp(i t^1) = cos t^1 + i sin t^1.
  const LieAlgebra& axb = named_algebra("axb");
  RealVector x(2);
  x << 0.7, -0.2;
  const Matrix l = lambda_at(axb, CoordinatePoint::real(x)).values;
  CHECK(std::abs(l(1, 1) - Complex(std::cos(0.7), std::sin(0.7))) <= 1e-14);
  CHECK(std::abs(std::abs(l(1, 1)) - 1.0) <= 1e-14);
}

TEST_CASE("lambda inherits the reality symmetry conj(lambda(t)) = lambda(-t)") {
  for (const CatalogEntry& entry : catalog()) {
    const CoordinatePoint p = sample_point(entry.algebra);
    const CoordinatePoint minus_p{-p.t};
    const Matrix at_p = lambda_at(entry.algebra, p).values;
    const Matrix at_minus = lambda_at(entry.algebra, minus_p).values;
    CHECK((at_p.conjugate() - at_minus).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("lambda enforces the chart radius on the rotated argument") {
  const LieAlgebra& h3 = named_algebra("heisenberg3");
  RealVector x(3);
  x << 1.5, 0.0, 0.0;
  CHECK_THROWS_AS(lambda_at(h3, CoordinatePoint::real(x)), ValidityRadiusExceeded);
  CHECK_NOTHROW(lambda_at(h3, CoordinatePoint::real(x), 2.0));
}

TEST_CASE("flatness residual vanishes to FD accuracy") {
  const FDSpec fd;
  for (const char* name : {"heisenberg3", "n4", "n5", "axb", "sl2", "su2"}) {
    const LieAlgebra& algebra = named_algebra(name);
    const ResidualTensor r = flatness_residual(algebra, sample_point(algebra), fd);
    CHECK(r.max_abs() <= 1e-9);
  }
}

TEST_CASE("flatness and bracket form agree far below the FD error") {
  const FDSpec fd;
  const LieAlgebra& sl2 = named_algebra("sl2");
  const CoordinatePoint p = sample_point(sl2);
  const ResidualTensor indexed = flatness_residual(sl2, p, fd);
  const ResidualTensor bracket = bracket_form_residual(sl2, p, fd);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (int g = 0; g < 3; ++g)
        CHECK(std::abs(indexed(a, b, g) - bracket(a, b, g)) <= 1e-13);

  CHECK(form_agreement(sl2, GridSpec{}, fd) <= 1e-13);
}

TEST_CASE("exact mode: flatness is identically zero on nilpotent algebras") {
  FDSpec exact;
  exact.mode = DerivativeMode::exact_polynomial;
  for (const char* name : {"abelian3", "heisenberg3", "n4", "n5"}) {
    const LieAlgebra& algebra = named_algebra(name);
    const CoordinatePoint p = sample_point(algebra);
    CHECK(flatness_residual(algebra, p, exact).max_abs() == 0.0);
    CHECK(bracket_form_residual(algebra, p, exact).max_abs() == 0.0);
  }
  CHECK_THROWS_AS(flatness_residual(named_algebra("sl2"), CoordinatePoint::zero(3), exact),
                  NotNilpotent);
}

TEST_CASE("flatness verification sweeps report like the structure equation") {
  const LieAlgebra& h3 = named_algebra("heisenberg3");
  const ResidualReport flat = verify_flatness(h3, GridSpec{}, FDSpec{});
  CHECK(flat.points_evaluated == 125);
  CHECK(flat.max_residual <= 1e-9);
  CHECK(flat.diagnostic.empty());

  const ResidualReport bracket = verify_bracket_form(h3, GridSpec{}, FDSpec{});
  CHECK(bracket.points_evaluated == 125);
  CHECK(bracket.max_residual <= 1e-9);
}

TEST_CASE("column alpha of lambda reads only the first alpha coordinates") {
  for (const CatalogEntry& entry : catalog()) {
    const DependenceReport report = check_triangular_dependence(entry.algebra, 50);
    CHECK(report.passed);
    CHECK(report.samples == 50);
    CHECK(report.max_deviation <= 1e-12);
    REQUIRE(report.column >= 0);
    // The reported pair really agrees in the coordinates the column reads.
    for (int d = 0; d < report.column; ++d)
      CHECK(report.base_point.t[d] == report.perturbed_point.t[d]);
  }
}

TEST_CASE("dependence check is deterministic per seed") {
  const LieAlgebra& n5 = named_algebra("n5");
  const DependenceReport first = check_triangular_dependence(n5, 25, 1e-12, 99);
  const DependenceReport second = check_triangular_dependence(n5, 25, 1e-12, 99);
  CHECK(first.max_deviation == second.max_deviation);
  CHECK(first.column == second.column);
  CHECK_THROWS_AS(check_triangular_dependence(n5, 0), IndexOutOfRange);
}

TEST_CASE("dependence summary renders pass and column") {
  const DependenceReport report =
      check_triangular_dependence(named_algebra("heisenberg3"), 10);
  const std::string text = report.summary();
  CHECK(text.find("pass") == 0);
  CHECK(text.find("10 perturbation trials") != std::string::npos);
}
