#include <doctest.h>

#include <cmath>

#include "crembed/catalog.hpp"
#include "crembed/errors.hpp"
#include "crembed/exact/oracle.hpp"

using namespace crembed;
using namespace crembed::exact;

namespace {

const LieAlgebra& named_algebra(const char* name) {
  const CatalogEntry* entry = find_catalog_entry(name);
  REQUIRE(entry != nullptr);
  return entry->algebra;
}

Polynomial t(int nvars, int var) { return Polynomial::variable(nvars, var); }

Polynomial one(int nvars) { return Polynomial::constant(nvars, GaussianRational(1)); }

}  // namespace

TEST_CASE("doubles convert to rationals exactly") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-0.75) == Rational(-3, 4));
  CHECK(rational_from_double(3.0) == Rational(3));

  // 0.1 is not 1/10 in binary; the conversion must preserve the actual
  // dyadic value, so the round trip through double is the identity.
  const Rational tenth = rational_from_double(0.1);
  CHECK(tenth != Rational(1, 10));
  CHECK(rational_to_double(tenth) == 0.1);
}

TEST_CASE("rational strings are canonical and round-trip") {
  CHECK(rational_to_string(Rational(1, 2)) == "1/2");
  CHECK(rational_to_string(Rational(-7, 3)) == "-7/3");
  CHECK(rational_to_string(Rational(5)) == "5");
  CHECK(rational_from_string("4/6") == Rational(2, 3));
  CHECK(rational_from_string("-7/3") == Rational(-7, 3));
  CHECK(rational_from_string(rational_to_string(Rational(22, 7))) == Rational(22, 7));
  CHECK_THROWS_AS(rational_from_string("abc"), ParseError);
  CHECK_THROWS_AS(rational_from_string(""), ParseError);
}

TEST_CASE("Gaussian rational arithmetic is exact") {
  const GaussianRational a(Rational(1), Rational(2));   // 1 + 2i
  const GaussianRational b(Rational(3), Rational(-1));  // 3 - i
  const GaussianRational product = a * b;
  CHECK(product == GaussianRational(Rational(5), Rational(5)));
  CHECK(product / b == a);
  CHECK(product / a == b);
  CHECK(a + a.conj() == GaussianRational(2));
  CHECK((a * GaussianRational::i()) == GaussianRational(Rational(-2), Rational(1)));
  CHECK_THROWS_AS(a / GaussianRational(0), Error);

  // from_complex embeds the exact dyadic values of the double components.
  const GaussianRational z = GaussianRational::from_complex(Complex(0.25, -1.5));
  CHECK(z == GaussianRational(Rational(1, 4), Rational(-3, 2)));
  CHECK(z.to_complex() == Complex(0.25, -1.5));
}

TEST_CASE("grlex orders by degree, then highest variable") {
  const GrlexLess less;
  const Exponents t1{1, 0}, t2{0, 1}, t1sq{2, 0}, t1t2{1, 1}, t2sq{0, 2};
  CHECK(less(t1, t2));        // t1 < t2
  CHECK_FALSE(less(t2, t1));
  CHECK(less(t2, t1sq));      // degree dominates
  CHECK(less(t1sq, t1t2));    // t1^2 < t1 t2
  CHECK(less(t1t2, t2sq));    // t1 t2 < t2^2
  CHECK_FALSE(less(t1, t1));  // irreflexive
}

TEST_CASE("polynomial ring operations") {
  const Polynomial p = one(2) + t(2, 0);  // 1 + t1
  const Polynomial q = one(2) - t(2, 0);  // 1 - t1
  const Polynomial product = p * q;
  CHECK(product == one(2) - t(2, 0) * t(2, 0));
  CHECK(product.total_degree() == 2);
  CHECK((p - p).is_zero());
  CHECK((p - p).total_degree() == -1);

  // d/dt1 (t1^2 t2) = 2 t1 t2, d/dt2 (t1^2 t2) = t1^2.
  const Polynomial m = t(2, 0) * t(2, 0) * t(2, 1);
  CHECK(m.derivative(0) == t(2, 0) * t(2, 1) * GaussianRational(2));
  CHECK(m.derivative(1) == t(2, 0) * t(2, 0));
  CHECK(one(2).derivative(0).is_zero());
}

TEST_CASE("variable scaling implements the continuation substitution") {
  const GaussianRational minus_i(Rational(0), Rational(-1));
  // 1 + t1 + t1^2: degree-d terms pick up (-i)^d.
  const Polynomial p = one(1) + t(1, 0) + t(1, 0) * t(1, 0);
  const Polynomial rotated = p.scale_variables(minus_i);
  const Polynomial expected =
      one(1) + t(1, 0) * minus_i - t(1, 0) * t(1, 0);  // (-i)^2 = -1
  CHECK(rotated == expected);
}

TEST_CASE("evaluation agrees between the exact and floating routes") {
  const Polynomial p =
      t(2, 0) * t(2, 0) * GaussianRational(Rational(1), Rational(1)) - t(2, 1);
  // Dyadic coordinates make the double conversion exact.
  std::vector<GaussianRational> exact_pt{GaussianRational(Rational(1, 4)),
                                         GaussianRational(Rational(-1, 2))};
  Vector dbl_pt(2);
  dbl_pt << Complex(0.25), Complex(-0.5);
  const Complex via_exact = p.evaluate(exact_pt).to_complex();
  const Complex via_double = p.evaluate(dbl_pt);
  CHECK(std::abs(via_exact - via_double) <= 1e-15);
  CHECK(via_exact == Complex(0.0625, 0.0625) + Complex(0.5));
}

TEST_CASE("polynomial rendering is canonical") {
  CHECK(one(2).to_string() == "1");
  CHECK(Polynomial(2).to_string() == "0");
  CHECK(Polynomial::constant(2, GaussianRational::i()).to_string() == "i");
  CHECK((t(2, 0) * GaussianRational(Rational(0), Rational(-1))).to_string() == "-i t1");
  CHECK((one(2) - t(2, 0) * t(2, 0) * GaussianRational(Rational(1, 2))).to_string() ==
        "1 - 1/2 t1^2");
  CHECK((t(3, 0) * t(3, 0) * t(3, 2)).to_string() == "t1^2 t3");
  CHECK((t(2, 0) * t(2, 1) * GaussianRational(Rational(1), Rational(1))).to_string() ==
        "(1+i) t1 t2");
}

TEST_CASE("poly matrices multiply like matrices") {
  PolyMatrix a = PolyMatrix::identity(2, 1);
  a(0, 1) = t(1, 0);
  PolyMatrix b = PolyMatrix::identity(2, 1);
  b(1, 0) = t(1, 0);
  const PolyMatrix ab = a * b;
  CHECK(ab(0, 0) == one(1) + t(1, 0) * t(1, 0));
  CHECK(ab(0, 1) == t(1, 0));
  CHECK(ab(1, 0) == t(1, 0));
  CHECK(ab(1, 1) == one(1));
  CHECK(ab.max_total_degree() == 2);
  CHECK_FALSE(ab.is_zero());
  CHECK((a + a.scaled(GaussianRational(-1))).is_zero());
}

TEST_CASE("exact nilpotent exponential on the Heisenberg adjoint") {
  const LieAlgebra& h3 = named_algebra("heisenberg3");
  const PolyMatrix ad1 = exact_adjoint(h3, 0);
  const Polynomial minus_t1 = -t(3, 0);
  const PolyMatrix e = exact_exp_nilpotent(ad1, minus_t1);
  // exp(-t^1 ad_1) = I - t^1 ad_1 because ad_1^2 = 0.
  CHECK(e(0, 0) == one(3));
  CHECK(e(1, 1) == one(3));
  CHECK(e(2, 2) == one(3));
  CHECK(e(2, 1) == minus_t1);
  CHECK(e(0, 1).is_zero());
  CHECK(e(2, 0).is_zero());
}

TEST_CASE("the exact exponential refuses non-nilpotent input") {
  const LieAlgebra& sl2 = named_algebra("sl2");
  try {
    exact_omega(sl2);
    FAIL("expected NotNilpotent");
  } catch (const NotNilpotent& e) {
    // ad(xi1)^3 = diag(0, 8, -8): the first surviving entry sits at (2,2)
    // in 1-based terms.
    CHECK(e.power == 3);
    CHECK(e.row == 1);
    CHECK(e.col == 1);
  }
}

TEST_CASE("exact omega matches the hand closed form on the Heisenberg algebra") {
  const LieAlgebra& h3 = named_algebra("heisenberg3");
  PolyMatrix expected = PolyMatrix::identity(3, 3);
  expected(2, 1) = -t(3, 0);
  CHECK(exact_omega(h3) == expected);
}

TEST_CASE("exact omega of an abelian algebra is the identity") {
  const LieAlgebra& abelian = named_algebra("abelian3");
  CHECK(exact_omega(abelian) == PolyMatrix::identity(3, 3));
  CHECK(exact_omega(abelian).max_total_degree() == 0);
}

TEST_CASE("exact lambda is the scaled-variable continuation of omega") {
  for (const char* name : {"heisenberg3", "n4", "n5"}) {
    const LieAlgebra& algebra = named_algebra(name);
    const GaussianRational minus_i(Rational(0), Rational(-1));
    CHECK(exact_lambda(algebra) == exact_omega(algebra).scale_variables(minus_i));
  }
  // Spot value: lambda_3^2 = i t1 on the Heisenberg algebra.
  const PolyMatrix l = exact_lambda(named_algebra("heisenberg3"));
  CHECK(l(2, 1) == t(3, 0) * GaussianRational::i());
}

TEST_CASE("omega degrees grow with the nilpotency step") {
  CHECK(exact_omega(named_algebra("heisenberg3")).max_total_degree() == 1);
  CHECK(exact_omega(named_algebra("n4")).max_total_degree() == 2);
  CHECK(exact_omega(named_algebra("n5")).max_total_degree() == 3);
}

TEST_CASE("all three residual instances vanish identically") {
  const GaussianRational one_c(1);
  const GaussianRational i = GaussianRational::i();
  const GaussianRational minus_i(Rational(0), Rational(-1));
  for (const char* name : {"abelian3", "heisenberg3", "n4", "n5"}) {
    const LieAlgebra& algebra = named_algebra(name);
    const PolyMatrix omega = exact_omega(algebra);
    const PolyMatrix lambda = exact_lambda(algebra);

    const ExactResidualTensor structure =
        exact_structure_residual(algebra, omega, one_c, one_c);
    CHECK(structure.identically_zero());
    CHECK(structure.max_total_degree() == -1);

    const ExactResidualTensor flatness =
        exact_structure_residual(algebra, lambda, one_c, minus_i);
    CHECK(flatness.identically_zero());

    const ExactResidualTensor commutation =
        exact_structure_residual(algebra, lambda, i, one_c);
    CHECK(commutation.identically_zero());

    CHECK(exact_flatness_residual(algebra).identically_zero());
  }
}

TEST_CASE("the kernel detects coefficients that do not solve the system") {
  // The identity matrix has zero derivatives, leaving the bare bracket
  // term: the residual is the structure tensor itself, degree 0.
  const LieAlgebra& h3 = named_algebra("heisenberg3");
  const ExactResidualTensor residual = exact_structure_residual(
      h3, PolyMatrix::identity(3, 3), GaussianRational(1), GaussianRational(1));
  CHECK_FALSE(residual.identically_zero());
  CHECK(residual.max_total_degree() == 0);
  CHECK(residual.at(0, 1, 2) == one(3));
  CHECK(residual.at(0, 1, 0).is_zero());
  CHECK_THROWS_AS(residual.at(1, 0, 2), IndexOutOfRange);
  CHECK_THROWS_AS(residual.at(0, 3, 0), IndexOutOfRange);
}

TEST_CASE("exact residual evaluation feeds the numeric report types") {
  const LieAlgebra& n4 = named_algebra("n4");
  const ExactResidualTensor flatness = exact_flatness_residual(n4);
  RealVector x(4);
  x << 0.25, -0.5, 0.125, 0.75;
  const ResidualTensor at_point = flatness.evaluate(CoordinatePoint::real(x));
  CHECK(at_point.dim() == 4);
  CHECK(at_point.max_abs() == 0.0);
  CHECK(at_point.at().max_abs() == 0.75);
}

TEST_CASE("exact and finite-difference flatness agree on a non-trivial slot") {
  // Compare the full FD residual against the exact polynomial residual of
  // deliberately WRONG coefficients (omega instead of lambda) so the
  // comparison is made on nonzero values, not 0 == 0.
  const LieAlgebra& h3 = named_algebra("heisenberg3");
  const PolyMatrix omega = exact_omega(h3);
  const ExactResidualTensor wrong = exact_structure_residual(
      h3, omega, GaussianRational(1),
      GaussianRational(Rational(0), Rational(-1)));  // flatness weights on omega
  CHECK_FALSE(wrong.identically_zero());

  RealVector x(3);
  x << 0.25, -0.375, 0.5;
  const ResidualTensor exact_value = wrong.evaluate(CoordinatePoint::real(x));

  // FD route: flatness weights applied to omega via the injected kernel
  // shape — derivative term plus (-i) bracket term, assembled by hand.
  const FDSpec fd;
  const CoordinatePoint p = CoordinatePoint::real(x);
  auto omega_values = [&](const CoordinatePoint& q) { return omega_at(h3, q).values; };
  const Matrix w = omega_values(p);
  std::vector<Matrix> partial(3);
  for (int a = 0; a < 3; ++a) partial[a] = partial_derivative(omega_values, p, a, fd);
  const Complex minus_i(0, -1);
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const Vector bracket = h3.bracket(w.col(a), w.col(b));
      for (int g = 0; g < 3; ++g) {
        const Complex fd_value =
            partial[a](g, b) - partial[b](g, a) + minus_i * bracket[g];
        CHECK(std::abs(fd_value - exact_value(a, b, g)) <= 1e-10);
      }
    }
  }
}
