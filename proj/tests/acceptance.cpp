// Acceptance gate: one criterion per function, one PASS/FAIL line each,
// exit code = number of failed criteria.  Drives the library directly and
// the CLI (path in argv[1]) as a subprocess.

#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "crembed/catalog.hpp"
#include "crembed/continuation.hpp"
#include "crembed/cr_frame.hpp"
#include "crembed/errors.hpp"
#include "crembed/exact/oracle.hpp"
#include "test_support.hpp"

std::string g_cli_path;

using nlohmann::json;
using namespace crembed;
namespace ex = crembed::exact;

namespace {

const LieAlgebra& algebra(const std::string& name) {
  const CatalogEntry* entry = find_catalog_entry(name);
  if (!entry) throw Error("catalog entry missing: " + name);
  return entry->algebra;
}

GridSpec random_box(int samples, unsigned seed = 20240901) {
  GridSpec grid;
  grid.extent = 0.5;
  grid.max_grid_axes = 0;  // force random sampling regardless of dimension
  grid.random_samples = samples;
  grid.seed = seed;
  return grid;
}

// Maximum |A(r,c) - B(r,c)|.
double max_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

// --- 1. The oracle certifies the flatness residual is the zero polynomial.

Outcome exact_flatness_zero() {
  for (const std::string name : {"heisenberg3", "n4", "n5"}) {
    const ex::ExactResidualTensor residual = ex::exact_flatness_residual(algebra(name));
    if (!residual.identically_zero() || residual.max_total_degree() != -1)
      return {false, name + ": residual polynomial is not identically zero"};

    const CliResult cli = run_cli("oracle --json catalog:" + name);
    if (cli.exit_code != 0) return {false, name + ": oracle CLI exit " + std::to_string(cli.exit_code)};
    if (json::parse(cli.output)["residual_identically_zero"] != true)
      return {false, name + ": CLI did not certify a zero residual"};
  }
  return {true, "zero polynomial for h3, n4, n5 (library and CLI)"};
}

// --- 2. Numeric flatness on random points, with an O(h^2) halving check.

Outcome numeric_flatness() {
  const FDSpec fd;  // defaults: step 1e-4, one Richardson level
  const ResidualReport h3 = verify_flatness(algebra("heisenberg3"), random_box(200), fd);
  if (!h3.passes(1e-8) || h3.points_evaluated != 200)
    return {false, "heisenberg3 max residual " + std::to_string(h3.max_residual)};
  const ResidualReport sl2 = verify_flatness(algebra("sl2"), random_box(200), fd);
  if (!sl2.passes(1e-6) || sl2.points_evaluated != 200)
    return {false, "sl2 max residual " + std::to_string(sl2.max_residual)};

  // Plain central differences at h and h/2: the truncation error is O(h^2),
  // so halving must shrink the worst residual by nearly 4x.  sl2 is the
  // honest case — on the nilpotent algebras the coefficients are polynomial
  // and central differences are exact down to rounding.
  FDSpec coarse;
  coarse.step = 2e-3;
  coarse.richardson_levels = 0;
  FDSpec fine = coarse;
  fine.step = 1e-3;
  const GridSpec few = random_box(20);
  const double at_h = verify_flatness(algebra("sl2"), few, coarse).max_residual;
  const double at_half = verify_flatness(algebra("sl2"), few, fine).max_residual;
  const double ratio = at_h / at_half;
  if (!(ratio >= 3.5))
    return {false, "halving ratio " + std::to_string(ratio) + " < 3.5"};

  char detail[160];
  std::snprintf(detail, sizeof detail, "h3 %.2e <= 1e-8, sl2 %.2e <= 1e-6, halving ratio %.2f",
                h3.max_residual, sl2.max_residual, ratio);
  return {true, detail};
}

// --- 3. Closed form on the affine line: lambda_2^2(t) = e^{i t^1}.

Outcome affine_closed_form() {
  const LieAlgebra& axb = algebra("axb");
  const std::vector<CoordinatePoint> points = grid_points(random_box(20), axb.dim());
  double worst = 0.0;
  for (const CoordinatePoint& p : points) {
    const Complex expected = std::exp(Complex(0.0, 1.0) * p.t[0]);
    const Complex got = lambda_at(axb, p).values(1, 1);
    worst = std::max(worst, std::abs(got - expected));
  }
  if (worst > 1e-12) return {false, "lambda(2,2) deviates from e^{i t1} by " + std::to_string(worst)};

  const ResidualReport flat = verify_flatness(axb, random_box(20), FDSpec{});
  if (!flat.passes(1e-8))
    return {false, "flatness residual " + std::to_string(flat.max_residual)};

  char detail[120];
  std::snprintf(detail, sizeof detail, "max |lambda - e^{i t1}| %.2e, flatness %.2e", worst,
                flat.max_residual);
  return {true, detail};
}

// --- 4. Numeric omega and lambda match the exact oracle at rational points.

Outcome oracle_agreement() {
  std::mt19937 gen(20240901);
  std::uniform_int_distribution<int> numerator(-128, 128);  // t = m/256, |t| <= 0.5, exact in double
  double worst = 0.0;
  int algebras_checked = 0;

  for (const std::string& name : catalog_names()) {
    const LieAlgebra& alg = algebra(name);
    ex::PolyMatrix omega_poly, lambda_poly;
    try {
      omega_poly = ex::exact_omega(alg);
      lambda_poly = ex::exact_lambda(alg);
    } catch (const NotNilpotent&) {
      continue;  // the oracle's domain is nilpotent algebras only
    }
    ++algebras_checked;
    const int dim = alg.dim();

    for (int trial = 0; trial < 20; ++trial) {
      RealVector x(dim);
      std::vector<ex::GaussianRational> rational(dim);
      for (int d = 0; d < dim; ++d) {
        x[d] = numerator(gen) / 256.0;
        rational[d] = ex::GaussianRational::from_complex(Complex(x[d], 0.0));
      }
      const CoordinatePoint point = CoordinatePoint::real(x);
      const Matrix omega_numeric = omega_at(alg, point).values;
      const Matrix lambda_numeric = lambda_at(alg, point).values;
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
          worst = std::max(worst, std::abs(omega_numeric(r, c) -
                                           omega_poly(r, c).evaluate(rational).to_complex()));
          worst = std::max(worst, std::abs(lambda_numeric(r, c) -
                                           lambda_poly(r, c).evaluate(rational).to_complex()));
        }
    }
  }

  if (algebras_checked < 5)
    return {false, "only " + std::to_string(algebras_checked) + " nilpotent algebras found"};
  if (worst > 1e-12) return {false, "worst disagreement " + std::to_string(worst)};
  char detail[120];
  std::snprintf(detail, sizeof detail, "%d algebras, 20 rational points each, worst %.2e",
                algebras_checked, worst);
  return {true, detail};
}

// --- 5. Column alpha of lambda ignores t^mu for mu >= alpha.

Outcome triangular_dependence() {
  double worst = 0.0;
  for (const std::string& name : catalog_names()) {
    const DependenceReport report = check_triangular_dependence(algebra(name), 50);
    if (!report.passed || report.samples != 50)
      return {false, name + ": deviation " + std::to_string(report.max_deviation)};
    worst = std::max(worst, report.max_deviation);
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "all catalog algebras, 50 trials each, worst %.2e", worst);
  return {true, detail};
}

// --- 6. Structural identities at sampled points.

Outcome structural_identities() {
  const FDSpec fd;
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);

  for (const std::string& name : catalog_names()) {
    const LieAlgebra& alg = algebra(name);
    const int dim = alg.dim();

    // lambda(0) is the identity, exactly.
    const Matrix at_zero = lambda_at(alg, CoordinatePoint::zero(dim)).values;
    if (max_diff(at_zero, Matrix::Identity(dim, dim)) != 0.0)
      return {false, name + ": lambda(0) differs from the identity"};

    for (int trial = 0; trial < 5; ++trial) {
      RealVector x(dim);
      for (int d = 0; d < dim; ++d) x[d] = coord(gen);
      const CoordinatePoint point = CoordinatePoint::real(x);

      // conj(lambda(t)) = lambda(-t): real structure constants.
      const Matrix direct = lambda_at(alg, point).values.conjugate();
      const Matrix reflected = lambda_at(alg, CoordinatePoint::real(-x)).values;
      if (max_diff(direct, reflected) > 1e-12)
        return {false, name + ": conj(lambda(t)) != lambda(-t), diff " +
                           std::to_string(max_diff(direct, reflected))};

      // Residual antisymmetry is exact, including the zero diagonal.
      const ResidualTensor residual = flatness_residual(alg, point, fd);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          for (int g = 0; g < dim; ++g) {
            if (residual(a, b, g) != -residual(b, a, g))
              return {false, name + ": residual antisymmetry broken"};
            if (a == b && residual(a, b, g) != Complex(0.0))
              return {false, name + ": residual diagonal not exactly zero"};
          }
    }

    // Indexed form vs bracket form of the same system.
    const double agreement = form_agreement(alg, random_box(30), fd);
    if (agreement > 1e-12)
      return {false, name + ": |flatness - bracket form| = " + std::to_string(agreement)};
  }

  // Commutation residual = i * flatness residual.
  const CoefficientFn continued = [](const LieAlgebra& a, const CoordinatePoint& p) {
    return lambda_at(a, p);
  };
  for (const std::string name : {"heisenberg3", "sl2"}) {
    const LieAlgebra& alg = algebra(name);
    const int dim = alg.dim();
    for (int trial = 0; trial < 5; ++trial) {
      RealVector x(dim);
      for (int d = 0; d < dim; ++d) x[d] = coord(gen);
      const CoordinatePoint point = CoordinatePoint::real(x);
      const ResidualTensor commutation = commutation_residual_with(alg, continued, point, fd);
      const ResidualTensor flatness = flatness_residual(alg, point, fd);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          for (int g = 0; g < dim; ++g)
            if (std::abs(commutation(a, b, g) - Complex(0.0, 1.0) * flatness(a, b, g)) > 1e-12)
              return {false, name + ": commutation residual is not i * flatness residual"};
    }
  }

  return {true, "lambda(0)=I, antisymmetry, form agreement, i-relation, conjugation symmetry"};
}

// --- 7. Embedding certificates for the two catalog CR structures.

Outcome embedding_certificates() {
  struct Expected {
    const char* name;
    int ell;
    int type_n, type_k;
  };
  for (const Expected& want : {Expected{"heisenberg3-cr", 1, 2, 0}, Expected{"abelian4-cr", 2, 3, 0}}) {
    const CatalogEntry* entry = find_catalog_entry(want.name);
    if (!entry || !entry->structure) return {false, std::string(want.name) + ": missing"};
    const EmbeddingCertificate cert = corollary_pipeline(*entry->structure);

    if (!cert.passed || !cert.failed_stage.empty())
      return {false, std::string(want.name) + ": failed at stage " + cert.failed_stage};
    if (cert.ell != want.ell)
      return {false, std::string(want.name) + ": ell " + std::to_string(cert.ell)};
    if (cert.n + cert.ell != want.type_n || cert.k - cert.ell != want.type_k)
      return {false, std::string(want.name) + ": wrong extension type"};

    const int full_rank = 2 * (cert.n + cert.ell);
    if (cert.cr_at_zero.rank != full_rank || !cert.cr_at_zero.passed)
      return {false, std::string(want.name) + ": rank at 0 is " + std::to_string(cert.cr_at_zero.rank)};
    if (cert.cr_worst.rank != full_rank || cert.cr_points_checked != 51)
      return {false, std::string(want.name) + ": sampled rank dropped to " +
                         std::to_string(cert.cr_worst.rank)};
  }
  return {true, "heisenberg3-cr: ell=1 type (2,0); abelian4-cr: ell=2 type (3,0); ranks full at 51 points"};
}

// --- 8. Negative controls: corrupted inputs must be rejected.

Outcome negative_controls() {
  if (run_cli("validate " + fixture_path("perturbed_h3.json")).exit_code != 1)
    return {false, "perturbed Jacobi input was not rejected with exit 1"};

  // Freezing the coefficients at the identity removes the derivative term,
  // so the bracket term c_{12}^3 = 1 survives as the full residual.
  const LieAlgebra& h3 = algebra("heisenberg3");
  const CoefficientFn frozen = [](const LieAlgebra& a, const CoordinatePoint& p) {
    CoefficientMatrix m;
    m.at = p;
    m.values = Matrix::Identity(a.dim(), a.dim());
    return m;
  };
  RealVector x(3);
  x << 0.2, -0.1, 0.3;
  const ResidualTensor frozen_residual =
      commutation_residual_with(h3, frozen, CoordinatePoint::real(x), FDSpec{});
  if (std::abs(frozen_residual(0, 1, 2)) != 1.0)
    return {false, "frozen-coefficient residual magnitude " +
                       std::to_string(std::abs(frozen_residual(0, 1, 2)))};

  const CliResult conj = run_cli("embed --json " + fixture_path("h_conj_structure.json"));
  if (conj.exit_code != 1 || json::parse(conj.output)["failed_stage"] != "validate")
    return {false, "h = conj(h) structure was not rejected at validation"};

  if (run_cli("oracle catalog:sl2").exit_code != 3)
    return {false, "sl2 was not rejected by the oracle with exit 3"};

  return {true, "Jacobi violation, frozen coefficients, conjugate intersection, non-nilpotent oracle"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s /path/to/crembed\n", argv[0]);
    return 2;
  }
  g_cli_path = argv[1];

  struct Criterion {
    const char* label;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"exact oracle: flatness residual is the zero polynomial", exact_flatness_zero},
      {"numeric flatness on 200 random points + O(h^2) halving", numeric_flatness},
      {"closed form on the affine line: lambda_2^2 = e^{i t^1}", affine_closed_form},
      {"numeric omega/lambda match the exact oracle at rational points", oracle_agreement},
      {"triangular column dependence, 50 trials per algebra", triangular_dependence},
      {"structural identities at sampled points", structural_identities},
      {"embedding certificates for both catalog CR structures", embedding_certificates},
      {"negative controls reject corrupted inputs", negative_controls},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    if (!outcome.passed) ++failures;
    std::printf("%s  %d. %s — %s\n", outcome.passed ? "PASS" : "FAIL", index, criterion.label,
                outcome.detail.c_str());
  }

  std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
  return failures;
}
