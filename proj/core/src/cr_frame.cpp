#include "crembed/cr_frame.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "crembed/errors.hpp"
#include "crembed/exact/oracle.hpp"

namespace crembed {

namespace {

void require_shape(const GroupCRStructure& structure) {
  const int s = structure.algebra.dim();
  if (structure.n < 1 || structure.k < 0)
    throw IndexOutOfRange("CR type requires n >= 1 and k >= 0");
  if (s != 2 * structure.n + structure.k) {
    std::ostringstream msg;
    msg << "algebra dimension " << s << " does not match 2n+k = "
        << 2 * structure.n + structure.k;
    throw IndexOutOfRange(msg.str());
  }
  if (structure.h_basis.rows() != s || structure.h_basis.cols() != structure.n)
    throw IndexOutOfRange("h_basis must be a (2n+k) x n matrix");
}

}  // namespace

std::string CRValidationReport::summary() const {
  std::ostringstream out;
  if (passed) {
    out << "valid: rank(h) = " << h_rank << ", rank[h | conj h] = " << intersection_rank
        << ", integrability defect " << integrability_defect;
  } else {
    out << "invalid (" << violation << "): rank(h) = " << h_rank
        << ", rank[h | conj h] = " << intersection_rank << ", integrability defect "
        << integrability_defect;
    if (defect_u >= 0)
      out << " at columns (" << defect_u + 1 << ", " << defect_v + 1 << ")";
  }
  return out.str();
}

CRValidationReport validate_cr_structure(const GroupCRStructure& structure, double rank_tol) {
  require_shape(structure);
  const int n = structure.n;
  const Matrix& h = structure.h_basis;

  CRValidationReport report;
  report.h_rank = numeric_rank(h, rank_tol);

  Matrix doubled(h.rows(), 2 * h.cols());
  doubled << h, h.conjugate();
  report.intersection_rank = numeric_rank(doubled, rank_tol);

  // Worst distance of a bracket of basis columns to span(h), plus the
  // decisive rank test for each pair.
  const Matrix q = column_space_basis(h, rank_tol);
  bool integrable = true;
  for (int u = 0; u < n && integrable; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const Vector w = structure.algebra.bracket(h.col(u), h.col(v));
      const double defect = distance_to_span(q, w);
      if (defect >= report.integrability_defect) {
        report.integrability_defect = defect;
        report.defect_u = u;
        report.defect_v = v;
      }
      Matrix extended(h.rows(), h.cols() + 1);
      extended << h, w;
      if (numeric_rank(extended, rank_tol) > report.h_rank) {
        integrable = false;
        report.defect_u = u;
        report.defect_v = v;
        report.integrability_defect = defect;
        break;
      }
    }
  }

  if (report.h_rank < n) {
    report.violation = "RankDeficient";
  } else if (report.intersection_rank < 2 * n) {
    report.violation = "IntersectsConjugate";
  } else if (!integrable) {
    report.violation = "NotIntegrable";
  } else {
    report.passed = true;
  }
  return report;
}

void require_valid(const GroupCRStructure& structure, double rank_tol) {
  const CRValidationReport report = validate_cr_structure(structure, rank_tol);
  if (report.passed) return;
  if (report.violation == "RankDeficient")
    throw RankDeficient("h_basis has rank " + std::to_string(report.h_rank) + ", expected "
                            + std::to_string(structure.n),
                        report.h_rank, structure.n);
  if (report.violation == "IntersectsConjugate")
    throw IntersectsConjugate("h meets conj(h): rank[h | conj h] = "
                                  + std::to_string(report.intersection_rank) + ", expected "
                                  + std::to_string(2 * structure.n),
                              report.intersection_rank, 2 * structure.n);
  std::ostringstream msg;
  msg << "bracket of h columns " << report.defect_u + 1 << " and " << report.defect_v + 1
      << " escapes span(h) by " << report.integrability_defect;
  throw NotIntegrable(msg.str(), report.integrability_defect, report.defect_u,
                      report.defect_v);
}

BasisSelection select_transverse_basis(const GroupCRStructure& structure,
                                       std::optional<int> target_ell, double rank_tol) {
  require_shape(structure);
  const int s = structure.algebra.dim();
  const int cap = std::min(s, structure.k);
  const int want = target_ell.value_or(cap);
  if (want > cap) {
    std::ostringstream msg;
    msg << "target ell " << want << " exceeds the bound min(s, k) = " << cap
        << " (extension type needs k - ell >= 0)";
    throw TargetUnreachable(msg.str());
  }
  if (want < 1) throw TargetUnreachable("target ell must be at least 1");

  // Greedy pivoted scan: keep xi_a whenever it enlarges
  // dim(h + conj(h) + span{kept}).  Testing against h alone would admit
  // vectors inside the underlying real distribution (they enlarge the
  // complex span of h while adding nothing transverse), and the extension
  // built from such a vector fails its rank condition at t = 0.
  std::vector<int> kept;
  Matrix current(s, 2 * structure.h_basis.cols());
  current << structure.h_basis, structure.h_basis.conjugate();
  int rank = numeric_rank(current, rank_tol);
  for (int a = 0; a < s && static_cast<int>(kept.size()) < want; ++a) {
    Matrix extended(s, current.cols() + 1);
    extended << current, Vector::Unit(s, a);
    const int extended_rank = numeric_rank(extended, rank_tol);
    if (extended_rank > rank) {
      kept.push_back(a);
      current = std::move(extended);
      rank = extended_rank;
    }
  }
  if (static_cast<int>(kept.size()) < want) {
    std::ostringstream msg;
    msg << "only " << kept.size()
        << " basis vectors are transverse to h + conj(h); target ell " << want
        << " unreachable";
    throw TargetUnreachable(msg.str());
  }

  BasisSelection selection;
  selection.ell = static_cast<int>(kept.size());
  selection.permutation = kept;
  std::vector<bool> used(s, false);
  for (int a : kept) used[a] = true;
  for (int a = 0; a < s; ++a)
    if (!used[a]) selection.permutation.push_back(a);
  return selection;
}

GroupCRStructure apply_selection(const GroupCRStructure& structure,
                                 const BasisSelection& selection) {
  const int s = structure.algebra.dim();
  GroupCRStructure permuted{permute_basis(structure.algebra, selection.permutation),
                            Matrix(s, structure.h_basis.cols()), structure.n, structure.k};
  for (int a = 0; a < s; ++a)
    permuted.h_basis.row(a) = structure.h_basis.row(selection.permutation[a]);
  return permuted;
}

namespace {

RealnessReport check_frame_realness(const Matrix& frame_vectors, double rank_tol) {
  RealnessReport report;
  const Eigen::Index cols = frame_vectors.cols();
  Eigen::MatrixXd real_parts(frame_vectors.rows(), cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Eigen::VectorXd real_part = frame_vectors.col(c).real();
    const double magnitude = frame_vectors.col(c).cwiseAbs().maxCoeff();
    if (real_part.cwiseAbs().maxCoeff() <= rank_tol * std::max(1.0, magnitude)) {
      report.witness_column = static_cast<int>(c);
      return report;  // purely imaginary frame vector
    }
    real_parts.col(c) = real_part;
  }
  report.real_part_rank = numeric_rank(real_parts.cast<Complex>(), rank_tol);
  if (report.real_part_rank < cols) return report;  // dependent real parts
  report.passed = true;
  return report;
}

}  // namespace

RealnessReport check_not_purely_imaginary(const GroupCRStructure& structure,
                                          const BasisSelection& selection, double rank_tol) {
  const int s = structure.algebra.dim();
  Matrix kept(s, selection.ell);
  for (int a = 0; a < selection.ell; ++a)
    kept.col(a) = Vector::Unit(s, selection.permutation[a]);
  return check_frame_realness(kept, rank_tol);
}

RealnessReport check_not_purely_imaginary(const Matrix& frame_vectors, double rank_tol) {
  return check_frame_realness(frame_vectors, rank_tol);
}

namespace {

CoordinatePoint padded_point(const CoordinatePoint& point, int ell, int s) {
  if (point.dim() == ell) {
    Vector t = Vector::Zero(s);
    t.head(ell) = point.t;
    return CoordinatePoint{std::move(t)};
  }
  if (point.dim() == s) {
    for (int d = ell; d < s; ++d)
      if (point.t[d] != Complex(0))
        throw IndexOutOfRange("frame point may only use the first ell coordinates");
    return point;
  }
  throw IndexOutOfRange("frame point must have ell (or zero-padded s) coordinates");
}

}  // namespace

ExtendedFramePoint build_extended_frame(const GroupCRStructure& structure,
                                        const BasisSelection& selection,
                                        const CoordinatePoint& point, double r_max) {
  const int s = structure.algebra.dim();
  const int ell = selection.ell;
  const GroupCRStructure permuted = apply_selection(structure, selection);
  const CoordinatePoint base = padded_point(point, ell, s);
  const Matrix lambda = lambda_at(permuted.algebra, base, r_max).values;

  ExtendedFramePoint frame;
  frame.base = base;
  frame.permutation = selection.permutation;
  frame.ell = ell;
  frame.vectors = Matrix::Zero(s + ell, ell);
  for (int a = 0; a < ell; ++a) {
    frame.vectors.col(a).head(s) = lambda.col(a);
    frame.vectors(s + a, a) = Complex(0, 1);
  }
  return frame;
}

ResidualTensor commutation_residual_with(const LieAlgebra& algebra,
                                         const CoefficientFn& coefficients,
                                         const CoordinatePoint& point, const FDSpec& fd,
                                         double r_max) {
  fd.validate();
  if (fd.mode != DerivativeMode::finite_difference)
    throw Error("injected-coefficient commutation residual supports finite differences only");
  if (!point.is_real()) throw Error("commutation verification requires real coordinates");
  if (point.max_abs() > r_max)
    throw ValidityRadiusExceeded("frame point outside the chart radius", point.max_abs(),
                                 r_max);

  const int s = algebra.dim();
  auto values = [&](const CoordinatePoint& p) { return coefficients(algebra, p).values; };
  const Matrix l = values(point);
  std::vector<Matrix> partial(s);
  for (int a = 0; a < s; ++a) partial[a] = partial_derivative(values, point, a, fd);

  const Complex i(0, 1);
  ResidualTensor residual(point, s);
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      const Vector bracket = algebra.bracket(l.col(a), l.col(b));
      for (int g = 0; g < s; ++g)
        residual.set(a, b, g, bracket[g] + i * (partial[a](g, b) - partial[b](g, a)));
    }
  }
  return residual;
}

ResidualTensor verify_commutation(const GroupCRStructure& structure,
                                  const BasisSelection& selection,
                                  const CoordinatePoint& point, const FDSpec& fd,
                                  double r_max) {
  const GroupCRStructure permuted = apply_selection(structure, selection);
  const CoordinatePoint base = padded_point(point, selection.ell, structure.algebra.dim());
  if (fd.mode == DerivativeMode::exact_polynomial) {
    using exact::GaussianRational;
    using exact::Rational;
    const auto residual = exact::exact_structure_residual(
        permuted.algebra, exact::exact_lambda(permuted.algebra),
        GaussianRational(Rational(0), Rational(1)), GaussianRational(1));
    return residual.evaluate(base);
  }
  auto lambda_fn = [r_max](const LieAlgebra& algebra, const CoordinatePoint& p) {
    return lambda_at(algebra, p, r_max);
  };
  return commutation_residual_with(permuted.algebra, lambda_fn, base, fd, r_max);
}

CRConditionResult verify_cr_condition(const GroupCRStructure& structure,
                                      const ExtendedFramePoint& frame, double rank_tol) {
  const int s = structure.algebra.dim();
  const int n = structure.n;
  const int ell = frame.ell;

  // h columns in the frame's (permuted) basis order, lifted by ell zeros.
  Matrix lifted = Matrix::Zero(s + ell, n);
  for (int a = 0; a < s; ++a)
    lifted.row(a) = structure.h_basis.row(frame.permutation[a]);

  Matrix stacked(s + ell, 2 * (n + ell));
  stacked << lifted, frame.vectors, lifted.conjugate(), frame.vectors.conjugate();

  CRConditionResult result;
  result.at = frame.base;
  result.expected = 2 * (n + ell);
  result.rank = numeric_rank(stacked, rank_tol);
  result.passed = result.rank == result.expected;
  return result;
}

EmbeddingCertificate corollary_pipeline(const GroupCRStructure& structure,
                                        const PipelineConfig& config) {
  EmbeddingCertificate certificate;
  certificate.n = structure.n;
  certificate.k = structure.k;

  certificate.validation = validate_cr_structure(structure, config.rank_tol);
  if (!certificate.validation.passed) {
    certificate.failed_stage = "validate";
    return certificate;
  }

  try {
    certificate.selection = select_transverse_basis(
        structure, config.target_ell.value_or(structure.k), config.rank_tol);
  } catch (const TargetUnreachable&) {
    certificate.failed_stage = "select_transverse_basis";
    return certificate;
  }
  certificate.ell = certificate.selection.ell;

  certificate.realness =
      check_not_purely_imaginary(structure, certificate.selection, config.rank_tol);
  if (!certificate.realness.passed) {
    certificate.failed_stage = "transversality";
    return certificate;
  }

  // Sampled commutation sweep over the ell active coordinates.
  std::mt19937 rng(config.seed);
  const double radius = config.sample_radius_factor * config.r_max;
  std::uniform_real_distribution<double> box(-radius, radius);
  std::vector<CoordinatePoint> samples;
  samples.reserve(config.sample_points);
  for (int p = 0; p < config.sample_points; ++p) {
    Vector t(certificate.ell);
    for (int d = 0; d < certificate.ell; ++d) t[d] = box(rng);
    samples.emplace_back(std::move(t));
  }

  certificate.commutation.fd = config.fd;
  certificate.commutation.grid =
      GridSpec{radius, 0, 0, config.sample_points, config.seed};
  for (const CoordinatePoint& point : samples) {
    const ResidualTensor residual =
        verify_commutation(structure, certificate.selection, point, config.fd, config.r_max);
    ++certificate.commutation.points_evaluated;
    if (const double worst = residual.max_abs(); worst >= certificate.commutation.max_residual) {
      certificate.commutation.max_residual = worst;
      certificate.commutation.witness_point = residual.at();
      certificate.commutation.witness_indices = residual.argmax();
    }
  }
  if (certificate.commutation.max_residual > config.commutation_tol) {
    certificate.failed_stage = "commutation";
    return certificate;
  }

  // CR condition at 0 and at the sampled points.
  const CoordinatePoint origin = CoordinatePoint::zero(certificate.ell);
  certificate.cr_at_zero = verify_cr_condition(
      structure, build_extended_frame(structure, certificate.selection, origin, config.r_max),
      config.rank_tol);
  certificate.cr_worst = certificate.cr_at_zero;
  certificate.cr_points_checked = 1;
  bool cr_ok = certificate.cr_at_zero.passed;
  for (const CoordinatePoint& point : samples) {
    const CRConditionResult result = verify_cr_condition(
        structure, build_extended_frame(structure, certificate.selection, point, config.r_max),
        config.rank_tol);
    ++certificate.cr_points_checked;
    if (result.rank < certificate.cr_worst.rank) certificate.cr_worst = result;
    cr_ok = cr_ok && result.passed;
  }
  if (!cr_ok) {
    certificate.failed_stage = "cr_condition";
    return certificate;
  }

  certificate.passed = true;
  return certificate;
}

}  // namespace crembed
