#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crembed/continuation.hpp"
#include "crembed/linalg.hpp"

namespace crembed {

/// Left-invariant CR structure of type (n, k) on a group with Lie algebra
/// of dimension s = 2n + k: the fiber h of the antiholomorphic
/// distribution, given as n complex columns in the xi-basis.
struct GroupCRStructure {
  LieAlgebra algebra;
  Matrix h_basis;  // s x n
  int n = 0;
  int k = 0;

  int dim() const { return algebra.dim(); }
};

/// Outcome of the three structural checks on a GroupCRStructure.
struct CRValidationReport {
  bool passed = false;
  int h_rank = 0;             // column rank of h_basis (want n)
  int intersection_rank = 0;  // rank of [h | conj h] (want 2n; less means h meets conj h)
  double integrability_defect = 0.0;  // worst distance of a bracket to span(h)
  int defect_u = -1, defect_v = -1;   // 0-based columns attaining the defect
  std::string violation;              // empty, or the name of the failed invariant

  std::string summary() const;
};

/// Result of the transverse-basis selection: a basis permutation placing
/// the kept vectors first, and the count ell of kept vectors.  After
/// permutation, h + conj(h) + span{xi_1..xi_ell} is a direct sum of
/// dimension 2n+ell, so the kept vectors are transverse to the underlying
/// real distribution.
struct BasisSelection {
  std::vector<int> permutation;  // 0-based; new position a holds old basis vector permutation[a]
  int ell = 0;
};

/// Outcome of the transversality check on the kept frame vectors: none may
/// be purely imaginary, and their real parts must be independent.
struct RealnessReport {
  bool passed = false;
  int witness_column = -1;  // kept vector violating the check, if any
  int real_part_rank = 0;   // rank of the kept vectors' real parts (want ell)
};

/// Extended frame at one chart point: column a of `vectors` is
/// lambda_a^. (t) in the permuted basis, extended by i e_a in the ell new
/// slots.  At t = 0 column a is xi_{perm(a)} + i e_a.
struct ExtendedFramePoint {
  CoordinatePoint base;          // coordinates in the permuted chart, zero-padded to s
  std::vector<int> permutation;  // basis order the coefficients are expressed in
  int ell = 0;
  Matrix vectors;  // (s + ell) x ell
};

/// Rank certificate for the extension's CR condition at one point.
struct CRConditionResult {
  bool passed = false;
  int rank = 0;
  int expected = 0;  // 2(n + ell)
  CoordinatePoint at;
};

/// Knobs for the full certificate pipeline.
struct PipelineConfig {
  std::optional<int> target_ell;  // default: k (embed into a complex structure)
  int sample_points = 50;
  double sample_radius_factor = 0.3;  // samples live in |t| <= factor * r_max
  double r_max = 1.0;
  FDSpec fd;
  double commutation_tol = 1e-8;
  double rank_tol = kRankTol;
  unsigned seed = 20240901;
};

/// Everything the pipeline established, stage by stage.  `failed_stage`
/// is empty on success; on failure the later stage slots are left
/// default-initialized.
struct EmbeddingCertificate {
  bool passed = false;
  std::string failed_stage;
  int n = 0, k = 0, ell = 0;  // extension has type (n + ell, k - ell)

  CRValidationReport validation;
  BasisSelection selection;
  RealnessReport realness;
  ResidualReport commutation;
  CRConditionResult cr_at_zero;
  CRConditionResult cr_worst;  // lowest-rank sampled point
  int cr_points_checked = 0;

  // The commutation hypothesis between the ambient frame and the CR
  // sections holds automatically for group-invariant data; for general
  // frames it is not derivable from this input and stays unchecked.
  std::string unchecked_hypotheses = "normalising condition (automatic for invariant frames)";
};

/// Checks the three invariants (h rank n, trivial intersection with the
/// conjugate, bracket closure) and reports ranks plus the worst
/// integrability defect.  Never throws; see require_valid.
CRValidationReport validate_cr_structure(const GroupCRStructure& structure,
                                         double rank_tol = kRankTol);

/// Same checks, raising RankDeficient / IntersectsConjugate /
/// NotIntegrable on the first violated invariant.
void require_valid(const GroupCRStructure& structure, double rank_tol = kRankTol);

/// Greedy pivoted scan of xi_1..xi_s keeping every vector that enlarges
/// dim(h + conj(h) + span{kept}); stops at target_ell when given.  Throws
/// TargetUnreachable when target_ell kept vectors cannot be found.
BasisSelection select_transverse_basis(const GroupCRStructure& structure,
                                       std::optional<int> target_ell = std::nullopt,
                                       double rank_tol = kRankTol);

/// The structure expressed in the permuted basis (kept vectors first):
/// permuted structure constants and correspondingly permuted h rows.
GroupCRStructure apply_selection(const GroupCRStructure& structure,
                                 const BasisSelection& selection);

/// No kept vector may be purely imaginary, and the kept real parts must be
/// linearly independent (the frame directions must be genuinely
/// transverse).  Real basis vectors pass automatically; the check exists
/// because frame columns may be complex combinations in general.
RealnessReport check_not_purely_imaginary(const GroupCRStructure& structure,
                                          const BasisSelection& selection,
                                          double rank_tol = kRankTol);

/// The same check on explicit frame columns in g_C (the general-input
/// form the selection-based overload reduces to).
RealnessReport check_not_purely_imaginary(const Matrix& frame_vectors,
                                          double rank_tol = kRankTol);

/// Assemble the ell extended frame vectors at `point` (coordinates in the
/// permuted chart; entries beyond ell must be zero).
ExtendedFramePoint build_extended_frame(const GroupCRStructure& structure,
                                        const BasisSelection& selection,
                                        const CoordinatePoint& point, double r_max = 1.0);

/// Coefficient source for the commutation residual: anything producing a
/// CoefficientMatrix at a point.  The default is lambda_at; tests inject
/// corrupted coefficients to prove the residual detects them.
using CoefficientFn =
    std::function<CoefficientMatrix(const LieAlgebra&, const CoordinatePoint&)>;

/// Commutation residual of the extended frame,
///   C_{ab}^g = sum_{mn} l_a^m l_b^n c_{mn}^g + i (d_a l_b^g - d_b l_a^g),
/// the xi_g coefficient of [Y_a, Y_b].  Identically i times the flatness
/// residual, hence zero when the coefficients solve the flatness system.
ResidualTensor commutation_residual_with(const LieAlgebra& algebra,
                                         const CoefficientFn& coefficients,
                                         const CoordinatePoint& point, const FDSpec& fd,
                                         double r_max = 1.0);

/// The commutation residual with the genuine continued coefficients, on
/// the permuted algebra.
ResidualTensor verify_commutation(const GroupCRStructure& structure,
                                  const BasisSelection& selection,
                                  const CoordinatePoint& point, const FDSpec& fd,
                                  double r_max = 1.0);

/// CR condition for the extension: stacks lifted h columns, frame vectors,
/// and both conjugates into an (s + ell) x 2(n + ell) matrix; the
/// extension is a CR structure of type (n + ell, k - ell) iff the rank is
/// the full 2(n + ell) (trivial intersection with the conjugate).
CRConditionResult verify_cr_condition(const GroupCRStructure& structure,
                                      const ExtendedFramePoint& frame,
                                      double rank_tol = kRankTol);

/// Full pipeline: validate, select (target ell = k by default), check
/// transversality, sweep the commutation residual and the CR condition
/// over sampled points.  A passing certificate asserts the extension is a
/// complex structure (type (n + k, 0)) on the sampled neighbourhood.
EmbeddingCertificate corollary_pipeline(const GroupCRStructure& structure,
                                        const PipelineConfig& config = {});

}  // namespace crembed
