#pragma once

#include <array>
#include <string>

#include "crembed/catalog.hpp"
#include "crembed/continuation.hpp"
#include "crembed/cr_frame.hpp"
#include "crembed/exact/oracle.hpp"
#include "crembed/lie_algebra.hpp"

namespace crembed {

// Wire formats.  Indices are 1-based on the wire and 0-based in the API;
// complex numbers are [re, im] pairs; algebra files carry only the i < j
// bracket entries.  All serializers emit the same canonical layout
// (sorted keys, two-space indent), so parse-then-serialize is
// byte-identical on engine output.

/// { "dim": s, "brackets": [ { "i": a, "j": b, "coeffs": { "g": [re, im] } } ],
///   "labels": [...] }.  Throws ParseError on malformed input; algebra
/// validation errors (antisymmetry, Jacobi) propagate from the constructors.
LieAlgebra algebra_from_json(const std::string& text);
std::string algebra_to_json(const LieAlgebra& algebra);

/// { "algebra": <algebra>, "n": n, "k": k, "h_basis": [ <column>... ] }
/// where each column is a list of [re, im] pairs of length 2n+k.
GroupCRStructure structure_from_json(const std::string& text);
std::string structure_to_json(const GroupCRStructure& structure);

std::string residual_report_to_json(const ResidualReport& report);
std::string dependence_report_to_json(const DependenceReport& report);
std::string certificate_to_json(const EmbeddingCertificate& certificate);

/// Polynomial wire format: list of { "monomial": { "1": e1, ... },
/// "coeff": ["p/q", "r/s"] } in canonical term order (variables keyed
/// 1-based, zero exponents omitted).
std::string polynomial_to_json(const exact::Polynomial& p);
std::string poly_matrix_to_json(const exact::PolyMatrix& m);

/// Aggregated output of the `validate` command.
struct ValidateSummary {
  bool valid = false;
  int dim = 0;
  AlgebraClass algebra_class;
  double jacobi_residual = 0.0;
  std::string error;                        // empty when valid
  std::array<int, 4> witness{-1, -1, -1, -1};  // 0-based Jacobi witness when invalid
};
std::string validate_summary_to_json(const ValidateSummary& summary);

/// Aggregated output of the `verify` command: the three residual sweeps,
/// the worst pointwise disagreement between the two flatness forms, and
/// the dependence check.
struct VerifySummary {
  bool passed = false;
  double tol = 0.0;
  ResidualReport maurer_cartan;
  ResidualReport flatness;
  ResidualReport bracket_form;
  double form_agreement = 0.0;  // max |flatness - bracket form| over the sweep
  DependenceReport dependence;
};
std::string verify_summary_to_json(const VerifySummary& summary);

/// Aggregated output of the `oracle` command.
struct OracleSummary {
  int dim = 0;
  exact::PolyMatrix omega;
  exact::PolyMatrix lambda;
  bool residual_identically_zero = false;
  int omega_max_degree = 0;
};
std::string oracle_summary_to_json(const OracleSummary& summary);

/// Parse + re-serialize in the canonical layout (sorted keys, two-space
/// indent).  Engine output is already canonical, so this is the identity
/// on it — the round-trip property tests assert exactly that.
std::string canonical_json(const std::string& text);

/// Read a whole file; throws ParseError (with the path) on failure.
std::string read_text_file(const std::string& path);

/// Resolve "catalog:NAME" against the built-in catalog, anything else as
/// a file path.  load_structure requires the named entry to carry a CR
/// structure.
LieAlgebra load_algebra(const std::string& source);
GroupCRStructure load_structure(const std::string& source);

}  // namespace crembed
