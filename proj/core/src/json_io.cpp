#include "crembed/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "crembed/errors.hpp"

namespace crembed {

namespace {

using nlohmann::json;

constexpr const char* kCatalogPrefix = "catalog:";

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_canonical(const json& j) { return j.dump(2); }

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(where) + ": complex values are [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Report points are real sweep coordinates; serialized as plain numbers.
json point_to_json(const CoordinatePoint& point) {
  json out = json::array();
  for (int d = 0; d < point.dim(); ++d) out.push_back(point.t[d].real());
  return out;
}

json indices_to_json(const std::array<int, 3>& indices) {
  if (indices[0] < 0) return nullptr;
  return json::array({indices[0] + 1, indices[1] + 1, indices[2] + 1});
}

json grid_to_json(const GridSpec& grid) {
  return {{"extent", grid.extent},
          {"max_grid_axes", grid.max_grid_axes},
          {"points_per_axis", grid.points_per_axis},
          {"random_samples", grid.random_samples},
          {"seed", grid.seed}};
}

json fd_to_json(const FDSpec& fd) {
  return {{"mode", fd.mode == DerivativeMode::exact_polynomial ? "exact_polynomial"
                                                               : "finite_difference"},
          {"richardson_levels", fd.richardson_levels},
          {"step", fd.step}};
}

json residual_report_to_json_value(const ResidualReport& report) {
  json witness = nullptr;
  if (report.witness_indices[0] >= 0)
    witness = {{"indices", indices_to_json(report.witness_indices)},
               {"point", point_to_json(report.witness_point)}};
  json out{{"max_residual", report.max_residual},
           {"witness", witness},
           {"grid", grid_to_json(report.grid)},
           {"fd", fd_to_json(report.fd)},
           {"points_evaluated", report.points_evaluated}};
  if (!report.diagnostic.empty()) out["diagnostic"] = report.diagnostic;
  return out;
}

json dependence_report_to_json_value(const DependenceReport& report) {
  return {{"passed", report.passed},
          {"samples", report.samples},
          {"max_deviation", report.max_deviation},
          {"column", report.column >= 0 ? json(report.column + 1) : json(nullptr)},
          {"base_point", point_to_json(report.base_point)},
          {"perturbed_point", point_to_json(report.perturbed_point)}};
}

json validation_report_to_json_value(const CRValidationReport& report) {
  json defect_columns = nullptr;
  if (report.defect_u >= 0)
    defect_columns = json::array({report.defect_u + 1, report.defect_v + 1});
  return {{"passed", report.passed},
          {"h_rank", report.h_rank},
          {"intersection_rank", report.intersection_rank},
          {"integrability_defect", report.integrability_defect},
          {"defect_columns", defect_columns},
          {"violation", report.violation.empty() ? json(nullptr) : json(report.violation)}};
}

json cr_condition_to_json_value(const CRConditionResult& result) {
  return {{"passed", result.passed},
          {"rank", result.rank},
          {"expected", result.expected},
          {"at", point_to_json(result.at)}};
}

json polynomial_to_json_value(const exact::Polynomial& p) {
  json terms = json::array();
  for (const auto& [exponents, coeff] : p.terms()) {
    json monomial = json::object();
    for (std::size_t v = 0; v < exponents.size(); ++v)
      if (exponents[v] > 0) monomial[std::to_string(v + 1)] = exponents[v];
    terms.push_back({{"coeff", json::array({exact::rational_to_string(coeff.re),
                                            exact::rational_to_string(coeff.im)})},
                     {"monomial", monomial}});
  }
  return terms;
}

json poly_matrix_to_json_value(const exact::PolyMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(polynomial_to_json_value(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"vars", m.nvars()}, {"entries", rows}};
}

}  // namespace

LieAlgebra algebra_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("algebra file must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("algebra requires an integer \"dim\"");
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw ParseError("algebra dimension must be positive");

  std::vector<BracketTerm> terms;
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw ParseError("\"brackets\" must be an array");
    for (const json& entry : j["brackets"]) {
      if (!entry.is_object() || !entry.contains("i") || !entry.contains("j")
          || !entry["i"].is_number_integer() || !entry["j"].is_number_integer())
        throw ParseError("each bracket needs integer \"i\" and \"j\"");
      const int i = entry["i"].get<int>();
      const int jj = entry["j"].get<int>();
      if (i < 1 || jj > dim || i >= jj)
        throw ParseError("bracket indices must satisfy 1 <= i < j <= dim");
      if (!entry.contains("coeffs") || !entry["coeffs"].is_object())
        throw ParseError("each bracket needs a \"coeffs\" object");
      for (const auto& [key, value] : entry["coeffs"].items()) {
        int gamma = 0;
        try {
          gamma = std::stoi(key);
        } catch (const std::exception&) {
          throw ParseError("coefficient key \"" + key + "\" is not an index");
        }
        if (gamma < 1 || gamma > dim)
          throw ParseError("coefficient index " + key + " out of range");
        terms.push_back({i - 1, jj - 1, gamma - 1, complex_from_json(value, "coeffs")});
      }
    }
  }

  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw ParseError("\"labels\" must be an array of strings");
    for (const json& label : j["labels"]) {
      if (!label.is_string()) throw ParseError("\"labels\" must be an array of strings");
      labels.push_back(label.get<std::string>());
    }
    if (static_cast<int>(labels.size()) != dim)
      throw ParseError("label count does not match \"dim\"");
  }

  return LieAlgebra(StructureConstants::from_brackets(dim, terms), std::move(labels));
}

std::string algebra_to_json(const LieAlgebra& algebra) {
  json brackets = json::array();
  json current;
  int current_i = -1, current_j = -1;
  for (const BracketTerm& term : algebra.constants().nonzero_brackets()) {
    if (term.i != current_i || term.j != current_j) {
      if (!current.is_null()) brackets.push_back(std::move(current));
      current = {{"i", term.i + 1}, {"j", term.j + 1}, {"coeffs", json::object()}};
      current_i = term.i;
      current_j = term.j;
    }
    current["coeffs"][std::to_string(term.gamma + 1)] = complex_to_json(term.c);
  }
  if (!current.is_null()) brackets.push_back(std::move(current));

  json out{{"dim", algebra.dim()}, {"brackets", std::move(brackets)}};
  if (!algebra.labels().empty()) out["labels"] = algebra.labels();
  return dump_canonical(out);
}

GroupCRStructure structure_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("algebra"))
    throw ParseError("structure file must be an object with an \"algebra\"");
  LieAlgebra algebra = algebra_from_json(j["algebra"].dump());

  if (!j.contains("n") || !j.contains("k") || !j["n"].is_number_integer()
      || !j["k"].is_number_integer())
    throw ParseError("structure requires integer \"n\" and \"k\"");
  const int n = j["n"].get<int>();
  const int k = j["k"].get<int>();
  const int s = algebra.dim();
  if (n < 1 || k < 0 || s != 2 * n + k)
    throw ParseError("algebra dimension must equal 2n+k with n >= 1, k >= 0");

  if (!j.contains("h_basis") || !j["h_basis"].is_array()
      || static_cast<int>(j["h_basis"].size()) != n)
    throw ParseError("\"h_basis\" must list n columns");
  Matrix h(s, n);
  for (int c = 0; c < n; ++c) {
    const json& column = j["h_basis"][c];
    if (!column.is_array() || static_cast<int>(column.size()) != s)
      throw ParseError("each h_basis column needs 2n+k complex entries");
    for (int r = 0; r < s; ++r) h(r, c) = complex_from_json(column[r], "h_basis");
  }
  return {std::move(algebra), std::move(h), n, k};
}

std::string structure_to_json(const GroupCRStructure& structure) {
  json columns = json::array();
  for (int c = 0; c < structure.h_basis.cols(); ++c) {
    json column = json::array();
    for (int r = 0; r < structure.h_basis.rows(); ++r)
      column.push_back(complex_to_json(structure.h_basis(r, c)));
    columns.push_back(std::move(column));
  }
  const json out{{"algebra", parse_json(algebra_to_json(structure.algebra))},
                 {"h_basis", std::move(columns)},
                 {"k", structure.k},
                 {"n", structure.n}};
  return dump_canonical(out);
}

std::string residual_report_to_json(const ResidualReport& report) {
  return dump_canonical(residual_report_to_json_value(report));
}

std::string dependence_report_to_json(const DependenceReport& report) {
  return dump_canonical(dependence_report_to_json_value(report));
}

std::string certificate_to_json(const EmbeddingCertificate& certificate) {
  json selection{{"ell", certificate.selection.ell}, {"permutation", json::array()}};
  for (int p : certificate.selection.permutation) selection["permutation"].push_back(p + 1);

  const json out{
      {"passed", certificate.passed},
      {"failed_stage",
       certificate.failed_stage.empty() ? json(nullptr) : json(certificate.failed_stage)},
      {"n", certificate.n},
      {"k", certificate.k},
      {"ell", certificate.ell},
      {"extension_type",
       json::array({certificate.n + certificate.ell, certificate.k - certificate.ell})},
      {"validation", validation_report_to_json_value(certificate.validation)},
      {"selection", std::move(selection)},
      {"realness",
       {{"passed", certificate.realness.passed},
        {"witness_column", certificate.realness.witness_column >= 0
                               ? json(certificate.realness.witness_column + 1)
                               : json(nullptr)},
        {"real_part_rank", certificate.realness.real_part_rank}}},
      {"commutation", residual_report_to_json_value(certificate.commutation)},
      {"cr_at_zero", cr_condition_to_json_value(certificate.cr_at_zero)},
      {"cr_worst", cr_condition_to_json_value(certificate.cr_worst)},
      {"cr_points_checked", certificate.cr_points_checked},
      {"unchecked_hypotheses", certificate.unchecked_hypotheses}};
  return dump_canonical(out);
}

std::string polynomial_to_json(const exact::Polynomial& p) {
  return dump_canonical(polynomial_to_json_value(p));
}

std::string poly_matrix_to_json(const exact::PolyMatrix& m) {
  return dump_canonical(poly_matrix_to_json_value(m));
}

std::string validate_summary_to_json(const ValidateSummary& summary) {
  json witness = nullptr;
  if (summary.witness[0] >= 0) {
    witness = json::array();
    for (int w : summary.witness)
      if (w >= 0) witness.push_back(w + 1);
  }
  const json out{{"valid", summary.valid},
                 {"dim", summary.dim},
                 {"class", summary.algebra_class.to_string()},
                 {"jacobi_residual", summary.jacobi_residual},
                 {"error", summary.error.empty() ? json(nullptr) : json(summary.error)},
                 {"witness", witness}};
  return dump_canonical(out);
}

std::string verify_summary_to_json(const VerifySummary& summary) {
  const json out{{"passed", summary.passed},
                 {"tol", summary.tol},
                 {"maurer_cartan", residual_report_to_json_value(summary.maurer_cartan)},
                 {"flatness", residual_report_to_json_value(summary.flatness)},
                 {"bracket_form", residual_report_to_json_value(summary.bracket_form)},
                 {"form_agreement", summary.form_agreement},
                 {"dependence", dependence_report_to_json_value(summary.dependence)}};
  return dump_canonical(out);
}

std::string oracle_summary_to_json(const OracleSummary& summary) {
  const json out{{"dim", summary.dim},
                 {"omega", poly_matrix_to_json_value(summary.omega)},
                 {"lambda", poly_matrix_to_json_value(summary.lambda)},
                 {"residual_identically_zero", summary.residual_identically_zero},
                 {"omega_max_degree", summary.omega_max_degree}};
  return dump_canonical(out);
}

std::string canonical_json(const std::string& text) {
  return dump_canonical(parse_json(text));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) throw ParseError("cannot read file: " + path);
  return buffer.str();
}

LieAlgebra load_algebra(const std::string& source) {
  if (source.rfind(kCatalogPrefix, 0) == 0) {
    const std::string name = source.substr(std::string(kCatalogPrefix).size());
    const CatalogEntry* entry = find_catalog_entry(name);
    if (!entry) throw ParseError("unknown catalog entry: " + name);
    return entry->algebra;
  }
  return algebra_from_json(read_text_file(source));
}

GroupCRStructure load_structure(const std::string& source) {
  if (source.rfind(kCatalogPrefix, 0) == 0) {
    const std::string name = source.substr(std::string(kCatalogPrefix).size());
    const CatalogEntry* entry = find_catalog_entry(name);
    if (!entry) throw ParseError("unknown catalog entry: " + name);
    if (!entry->structure)
      throw ParseError("catalog entry " + name + " carries no CR structure");
    return *entry->structure;
  }
  return structure_from_json(read_text_file(source));
}

}  // namespace crembed
