// crembed: command-line front end for the verification engine.
//
// Commands
//   validate INPUT   algebra well-formedness + classification
//   verify   INPUT   structure-equation / flatness / dependence sweeps
//   embed    INPUT   CR extension certificate (full pipeline)
//   oracle   INPUT   exact polynomial coefficients + residual certification
//   selftest         run every catalog entry through its own pipelines
//   catalog list     show the built-in fixtures
//
// INPUT is either a file path or "catalog:NAME".  Exit codes: 0 pass,
// 1 verification failure, 2 input error, 3 domain error (not nilpotent).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crembed/catalog.hpp"
#include "crembed/continuation.hpp"
#include "crembed/cr_frame.hpp"
#include "crembed/errors.hpp"
#include "crembed/exact/oracle.hpp"
#include "crembed/json_io.hpp"
#include "crembed/lie_algebra.hpp"
#include "crembed/maurer_cartan.hpp"

namespace {

using nlohmann::json;
using namespace crembed;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

/// Effective run configuration after merging defaults, the optional config
/// file, and command-line flags (flags win).
struct RunConfig {
  double tol = 1e-8;        // residual tolerance for verify/embed
  double step = 1e-4;       // finite-difference step
  int richardson = 1;       // Richardson extrapolation levels
  int grid = 5;             // tensor-grid points per axis
  int max_grid_axes = 4;    // largest dimension still swept as a tensor grid
  int random_samples = 200; // random points beyond that
  double extent = 0.5;      // half-width of the sampling box
  double rmax = 1.0;        // chart validity radius
  unsigned seed = 20240901; // RNG seed for all random sampling
  int samples = 50;         // dependence trials / embed sample points
  double rank_tol = 1e-10;  // SVD rank threshold
  std::optional<int> target_l;  // embed: requested number of frame vectors
  bool exact = false;           // exact-polynomial derivatives (nilpotent only)

  FDSpec fd() const {
    FDSpec spec;
    spec.step = step;
    spec.richardson_levels = richardson;
    spec.mode = exact ? DerivativeMode::exact_polynomial : DerivativeMode::finite_difference;
    return spec;
  }
  GridSpec grid_spec() const {
    return {extent, grid, max_grid_axes, random_samples, seed};
  }
};

json config_to_json(const RunConfig& cfg) {
  return {{"exact", cfg.exact},
          {"extent", cfg.extent},
          {"grid", cfg.grid},
          {"max_grid_axes", cfg.max_grid_axes},
          {"random_samples", cfg.random_samples},
          {"rank_tol", cfg.rank_tol},
          {"richardson", cfg.richardson},
          {"rmax", cfg.rmax},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"step", cfg.step},
          {"target_l", cfg.target_l ? json(*cfg.target_l) : json(nullptr)},
          {"tol", cfg.tol}};
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  json parsed;
  try {
    parsed = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ParseError("config file " + path + ": " + e.what());
  }
  if (!parsed.is_object()) throw ParseError("config file must hold a JSON object");

  auto number = [&](const json& v, const char* key) -> double {
    if (!v.is_number()) throw ParseError(std::string("config key ") + key + " must be a number");
    return v.get<double>();
  };
  auto integer = [&](const json& v, const char* key) -> long {
    if (!v.is_number_integer())
      throw ParseError(std::string("config key ") + key + " must be an integer");
    return v.get<long>();
  };

  for (const auto& [key, value] : parsed.items()) {
    if (key == "tol") cfg.tol = number(value, "tol");
    else if (key == "step") cfg.step = number(value, "step");
    else if (key == "richardson") cfg.richardson = static_cast<int>(integer(value, "richardson"));
    else if (key == "grid") cfg.grid = static_cast<int>(integer(value, "grid"));
    else if (key == "max_grid_axes")
      cfg.max_grid_axes = static_cast<int>(integer(value, "max_grid_axes"));
    else if (key == "random_samples")
      cfg.random_samples = static_cast<int>(integer(value, "random_samples"));
    else if (key == "extent") cfg.extent = number(value, "extent");
    else if (key == "rmax") cfg.rmax = number(value, "rmax");
    else if (key == "seed") cfg.seed = static_cast<unsigned>(integer(value, "seed"));
    else if (key == "samples") cfg.samples = static_cast<int>(integer(value, "samples"));
    else if (key == "rank_tol") cfg.rank_tol = number(value, "rank_tol");
    else if (key == "target_l") cfg.target_l = static_cast<int>(integer(value, "target_l"));
    else if (key == "exact") {
      if (!value.is_boolean()) throw ParseError("config key exact must be a boolean");
      cfg.exact = value.get<bool>();
    } else {
      throw ParseError("unknown config key: " + key);
    }
  }
}

// ---------------------------------------------------------------- formatting

std::string sci(double x) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(3) << x;
  return out.str();
}

std::string point_str(const CoordinatePoint& point) {
  std::ostringstream out;
  out << "(";
  for (int d = 0; d < point.dim(); ++d) {
    if (d) out << ", ";
    out << std::setprecision(6) << point.t[d].real();
  }
  out << ")";
  return out.str();
}

std::string indices_str(const std::array<int, 3>& idx) {
  if (idx[0] < 0) return "(none)";
  std::ostringstream out;
  out << "(" << idx[0] + 1 << "," << idx[1] + 1 << "," << idx[2] + 1 << ")";
  return out.str();
}

void print_report_line(const char* label, const ResidualReport& report) {
  std::cout << "  " << std::left << std::setw(14) << label << " max residual "
            << sci(report.max_residual) << " at t=" << point_str(report.witness_point)
            << " indices " << indices_str(report.witness_indices) << "  ["
            << report.points_evaluated << " points]\n";
  if (!report.diagnostic.empty()) std::cout << "    note: " << report.diagnostic << "\n";
}

void print_poly_matrix(const char* name, const exact::PolyMatrix& m) {
  for (int g = 0; g < m.rows(); ++g)
    for (int a = 0; a < m.cols(); ++a)
      if (!m(g, a).is_zero())
        std::cout << "  " << name << "(" << g + 1 << "," << a + 1
                  << ") = " << m(g, a).to_string() << "\n";
}

// ------------------------------------------------------------------ commands

int cmd_validate(const std::string& input, bool json_out) {
  ValidateSummary summary;
  try {
    const LieAlgebra algebra = load_algebra(input);
    summary.valid = true;
    summary.dim = algebra.dim();
    summary.algebra_class = classify(algebra);
    summary.jacobi_residual = algebra.jacobi_residual();
  } catch (const JacobiViolation& e) {
    summary.error = e.what();
    summary.jacobi_residual = e.max_residual;
    summary.witness = {e.alpha, e.beta, e.gamma, e.nu};
  } catch (const AntisymmetryViolation& e) {
    summary.error = e.what();
    summary.witness = {e.alpha, e.beta, e.gamma, -1};
  }

  if (json_out) {
    std::cout << validate_summary_to_json(summary) << "\n";
  } else if (summary.valid) {
    std::cout << "input: " << input << "\n"
              << "dim: " << summary.dim << "\n"
              << "class: " << summary.algebra_class.to_string() << "\n"
              << "jacobi residual: " << sci(summary.jacobi_residual) << "\n"
              << "result: valid\n";
  } else {
    std::cout << "input: " << input << "\n"
              << "result: INVALID\n"
              << "error: " << summary.error << "\n";
    if (summary.witness[0] >= 0) {
      std::cout << "witness indices:";
      for (int w : summary.witness)
        if (w >= 0) std::cout << " " << w + 1;
      std::cout << "\n";
    }
  }
  return summary.valid ? kExitPass : kExitFail;
}

VerifySummary run_verify(const LieAlgebra& algebra, const RunConfig& cfg) {
  const GridSpec grid = cfg.grid_spec();
  const FDSpec fd = cfg.fd();

  VerifySummary summary;
  summary.tol = cfg.tol;
  summary.maurer_cartan = verify_maurer_cartan(algebra, grid, fd, cfg.rmax);
  summary.flatness = verify_flatness(algebra, grid, fd, cfg.rmax);
  summary.bracket_form = verify_bracket_form(algebra, grid, fd, cfg.rmax);
  summary.form_agreement = form_agreement(algebra, grid, fd, cfg.rmax);
  summary.dependence =
      check_triangular_dependence(algebra, cfg.samples, 1e-12, cfg.seed, cfg.rmax);
  summary.passed = summary.maurer_cartan.passes(cfg.tol) && summary.flatness.passes(cfg.tol)
                   && summary.bracket_form.passes(cfg.tol)
                   && summary.form_agreement <= cfg.tol && summary.dependence.passed;
  return summary;
}

int cmd_verify(const std::string& input, const RunConfig& cfg, bool json_out) {
  const LieAlgebra algebra = load_algebra(input);
  const VerifySummary summary = run_verify(algebra, cfg);

  if (json_out) {
    std::cout << verify_summary_to_json(summary) << "\n";
  } else {
    std::cout << "input: " << input << " (dim " << algebra.dim() << ")\n";
    print_report_line("maurer-cartan", summary.maurer_cartan);
    print_report_line("flatness", summary.flatness);
    print_report_line("bracket form", summary.bracket_form);
    std::cout << "  form agreement max |R - B| = " << sci(summary.form_agreement) << "\n"
              << "  dependence     " << summary.dependence.summary() << "\n"
              << (summary.passed ? "PASS" : "FAIL") << " (tol " << sci(summary.tol) << ")\n";
  }
  return summary.passed ? kExitPass : kExitFail;
}

int cmd_embed(const std::string& input, const RunConfig& cfg, bool json_out) {
  const GroupCRStructure structure = load_structure(input);

  PipelineConfig pipeline;
  pipeline.target_ell = cfg.target_l;
  pipeline.sample_points = cfg.samples;
  pipeline.r_max = cfg.rmax;
  pipeline.fd = cfg.fd();
  pipeline.commutation_tol = cfg.tol;
  pipeline.rank_tol = cfg.rank_tol;
  pipeline.seed = cfg.seed;

  const EmbeddingCertificate cert = corollary_pipeline(structure, pipeline);

  if (json_out) {
    std::cout << certificate_to_json(cert) << "\n";
  } else {
    std::cout << "input: " << input << " (type (" << cert.n << "," << cert.k << "), dim "
              << structure.dim() << ")\n"
              << "  validate       " << cert.validation.summary() << "\n";
    if (cert.failed_stage.empty() || cert.failed_stage != "validate") {
      std::cout << "  selection      ell = " << cert.ell << ", permutation (";
      for (std::size_t i = 0; i < cert.selection.permutation.size(); ++i)
        std::cout << (i ? "," : "") << cert.selection.permutation[i] + 1;
      std::cout << ")\n"
                << "  transversality " << (cert.realness.passed ? "ok" : "FAIL")
                << " (real-part rank " << cert.realness.real_part_rank << ")\n";
      print_report_line("commutation", cert.commutation);
      std::cout << "  cr condition   rank " << cert.cr_at_zero.rank << " (expected "
                << cert.cr_at_zero.expected << ") at t=0; worst sampled rank "
                << cert.cr_worst.rank << " over " << cert.cr_points_checked << " points\n";
    }
    if (cert.passed) {
      std::cout << "extension type: (" << cert.n + cert.ell << "," << cert.k - cert.ell
                << ")\nPASS\n";
    } else {
      std::cout << "FAIL at stage: " << cert.failed_stage << "\n";
    }
    std::cout << "unchecked: " << cert.unchecked_hypotheses << "\n";
  }
  return cert.passed ? kExitPass : kExitFail;
}

int cmd_oracle(const std::string& input, bool json_out) {
  const LieAlgebra algebra = load_algebra(input);

  OracleSummary summary;
  summary.dim = algebra.dim();
  summary.omega = exact::exact_omega(algebra);  // NotNilpotent propagates (exit 3)
  summary.lambda = exact::exact_lambda(algebra);
  const exact::ExactResidualTensor residual = exact::exact_flatness_residual(algebra);
  summary.residual_identically_zero = residual.identically_zero();
  summary.omega_max_degree = summary.omega.max_total_degree();

  if (json_out) {
    std::cout << oracle_summary_to_json(summary) << "\n";
  } else {
    std::cout << "input: " << input << " (dim " << summary.dim << ")\n"
              << "omega (nonzero entries):\n";
    print_poly_matrix("omega", summary.omega);
    std::cout << "lambda (nonzero entries):\n";
    print_poly_matrix("lambda", summary.lambda);
    std::cout << "omega max degree: " << summary.omega_max_degree << "\n"
              << "flatness residual identically zero: "
              << (summary.residual_identically_zero ? "yes" : "NO") << "\n";
  }
  return summary.residual_identically_zero ? kExitPass : kExitFail;
}

int cmd_catalog_list(bool json_out) {
  if (json_out) {
    json entries = json::array();
    for (const CatalogEntry& entry : catalog()) {
      json row{{"name", entry.name},
               {"dim", entry.algebra.dim()},
               {"class", classify(entry.algebra).to_string()},
               {"notes", entry.notes},
               {"structure", nullptr}};
      if (entry.structure)
        row["structure"] = {{"n", entry.structure->n}, {"k", entry.structure->k}};
      entries.push_back(std::move(row));
    }
    std::cout << entries.dump(2) << "\n";
  } else {
    for (const CatalogEntry& entry : catalog()) {
      std::ostringstream type;
      if (entry.structure)
        type << "CR type (" << entry.structure->n << "," << entry.structure->k << ")";
      std::cout << "  " << std::left << std::setw(16) << entry.name << " dim "
                << entry.algebra.dim() << "  " << std::setw(18)
                << classify(entry.algebra).to_string() << " " << std::setw(16) << type.str()
                << " " << entry.notes << "\n";
    }
  }
  return kExitPass;
}

int cmd_selftest(const RunConfig& cfg, bool json_out) {
  struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
  };
  std::vector<Check> checks;

  for (const CatalogEntry& entry : catalog()) {
    const AlgebraClass cls = classify(entry.algebra);
    checks.push_back({"validate:" + entry.name, true, cls.to_string()});

    const VerifySummary verify = run_verify(entry.algebra, cfg);
    const double worst = std::max({verify.maurer_cartan.max_residual,
                                   verify.flatness.max_residual,
                                   verify.bracket_form.max_residual});
    checks.push_back({"verify:" + entry.name, verify.passed, "max residual " + sci(worst)});

    if (cls.kind == AlgebraClass::Kind::abelian || cls.kind == AlgebraClass::Kind::nilpotent) {
      const bool zero = exact::exact_flatness_residual(entry.algebra).identically_zero();
      checks.push_back(
          {"oracle:" + entry.name, zero, zero ? "identically zero" : "nonzero residual"});
    }

    if (entry.structure) {
      PipelineConfig pipeline;
      pipeline.sample_points = cfg.samples;
      pipeline.r_max = cfg.rmax;
      pipeline.fd = cfg.fd();
      pipeline.commutation_tol = cfg.tol;
      pipeline.rank_tol = cfg.rank_tol;
      pipeline.seed = cfg.seed;
      const EmbeddingCertificate cert = corollary_pipeline(*entry.structure, pipeline);
      std::ostringstream detail;
      if (cert.passed)
        detail << "type (" << cert.n + cert.ell << "," << cert.k - cert.ell << ")";
      else
        detail << "failed at " << cert.failed_stage;
      checks.push_back({"embed:" + entry.name, cert.passed, detail.str()});
    }
  }

  bool all_passed = true;
  for (const Check& check : checks) all_passed = all_passed && check.passed;

  if (json_out) {
    json rows = json::array();
    for (const Check& check : checks)
      rows.push_back({{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
    std::cout << json{{"passed", all_passed}, {"checks", std::move(rows)}}.dump(2) << "\n";
  } else {
    for (const Check& check : checks)
      std::cout << "  " << (check.passed ? "ok   " : "FAIL ") << std::left << std::setw(24)
                << check.name << " " << check.detail << "\n";
    std::cout << (all_passed ? "selftest: all checks passed" : "selftest: FAILURES") << " ("
              << checks.size() << " checks)\n";
  }
  return all_passed ? kExitPass : kExitFail;
}

// --------------------------------------------------------------- error guard

int run_guarded(bool json_out, const std::function<int()>& body) {
  auto emit = [&](const std::string& message, int code) {
    if (json_out)
      std::cout << json{{"error", message}, {"exit", code}}.dump(2) << "\n";
    std::cerr << "error: " << message << "\n";
    return code;
  };
  try {
    return body();
  } catch (const NotNilpotent& e) {
    return emit(e.what(), kExitDomain);
  } catch (const ParseError& e) {
    return emit(e.what(), kExitInput);
  } catch (const StepTooSmall& e) {
    return emit(e.what(), kExitInput);
  } catch (const StepTooLarge& e) {
    return emit(e.what(), kExitInput);
  } catch (const ValidityRadiusExceeded& e) {
    return emit(e.what(), kExitInput);
  } catch (const IndexOutOfRange& e) {
    return emit(e.what(), kExitInput);
  } catch (const Error& e) {
    return emit(e.what(), kExitFail);
  } catch (const std::exception& e) {
    return emit(std::string("internal error: ") + e.what(), kExitFail);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatness and CR-embedding verification for left-invariant structures"};
  app.set_version_flag("--version", "crembed 0.1.0");

  bool json_out = false;
  bool show_config = false;
  std::string config_path;
  RunConfig flags;  // holders; applied only where the option was counted
  int target_l_value = 0;

  app.add_flag("--json", json_out, "emit canonical JSON reports on stdout");
  app.add_flag("--show-config", show_config, "print the effective configuration and exit");
  auto* opt_config =
      app.add_option("--config", config_path, "JSON config file (flags take precedence)");
  auto* opt_tol = app.add_option("--tol", flags.tol, "residual tolerance (default 1e-8)")
                      ->check(CLI::PositiveNumber);
  auto* opt_step = app.add_option("--step", flags.step, "finite-difference step (default 1e-4)")
                       ->check(CLI::PositiveNumber);
  auto* opt_richardson =
      app.add_option("--richardson", flags.richardson, "Richardson levels 0..8 (default 1)")
          ->check(CLI::Range(0, 8));
  auto* opt_grid =
      app.add_option("--grid", flags.grid, "tensor-grid points per axis (default 5)")
          ->check(CLI::PositiveNumber);
  auto* opt_max_axes = app.add_option("--max-grid-axes", flags.max_grid_axes,
                                      "largest dim swept as a tensor grid (default 4)")
                           ->check(CLI::NonNegativeNumber);
  auto* opt_random = app.add_option("--random-samples", flags.random_samples,
                                    "random points beyond the grid limit (default 200)")
                         ->check(CLI::PositiveNumber);
  auto* opt_extent =
      app.add_option("--extent", flags.extent, "half-width of the sampling box (default 0.5)")
          ->check(CLI::PositiveNumber);
  auto* opt_rmax = app.add_option("--rmax", flags.rmax, "chart validity radius (default 1.0)")
                       ->check(CLI::PositiveNumber);
  auto* opt_seed = app.add_option("--seed", flags.seed, "seed for random sampling");
  auto* opt_samples =
      app.add_option("--samples", flags.samples,
                     "dependence trials / embed sample points (default 50)")
          ->check(CLI::PositiveNumber);
  auto* opt_rank_tol =
      app.add_option("--rank-tol", flags.rank_tol, "SVD rank threshold (default 1e-10)")
          ->check(CLI::PositiveNumber);
  auto* opt_target = app.add_option("--target-l", target_l_value,
                                    "embed: number of transverse frame vectors (default k)")
                         ->check(CLI::PositiveNumber);
  auto* opt_exact = app.add_flag("--exact", flags.exact,
                                 "exact polynomial derivatives (nilpotent algebras only)");

  std::string input;
  auto add_command = [&](const std::string& name, const std::string& description,
                         bool takes_input) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->fallthrough();
    if (takes_input)
      sub->add_option("input", input, "file path or catalog:NAME")->required();
    return sub;
  };

  CLI::App* sub_validate =
      add_command("validate", "check algebra well-formedness and classify it", true);
  CLI::App* sub_verify =
      add_command("verify", "sweep structure-equation and flatness residuals", true);
  CLI::App* sub_embed = add_command("embed", "build a CR extension certificate", true);
  CLI::App* sub_oracle =
      add_command("oracle", "exact coefficients and residual certification", true);
  CLI::App* sub_selftest =
      add_command("selftest", "run every catalog entry through its pipelines", false);
  CLI::App* sub_catalog = add_command("catalog", "built-in fixture inventory", false);
  CLI::App* sub_catalog_list = sub_catalog->add_subcommand("list", "list catalog entries");
  sub_catalog->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  return run_guarded(json_out, [&]() -> int {
    RunConfig cfg;
    if (opt_config->count()) apply_config_file(cfg, config_path);
    if (opt_tol->count()) cfg.tol = flags.tol;
    if (opt_step->count()) cfg.step = flags.step;
    if (opt_richardson->count()) cfg.richardson = flags.richardson;
    if (opt_grid->count()) cfg.grid = flags.grid;
    if (opt_max_axes->count()) cfg.max_grid_axes = flags.max_grid_axes;
    if (opt_random->count()) cfg.random_samples = flags.random_samples;
    if (opt_extent->count()) cfg.extent = flags.extent;
    if (opt_rmax->count()) cfg.rmax = flags.rmax;
    if (opt_seed->count()) cfg.seed = flags.seed;
    if (opt_samples->count()) cfg.samples = flags.samples;
    if (opt_rank_tol->count()) cfg.rank_tol = flags.rank_tol;
    if (opt_target->count()) cfg.target_l = target_l_value;
    if (opt_exact->count()) cfg.exact = flags.exact;

    if (show_config) {
      std::cout << config_to_json(cfg).dump(2) << "\n";
      return kExitPass;
    }
    if (*sub_validate) return cmd_validate(input, json_out);
    if (*sub_verify) return cmd_verify(input, cfg, json_out);
    if (*sub_embed) return cmd_embed(input, cfg, json_out);
    if (*sub_oracle) return cmd_oracle(input, json_out);
    if (*sub_selftest) return cmd_selftest(cfg, json_out);
    if (*sub_catalog && *sub_catalog_list) return cmd_catalog_list(json_out);

    std::cerr << app.help();
    return kExitInput;
  });
}
