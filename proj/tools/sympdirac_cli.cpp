#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sympdirac/errors.hpp"
#include "sympdirac/verifier.hpp"

using namespace sympdirac;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct CheckOptions {
  std::string config_path;
  std::string model;
  int n = 1;
  int level = 8;
  int modes = 2;
  std::uint64_t seed = 1;
  double tol_scale = 1.0;
  std::vector<std::string> only;
  std::string report;
  std::string format = "json";
  bool j_compatible = false;
  double h = -2.0;
  double amplitude = 0.2;
  int spectral_modes = 0;
  std::string spectra_csv;
  bool quiet = false;
};

void print_summary(const VerificationReport& report) {
  for (const CheckRecord& c : report.checks) {
    std::fprintf(stderr, "%-8s %-40s residual %-10.3e tol %s %.1e%s%s\n", status_label(c.status).c_str(), c.name.c_str(),
                 c.residual, c.comparison == Comparison::AtMost ? "<=" : ">=", c.tolerance, c.note.empty() ? "" : "  ",
                 c.note.c_str());
  }
  std::fprintf(stderr, "%s: %d pass, %d fail, %d skipped (%.2f s)\n", report.failed() ? "FAIL" : "PASS",
               report.count(CheckStatus::Pass), report.count(CheckStatus::Fail), report.count(CheckStatus::Skipped),
               report.timing.total_seconds);
}

int run_check(CLI::App& cmd, const CheckOptions& o) {
  SuiteConfig config = o.config_path.empty() ? SuiteConfig{} : load_suite_config(o.config_path);
  auto given = [&cmd](const char* name) { return cmd.count(name) > 0; };
  if (given("--model")) {
    try {
      config.model = parse_model_kind(o.model);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  if (given("--n")) config.n = o.n;
  if (given("--level")) config.level = o.level;
  if (given("--modes")) config.modes = o.modes;
  if (given("--seed")) config.seed = o.seed;
  if (given("--tol-scale")) config.tol_scale = o.tol_scale;
  if (given("--only")) config.only = o.only;
  if (given("--report")) config.report = o.report;
  if (given("--format")) config.format = o.format;
  if (given("--j-compatible")) config.j_compatible = o.j_compatible;
  if (given("--chsc-h")) config.h = o.h;
  if (given("--amplitude")) config.amplitude = o.amplitude;
  if (given("--spectral-modes")) config.spectral_modes = o.spectral_modes;
  if (given("--spectra-csv")) config.spectra_csv = o.spectra_csv;
  validate_suite_config(config);

  const VerificationReport report = run_suite(config);
  emit_report(report, parse_report_format(config.format), config.report);
  if (!config.spectra_csv.empty()) emit_report(report, ReportFormat::CsvSpectra, config.spectra_csv);
  if (!o.quiet) print_summary(report);
  return report.failed() ? kExitFail : 0;
}

void list_checks() {
  for (const CheckDefinition& d : check_catalog()) {
    std::cout << d.suite << '\t' << d.name << '\t' << d.anchor << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifier for symplectic Dirac operators on transversely symplectic foliations"};
  app.require_subcommand(1);

  CheckOptions o;
  CLI::App* check = app.add_subcommand("check", "Run the check registry on a model and write a report");
  check->add_option("--config", o.config_path, "Key-value config file; command-line options override it");
  check->add_option("--model", o.model,
                    "FlatKahlerTorus, HeisenbergFlow, WarpedNonTaut, SymmetricPerturbedFedosov, "
                    "TorsionPerturbedSymplectic or ChscFiber");
  check->add_option("--n", o.n, "Half the codimension");
  check->add_option("--level", o.level, "Fiber truncation level L");
  check->add_option("--modes", o.modes, "Fourier cutoff K");
  check->add_option("--seed", o.seed, "Seed of the random test data");
  check->add_option("--tol-scale", o.tol_scale, "Multiplier applied to every tolerance");
  check->add_option("--only", o.only, "Comma separated check names")->delimiter(',');
  check->add_option("--report", o.report, "Output path; stdout when omitted");
  check->add_option("--format", o.format, "json, markdown or csv-spectra");
  check->add_flag("--j-compatible", o.j_compatible, "Replace the connection by its J-compatible modification");
  check->add_option("--chsc-h", o.h, "Holomorphic sectional curvature of ChscFiber");
  check->add_option("--amplitude", o.amplitude, "Perturbation amplitude of the catalog models");
  check->add_option("--spectral-modes", o.spectral_modes, "Fourier cutoff of the Galerkin spaces");
  check->add_option("--spectra-csv", o.spectra_csv, "Also write the computed spectra as CSV");
  check->add_flag("--quiet", o.quiet, "No summary on stderr");

  app.add_subcommand("list", "List registered checks")->callback(list_checks);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (!check->parsed()) return 0;
  try {
    return run_check(*check, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
