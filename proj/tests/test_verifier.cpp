#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "sympdirac/errors.hpp"
#include "sympdirac/verifier.hpp"

using namespace sympdirac;

namespace {

SuiteConfig flat_config() {
  SuiteConfig config;
  config.model = ModelKind::FlatKahlerTorus;
  config.n = 1;
  config.level = 6;
  config.modes = 1;
  config.seed = 11;
  return config;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char ch : text) lines += ch == '\n';
  return lines;
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "model = WarpedNonTaut\n"
      "n = 1   # trailing\n"
      "level = 7\n"
      "modes = 2\n"
      "seed = 99\n"
      "tol_scale = 2.5\n"
      "only = divergence_theorem, dirac_self_adjoint\n"
      "j_compatible = yes\n"
      "h = 1\n"
      "spectral_modes = 1\n"
      "format = markdown\n");
  const SuiteConfig c = parse_suite_config(in);
  CHECK(c.model == ModelKind::WarpedNonTaut);
  CHECK(c.level == 7);
  CHECK(c.modes == 2);
  CHECK(c.seed == 99u);
  CHECK(c.tol_scale == 2.5);
  CHECK(c.only == std::vector<std::string>{"divergence_theorem", "dirac_self_adjoint"});
  CHECK(c.j_compatible);
  CHECK(c.h == 1.0);
  CHECK(c.effective_spectral_modes() == 1);
  CHECK_NOTHROW(validate_suite_config(c));
}

TEST_CASE("config errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_suite_config(in);
  };
  CHECK_THROWS_AS(parse("model FlatKahlerTorus\n"), ConfigError);
  CHECK_THROWS_AS(parse("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse("n = two\n"), ConfigError);
  CHECK_THROWS_AS(parse("model = Sphere\n"), ConfigError);
  CHECK_THROWS_AS(parse("j_compatible = maybe\n"), ConfigError);
  CHECK_THROWS_AS(load_suite_config("/nonexistent/suite.cfg"), ConfigError);

  SuiteConfig c = flat_config();
  c.only = {"no_such_check"};
  CHECK_THROWS_AS(validate_suite_config(c), ConfigError);
  CHECK_THROWS_AS(run_suite(c), ConfigError);
  c = flat_config();
  c.level = 2;
  CHECK_THROWS_AS(validate_suite_config(c), ConfigError);
  c = flat_config();
  c.tol_scale = 0.0;
  CHECK_THROWS_AS(validate_suite_config(c), ConfigError);
  c = flat_config();
  c.model = ModelKind::HeisenbergFlow;
  c.n = 2;
  CHECK_THROWS_AS(validate_suite_config(c), ConfigError);
  c = flat_config();
  c.format = "yaml";
  CHECK_THROWS_AS(validate_suite_config(c), ConfigError);

  CHECK(c.effective_spectral_modes() == 1);
  c.n = 2;
  c.modes = 2;
  CHECK(c.effective_spectral_modes() == 1);
}

TEST_CASE("catalog is unique and sorted reports follow it") {
  std::set<std::string> names;
  for (const CheckDefinition& def : check_catalog()) {
    CHECK(names.insert(def.name).second);
    CHECK(find_check(def.name) == &def);
    CHECK_FALSE(def.anchor.empty());
    CHECK(def.tolerance >= 0.0);
  }
  CHECK(find_check("not_a_check") == nullptr);
  const VerificationReport r = run_suite(flat_config());
  CHECK(r.checks.size() == check_catalog().size());
  for (std::size_t i = 1; i < r.checks.size(); ++i) CHECK(r.checks[i - 1].name < r.checks[i].name);
  CHECK_FALSE(r.failed());
  CHECK(r.count(CheckStatus::Pass) + r.count(CheckStatus::Skipped) == static_cast<int>(r.checks.size()));
}

TEST_CASE("hypothesis failures are skipped with a reason") {
  SuiteConfig c = flat_config();
  c.only = {"vacuum_kernel_trivial", "uncorrected_dirac_not_self_adjoint", "hamilton_parallel_correction_necessary"};
  const VerificationReport r = run_suite(c);
  REQUIRE(r.checks.size() == 3);
  for (const CheckRecord& rec : r.checks) {
    CHECK(rec.status == CheckStatus::Skipped);
    CHECK(rec.note.rfind("hypothesis: ", 0) == 0);
  }
}

TEST_CASE("negative control passes on the warped model") {
  SuiteConfig c = flat_config();
  c.model = ModelKind::WarpedNonTaut;
  c.modes = 2;
  c.only = {"uncorrected_dirac_not_self_adjoint", "dirac_self_adjoint"};
  const VerificationReport r = run_suite(c);
  const CheckRecord* control = r.find("uncorrected_dirac_not_self_adjoint");
  REQUIRE(control != nullptr);
  CHECK(control->comparison == Comparison::AtLeast);
  CHECK(control->status == CheckStatus::Pass);
  CHECK(control->residual >= 10.0 * r.find("dirac_self_adjoint")->tolerance);
  CHECK(r.find("dirac_self_adjoint")->status == CheckStatus::Pass);
}

TEST_CASE("tolerance scale multiplies every tolerance") {
  SuiteConfig c = flat_config();
  c.only = {"divergence_theorem"};
  c.tol_scale = 4.0;
  const VerificationReport r = run_suite(c);
  CHECK(r.checks.front().tolerance == doctest::Approx(4e-10));
}

TEST_CASE("JSON round trip and determinism") {
  SuiteConfig c = flat_config();
  c.model = ModelKind::ChscFiber;
  c.h = -2.0;
  const VerificationReport a = run_suite(c);
  const VerificationReport b = run_suite(c);
  CHECK(report_json(a, false) == report_json(b, false));
  const VerificationReport back = report_from_json(report_json(a));
  CHECK(back.metadata == a.metadata);
  CHECK(back.checks == a.checks);
  CHECK(back.spectra == a.spectra);
  CHECK(report_json(back, false) == report_json(a, false));
  CHECK(report_json(a).find("\"timing\"") != std::string::npos);
  CHECK(report_json(a, false).find("\"timing\"") == std::string::npos);
  CHECK(a.metadata.h == -2.0);
  CHECK(a.metadata.library_version == kLibraryVersion);
}

TEST_CASE("non-finite residuals survive JSON") {
  VerificationReport r;
  CheckRecord rec;
  rec.name = "x";
  rec.residual = std::numeric_limits<double>::infinity();
  rec.status = CheckStatus::Fail;
  r.checks.push_back(rec);
  const VerificationReport back = report_from_json(report_json(r));
  CHECK(std::isinf(back.checks.front().residual));
  CHECK(back.checks == r.checks);
}

TEST_CASE("markdown and CSV outputs") {
  SuiteConfig c = flat_config();
  const VerificationReport r = run_suite(c);
  const std::string md = report_markdown(r);
  int rows = 0;
  for (const CheckRecord& rec : r.checks) rows += md.find("| " + rec.name + " |") != std::string::npos;
  CHECK(rows == static_cast<int>(r.checks.size()));
  std::ostringstream csv;
  write_spectra_csv(csv, r);
  std::size_t eigenvalues = 0;
  for (const SpectrumRecord& s : r.spectra) eigenvalues += s.eigenvalues.size();
  CHECK(eigenvalues > 0);
  CHECK(count_lines(csv.str()) == static_cast<int>(eigenvalues) + 1);
  CHECK(csv.str().rfind("operator,level,cutoff,index,eigenvalue,dominant_mode,dominant_level\n", 0) == 0);
}

TEST_CASE("report formats and emission") {
  CHECK(parse_report_format("json") == ReportFormat::Json);
  CHECK(parse_report_format("md") == ReportFormat::Markdown);
  CHECK(parse_report_format("csv-spectra") == ReportFormat::CsvSpectra);
  CHECK_THROWS_AS(parse_report_format("xml"), ConfigError);
  for (const std::string& label : {"PASS", "FAIL", "SKIPPED"}) CHECK(status_label(parse_status(label)) == label);

  SuiteConfig c = flat_config();
  c.only = {"canonical_commutation"};
  const VerificationReport r = run_suite(c);
  const auto path = std::filesystem::temp_directory_path() / "sympdirac_test_report.json";
  emit_report(r, ReportFormat::Json, path.string());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(report_from_json(text.str()).checks == r.checks);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_report(r, ReportFormat::Json, "/nonexistent/dir/report.json"), Error);
}
