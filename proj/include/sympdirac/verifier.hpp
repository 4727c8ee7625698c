#pragma once

// Batch verification: configuration, check registry and reports.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sympdirac/foliated_geometry.hpp"
#include "sympdirac/spectrum.hpp"

namespace sympdirac {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct SuiteConfig {
  ModelKind model = ModelKind::FlatKahlerTorus;
  int n = 1;
  int level = 8;
  int modes = 2;
  std::uint64_t seed = 1;
  double tol_scale = 1.0;
  // Empty means every registered check.
  std::vector<std::string> only;
  bool j_compatible = false;
  // Holomorphic sectional curvature of ChscFiber.
  double h = -2.0;
  double amplitude = 0.2;
  // Fourier cutoff of the Galerkin spaces; defaults to modes for n = 1 and 1 otherwise.
  std::optional<int> spectral_modes;
  std::string report;
  std::string format = "json";
  std::string spectra_csv;

  int effective_spectral_modes() const;
};

// Key-value lines "key = value"; '#' starts a comment. Keys match the field
// names above, "only" takes a comma separated list.
SuiteConfig parse_suite_config(std::istream& in);
SuiteConfig load_suite_config(const std::string& path);
// Throws ConfigError on out-of-range values and unknown check names.
void validate_suite_config(const SuiteConfig& config);

enum class CheckStatus { Pass, Fail, Skipped };
std::string status_label(CheckStatus status);
CheckStatus parse_status(const std::string& label);

// AtMost: residual <= tolerance. AtLeast: the residual of a negative control
// must reach the threshold.
enum class Comparison { AtMost, AtLeast };

struct CheckDefinition {
  std::string name;
  std::string suite;
  std::string anchor;
  double tolerance = 0.0;
  Comparison comparison = Comparison::AtMost;
};

const std::vector<CheckDefinition>& check_catalog();
const CheckDefinition* find_check(const std::string& name);

struct CheckRecord {
  std::string name;
  std::string suite;
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::AtMost;
  CheckStatus status = CheckStatus::Pass;
  // Skip reason or supplementary values.
  std::string note;

  bool operator==(const CheckRecord& other) const;
};

struct SpectrumRecord {
  std::string operator_name;
  std::optional<int> level;
  int cutoff = 0;
  double hermiticity_residual = 0.0;
  std::vector<double> eigenvalues;
  std::vector<std::string> dominant_modes;
  std::vector<int> dominant_levels;

  bool operator==(const SpectrumRecord& other) const = default;
};

struct ReportMetadata {
  std::string model;
  int n = 0;
  int level = 0;
  int modes = 0;
  int spectral_modes = 0;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  bool j_compatible = false;
  double h = 0.0;
  double amplitude = 0.0;
  // Mass of the leaf density Fourier tail dropped by the truncation.
  double aliasing_residual = 0.0;
  std::string library_version;

  bool operator==(const ReportMetadata& other) const = default;
};

// Wall times are outside the deterministic part of the report.
struct ReportTiming {
  std::string started_at;
  double total_seconds = 0.0;
  std::map<std::string, double> check_seconds;
};

struct VerificationReport {
  ReportMetadata metadata;
  std::vector<CheckRecord> checks;  // ordered by name
  std::vector<SpectrumRecord> spectra;
  ReportTiming timing;

  int count(CheckStatus status) const;
  bool failed() const { return count(CheckStatus::Fail) > 0; }
  const CheckRecord* find(const std::string& name) const;
};

VerificationReport run_suite(const SuiteConfig& config);

std::string report_json(const VerificationReport& report, bool include_timing = true);
VerificationReport report_from_json(const std::string& text);
std::string report_markdown(const VerificationReport& report);
void write_spectra_csv(std::ostream& out, const VerificationReport& report);

enum class ReportFormat { Json, Markdown, CsvSpectra };
ReportFormat parse_report_format(const std::string& label);
// Throws Error naming the path when the file cannot be written.
void emit_report(const VerificationReport& report, ReportFormat format, const std::string& path);

}  // namespace sympdirac
