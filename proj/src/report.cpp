#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sympdirac/errors.hpp"
#include "sympdirac/verifier.hpp"

namespace sympdirac {

namespace {

using Json = nlohmann::ordered_json;

// JSON has no infinities or NaN; they travel as strings.
Json encode_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double decode_number(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error("report: bad number '" + s + "'");
  }
  return j.get<double>();
}

bool same_double(double a, double b) {
  return std::memcmp(&a, &b, sizeof a) == 0 || a == b || (std::isnan(a) && std::isnan(b));
}

std::string comparison_label(Comparison c) { return c == Comparison::AtMost ? "at_most" : "at_least"; }

Comparison parse_comparison(const std::string& label) {
  if (label == "at_most") return Comparison::AtMost;
  if (label == "at_least") return Comparison::AtLeast;
  throw Error("report: bad comparison '" + label + "'");
}

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string short_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.3e", x);
  return buffer;
}

std::string escape_cell(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += ' ';
    else out += ch;
  }
  return out;
}

Json metadata_json(const ReportMetadata& m) {
  return Json{{"model", m.model},
              {"n", m.n},
              {"level", m.level},
              {"modes", m.modes},
              {"spectral_modes", m.spectral_modes},
              {"seed", m.seed},
              {"tol_scale", encode_number(m.tol_scale)},
              {"j_compatible", m.j_compatible},
              {"h", encode_number(m.h)},
              {"amplitude", encode_number(m.amplitude)},
              {"aliasing_residual", encode_number(m.aliasing_residual)},
              {"library_version", m.library_version}};
}

}  // namespace

std::string status_label(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIPPED";
  }
  return "FAIL";
}

CheckStatus parse_status(const std::string& label) {
  if (label == "PASS") return CheckStatus::Pass;
  if (label == "FAIL") return CheckStatus::Fail;
  if (label == "SKIPPED") return CheckStatus::Skipped;
  throw Error("unknown check status '" + label + "'");
}

bool CheckRecord::operator==(const CheckRecord& other) const {
  return name == other.name && suite == other.suite && anchor == other.anchor &&
         same_double(residual, other.residual) && same_double(tolerance, other.tolerance) &&
         comparison == other.comparison && status == other.status && note == other.note;
}

int VerificationReport::count(CheckStatus status) const {
  int out = 0;
  for (const CheckRecord& c : checks) out += c.status == status;
  return out;
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const CheckRecord& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string report_json(const VerificationReport& report, bool include_timing) {
  Json root;
  root["metadata"] = metadata_json(report.metadata);
  root["summary"] = Json{{"pass", report.count(CheckStatus::Pass)},
                         {"fail", report.count(CheckStatus::Fail)},
                         {"skipped", report.count(CheckStatus::Skipped)},
                         {"status", report.failed() ? "FAIL" : "PASS"}};
  Json checks = Json::array();
  for (const CheckRecord& c : report.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"suite", c.suite},
                          {"anchor", c.anchor},
                          {"residual", encode_number(c.residual)},
                          {"tolerance", encode_number(c.tolerance)},
                          {"comparison", comparison_label(c.comparison)},
                          {"status", status_label(c.status)},
                          {"note", c.note}});
  }
  root["checks"] = std::move(checks);
  Json spectra = Json::array();
  for (const SpectrumRecord& s : report.spectra) {
    Json values = Json::array();
    for (double v : s.eigenvalues) values.push_back(encode_number(v));
    spectra.push_back(Json{{"operator", s.operator_name},
                           {"level", s.level ? Json(*s.level) : Json(nullptr)},
                           {"cutoff", s.cutoff},
                           {"hermiticity_residual", encode_number(s.hermiticity_residual)},
                           {"eigenvalues", std::move(values)},
                           {"dominant_modes", s.dominant_modes},
                           {"dominant_levels", s.dominant_levels}});
  }
  root["spectra"] = std::move(spectra);
  if (include_timing) {
    Json per_check = Json::object();
    for (const auto& [name, seconds] : report.timing.check_seconds) per_check[name] = seconds;
    root["timing"] = Json{{"started_at", report.timing.started_at},
                          {"total_seconds", report.timing.total_seconds},
                          {"check_seconds", std::move(per_check)}};
  }
  return root.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
  VerificationReport report;
  try {
    const Json root = Json::parse(text);
    const Json& m = root.at("metadata");
    ReportMetadata& meta = report.metadata;
    meta.model = m.at("model").get<std::string>();
    meta.n = m.at("n").get<int>();
    meta.level = m.at("level").get<int>();
    meta.modes = m.at("modes").get<int>();
    meta.spectral_modes = m.at("spectral_modes").get<int>();
    meta.seed = m.at("seed").get<std::uint64_t>();
    meta.tol_scale = decode_number(m.at("tol_scale"));
    meta.j_compatible = m.at("j_compatible").get<bool>();
    meta.h = decode_number(m.at("h"));
    meta.amplitude = decode_number(m.at("amplitude"));
    meta.aliasing_residual = decode_number(m.at("aliasing_residual"));
    meta.library_version = m.at("library_version").get<std::string>();
    for (const Json& c : root.at("checks")) {
      CheckRecord r;
      r.name = c.at("name").get<std::string>();
      r.suite = c.at("suite").get<std::string>();
      r.anchor = c.at("anchor").get<std::string>();
      r.residual = decode_number(c.at("residual"));
      r.tolerance = decode_number(c.at("tolerance"));
      r.comparison = parse_comparison(c.at("comparison").get<std::string>());
      r.status = parse_status(c.at("status").get<std::string>());
      r.note = c.at("note").get<std::string>();
      report.checks.push_back(std::move(r));
    }
    for (const Json& s : root.at("spectra")) {
      SpectrumRecord r;
      r.operator_name = s.at("operator").get<std::string>();
      if (!s.at("level").is_null()) r.level = s.at("level").get<int>();
      r.cutoff = s.at("cutoff").get<int>();
      r.hermiticity_residual = decode_number(s.at("hermiticity_residual"));
      for (const Json& v : s.at("eigenvalues")) r.eigenvalues.push_back(decode_number(v));
      r.dominant_modes = s.at("dominant_modes").get<std::vector<std::string>>();
      r.dominant_levels = s.at("dominant_levels").get<std::vector<int>>();
      report.spectra.push_back(std::move(r));
    }
    if (root.contains("timing")) {
      const Json& t = root.at("timing");
      report.timing.started_at = t.at("started_at").get<std::string>();
      report.timing.total_seconds = t.at("total_seconds").get<double>();
      for (const auto& [name, seconds] : t.at("check_seconds").items()) {
        report.timing.check_seconds[name] = seconds.get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("report: malformed JSON: ") + e.what());
  }
  return report;
}

std::string report_markdown(const VerificationReport& report) {
  const ReportMetadata& m = report.metadata;
  std::ostringstream out;
  out << "# Verification report: " << m.model << "\n\n";
  out << "n = " << m.n << ", L = " << m.level << ", K = " << m.modes << ", spectral K = " << m.spectral_modes
      << ", seed = " << m.seed << ", tol_scale = " << m.tol_scale << ", j_compatible = " << (m.j_compatible ? "yes" : "no")
      << ", h = " << m.h << ", amplitude = " << m.amplitude << ", leaf density tail = " << short_double(m.aliasing_residual)
      << ", version " << m.library_version << "\n\n";
  out << "Status: **" << (report.failed() ? "FAIL" : "PASS") << "** (" << report.count(CheckStatus::Pass) << " pass, "
      << report.count(CheckStatus::Fail) << " fail, " << report.count(CheckStatus::Skipped) << " skipped)\n\n";
  out << "| check | anchor | residual | tolerance | status | note |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const CheckRecord& c : report.checks) {
    const std::string bound = (c.comparison == Comparison::AtMost ? "<= " : ">= ") + short_double(c.tolerance);
    out << "| " << c.name << " | " << escape_cell(c.anchor) << " | "
        << (c.status == CheckStatus::Skipped ? "-" : short_double(c.residual)) << " | " << bound << " | "
        << status_label(c.status) << " | " << escape_cell(c.note) << " |\n";
  }
  if (!report.spectra.empty()) {
    out << "\n| spectrum | level | cutoff | size | min eigenvalue | hermiticity |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const SpectrumRecord& s : report.spectra) {
      out << "| " << s.operator_name << " | " << (s.level ? std::to_string(*s.level) : "all") << " | " << s.cutoff
          << " | " << s.eigenvalues.size() << " | "
          << (s.eigenvalues.empty() ? "-" : short_double(s.eigenvalues.front())) << " | "
          << short_double(s.hermiticity_residual) << " |\n";
    }
  }
  return out.str();
}

void write_spectra_csv(std::ostream& out, const VerificationReport& report) {
  out << "operator,level,cutoff,index,eigenvalue,dominant_mode,dominant_level\n";
  for (const SpectrumRecord& s : report.spectra) {
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      out << s.operator_name << ',' << (s.level ? std::to_string(*s.level) : "all") << ',' << s.cutoff << ',' << i
          << ',' << format_double(s.eigenvalues[i]) << ",\"" << s.dominant_modes.at(i) << "\","
          << s.dominant_levels.at(i) << '\n';
    }
  }
}

ReportFormat parse_report_format(const std::string& label) {
  if (label == "json") return ReportFormat::Json;
  if (label == "markdown" || label == "md") return ReportFormat::Markdown;
  if (label == "csv-spectra" || label == "csv") return ReportFormat::CsvSpectra;
  throw ConfigError("unknown report format '" + label + "' (json, markdown, csv-spectra)");
}

void emit_report(const VerificationReport& report, ReportFormat format, const std::string& path) {
  std::ostringstream body;
  switch (format) {
    case ReportFormat::Json: body << report_json(report); break;
    case ReportFormat::Markdown: body << report_markdown(report); break;
    case ReportFormat::CsvSpectra: write_spectra_csv(body, report); break;
  }
  if (path.empty() || path == "-") {
    std::cout << body.str();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open report file " + path + ": " + std::strerror(errno));
  out << body.str();
  out.close();
  if (!out) throw Error("failed writing report file " + path);
}

}  // namespace sympdirac
