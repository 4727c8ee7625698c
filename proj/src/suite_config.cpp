#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "sympdirac/errors.hpp"
#include "sympdirac/verifier.hpp"

namespace sympdirac {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) throw ConfigError("config: bad value '" + value + "' for " + key);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: bad boolean '" + value + "' for " + key);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int SuiteConfig::effective_spectral_modes() const {
  if (spectral_modes) return *spectral_modes;
  return n == 1 ? modes : std::min(modes, 1);
}

SuiteConfig parse_suite_config(std::istream& in) {
  SuiteConfig config;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "model") config.model = parse_model_kind(value);
      else if (key == "n") config.n = parse_number<int>(key, value);
      else if (key == "level") config.level = parse_number<int>(key, value);
      else if (key == "modes") config.modes = parse_number<int>(key, value);
      else if (key == "seed") config.seed = parse_number<std::uint64_t>(key, value);
      else if (key == "tol_scale") config.tol_scale = parse_number<double>(key, value);
      else if (key == "only") config.only = split_list(value);
      else if (key == "j_compatible") config.j_compatible = parse_bool(key, value);
      else if (key == "h") config.h = parse_number<double>(key, value);
      else if (key == "amplitude") config.amplitude = parse_number<double>(key, value);
      else if (key == "spectral_modes") config.spectral_modes = parse_number<int>(key, value);
      else if (key == "report") config.report = value;
      else if (key == "format") config.format = value;
      else if (key == "spectra_csv") config.spectra_csv = value;
      else throw ConfigError("config: unknown key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError("config line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return config;
}

SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_suite_config(in);
}

void validate_suite_config(const SuiteConfig& config) {
  if (config.n < 1) throw ConfigError("n must be >= 1");
  if (config.model == ModelKind::HeisenbergFlow && config.n != 1) {
    throw ConfigError("HeisenbergFlow has codimension 2 (n = 1)");
  }
  if (config.level < 3) throw ConfigError("level must be >= 3 so that random fields fit below L - 2");
  if (config.modes < 1) throw ConfigError("modes must be >= 1");
  if (config.effective_spectral_modes() < 0) throw ConfigError("spectral_modes must be >= 0");
  if (!(config.tol_scale > 0.0)) throw ConfigError("tol_scale must be positive");
  if (!(config.amplitude >= 0.0)) throw ConfigError("amplitude must be non-negative");
  for (const std::string& name : config.only) {
    if (!find_check(name)) throw ConfigError("unknown check '" + name + "'");
  }
  parse_report_format(config.format);
}

}  // namespace sympdirac
