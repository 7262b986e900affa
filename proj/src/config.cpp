#include "limitfem/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace limitfem {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double to_double(const std::string& key, const std::string& v, int line) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, line, "expected a number, got '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v, int line) {
  int out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, line, "expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v, int line) {
  const std::string s = lower(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ConfigError(key, line, "expected true or false, got '" + v + "'");
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& what)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) + key + ": " +
                         what),
      key_(std::move(key)),
      line_(line) {}

Domain parse_domain(const std::string& s) {
  const std::string v = lower(s);
  if (v == "example1" || v == "1") return Domain::Example1;
  if (v == "example2" || v == "2") return Domain::Example2;
  throw std::invalid_argument("unknown domain '" + s + "' (expected example1 or example2)");
}

TemperatureCase parse_case(const std::string& s) {
  const std::string v = lower(s);
  if (v == "case1" || v == "1") return TemperatureCase::Case1;
  if (v == "case2" || v == "2") return TemperatureCase::Case2;
  throw std::invalid_argument("unknown temperature case '" + s + "' (expected 1 or 2)");
}

Model parse_model(const std::string& s) {
  const std::string v = lower(s);
  if (v == "linear") return Model::Linear;
  if (v == "nonlinear") return Model::Nonlinear;
  throw std::invalid_argument("unknown model '" + s + "' (expected linear or nonlinear)");
}

NewtonConfig RunConfig::newton() const {
  NewtonConfig n;
  n.tol = tol;
  n.max_iter = max_iter;
  return n;
}

void RunConfig::validate() const {
  if (refinements < 1 || refinements > 12) throw ConfigError("refinements", 0, "must lie in [1, 12]");
  if (!(tol > 0.0)) throw ConfigError("tol", 0, "must be positive");
  if (max_iter < 1) throw ConfigError("max_iter", 0, "must be at least 1");
  if (workers < 1) throw ConfigError("workers", 0, "must be at least 1");
  if (cycles < 2 || cycles > 10) throw ConfigError("cycles", 0, "must lie in [2, 10]");
  if (model == Model::Nonlinear && !(material.beta > 0.0)) {
    throw ConfigError("beta", 0, "the nonlinear model needs beta > 0");
  }
  try {
    material.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("material", 0, e.what());
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "domain", "case", "model", "refinements", "lambda", "mu",  "a",       "beta",    "k",      "g",
      "alpha_T", "tol", "max_iter", "outdir", "export_vtk", "export_csv", "export_profile", "workers", "cycles"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, int line) {
  try {
    if (key == "domain") cfg.domain = parse_domain(value);
    else if (key == "case") cfg.temperature_case = parse_case(value);
    else if (key == "model") cfg.model = parse_model(value);
    else if (key == "refinements") cfg.refinements = to_int(key, value, line);
    else if (key == "lambda") cfg.material.lambda = to_double(key, value, line);
    else if (key == "mu") cfg.material.mu = to_double(key, value, line);
    else if (key == "a") cfg.material.a = to_double(key, value, line);
    else if (key == "beta") cfg.material.beta = to_double(key, value, line);
    else if (key == "k") cfg.material.k = to_double(key, value, line);
    else if (key == "g") cfg.material.g = to_double(key, value, line);
    else if (key == "alpha_T") cfg.material.alpha_T = to_double(key, value, line);
    else if (key == "tol") cfg.tol = to_double(key, value, line);
    else if (key == "max_iter") cfg.max_iter = to_int(key, value, line);
    else if (key == "outdir") cfg.outdir = value;
    else if (key == "export_vtk") cfg.exports.vtk = to_bool(key, value, line);
    else if (key == "export_csv") cfg.exports.csv = to_bool(key, value, line);
    else if (key == "export_profile") cfg.exports.profile = to_bool(key, value, line);
    else if (key == "workers") cfg.workers = to_int(key, value, line);
    else if (key == "cycles") cfg.cycles = to_int(key, value, line);
    else throw ConfigError(key, line, "unknown key");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, line, e.what());
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(text, line, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError("", line, "missing key");
    if (value.empty()) throw ConfigError(key, line, "missing value");
    apply_setting(base, key, value, line);
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_config(in, std::move(base));
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "domain = " << to_string(cfg.domain) << '\n'
      << "case = " << (cfg.temperature_case == TemperatureCase::Case1 ? 1 : 2) << '\n'
      << "model = " << to_string(cfg.model) << '\n'
      << "refinements = " << cfg.refinements << '\n'
      << "lambda = " << format_double(cfg.material.lambda) << '\n'
      << "mu = " << format_double(cfg.material.mu) << '\n'
      << "a = " << format_double(cfg.material.a) << '\n'
      << "beta = " << format_double(cfg.material.beta) << '\n'
      << "k = " << format_double(cfg.material.k) << '\n'
      << "g = " << format_double(cfg.material.g) << '\n'
      << "alpha_T = " << format_double(cfg.material.alpha_T) << '\n'
      << "tol = " << format_double(cfg.tol) << '\n'
      << "max_iter = " << cfg.max_iter << '\n'
      << "outdir = " << cfg.outdir.string() << '\n'
      << "export_vtk = " << b(cfg.exports.vtk) << '\n'
      << "export_csv = " << b(cfg.exports.csv) << '\n'
      << "export_profile = " << b(cfg.exports.profile) << '\n'
      << "workers = " << cfg.workers << '\n'
      << "cycles = " << cfg.cycles << '\n';
  return out.str();
}

std::filesystem::path default_outdir() {
  if (const char* env = std::getenv("LIMITFEM_OUTDIR"); env != nullptr && *env != '\0') return env;
  return "results";
}

}  // namespace limitfem
