#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "limitfem/constitutive.hpp"
#include "limitfem/solver.hpp"

namespace limitfem {

/// Bad configuration input. `line()` is 0 for values that came from flags
/// or from cross-field validation.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& what);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

struct ExportOptions {
  bool vtk = true;
  bool csv = true;
  bool profile = true;

  friend bool operator==(const ExportOptions&, const ExportOptions&) = default;
};

struct RunConfig {
  Domain domain = Domain::Example1;
  TemperatureCase temperature_case = TemperatureCase::Case1;
  Model model = Model::Nonlinear;
  int refinements = 7;
  MaterialParams material;
  double tol = 1e-8;
  int max_iter = 50;
  std::filesystem::path outdir = "results";
  ExportOptions exports;
  int workers = 1;
  int cycles = 6;

  NewtonConfig newton() const;
  /// Throws ConfigError for the first violated invariant.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Keys accepted in files and by `apply_setting`.
const std::vector<std::string>& config_keys();

/// Sets one key from its textual value. `line` is only used in errors.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, int line = 0);

/// Parses "key = value" lines on top of `base`. Blank lines and text after
/// '#' are ignored. Does not validate cross-field invariants.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Writes every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

/// Output directory when neither file nor flag sets one: LIMITFEM_OUTDIR
/// if present, otherwise "results".
std::filesystem::path default_outdir();

Domain parse_domain(const std::string& s);
TemperatureCase parse_case(const std::string& s);
Model parse_model(const std::string& s);

}  // namespace limitfem
