#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fminlab/asymptotics.hpp"
#include "fminlab/conformal.hpp"
#include "fminlab/quadrature.hpp"
#include "fminlab/variation.hpp"
#include "fminlab/warped_space.hpp"

namespace fminlab {

struct VariationSettings {
  RadialProfile profile;
  nlohmann::json echo;
};

struct SpectrumSettings {
  double rho_max = 1.0;
  std::size_t grid = 64;
};

struct FlowSettings {
  double t1 = 0.4;
  std::size_t steps = 200;
  double rho_max = 1.0;
};

struct AsymptoticsSettings {
  RadialMeasureModel model;
  double r1 = 1.0, r2 = 2.0, R = 3.0;
  Expr growth_derivative;
  std::vector<double> a_grid;
  bool growth = true;
  int growth_points = 64;
};

struct ConformalSettings {
  double R = 1.0;
  double a = 7.0 / 8.0;
  std::vector<double> t;
  Expr weight;
  int samples = 200;
};

// A scenario file: JSON with sections space, slice, variation, spectrum,
// flow, asymptotics, conformal, quadrature and output. Sections are
// validated when a subcommand asks for them, so a file only needs the
// sections its subcommands use. Expressions are in t (space) or r
// (asymptotics, conformal, variation profiles).
class ScenarioConfig {
 public:
  explicit ScenarioConfig(nlohmann::json doc);

  // Throws ConfigError on unreadable files or malformed JSON.
  static ScenarioConfig load(const std::string& path);
  // Built-in scenario for a named model; every section is filled in.
  static ScenarioConfig preset(const std::string& name);
  static std::vector<std::string> preset_names();

  const nlohmann::json& doc() const noexcept { return doc_; }
  bool has(const char* section) const { return doc_.contains(section); }

  WarpedSpace space() const;
  double slice_t0() const;
  VariationSettings variation() const;
  SpectrumSettings spectrum() const;
  FlowSettings flow() const;
  AsymptoticsSettings asymptotics() const;
  ConformalSettings conformal() const;
  QuadratureSpec quadrature() const;
  std::optional<std::string> report_path() const;
  std::optional<std::string> csv_dir() const;

  // Replaces or inserts a value at a JSON pointer such as "/quadrature/tol".
  void set(const std::string& pointer, nlohmann::json value);

 private:
  nlohmann::json doc_;
};

// Hex FNV-1a 64 of the compact dump of `j` (object keys are sorted).
std::string config_digest(const nlohmann::json& j);

}  // namespace fminlab
