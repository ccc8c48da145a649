#include "fminlab/scenario.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fminlab/error.hpp"

namespace fminlab {

using nlohmann::json;

namespace {

const json& section(const json& doc, const char* name) {
  if (!doc.contains(name)) throw ConfigError(std::string("config has no '") + name + "' section");
  const json& s = doc.at(name);
  if (!s.is_object()) throw ConfigError(std::string("section '") + name + "' must be an object");
  return s;
}

double number(const json& s, const char* sec, const char* key, std::optional<double> fallback = {}) {
  if (!s.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(std::string(sec) + "." + key + " is required");
  }
  const json& v = s.at(key);
  if (!v.is_number()) throw ConfigError(std::string(sec) + "." + key + " must be a number");
  return v.get<double>();
}

std::size_t count(const json& s, const char* sec, const char* key, std::size_t fallback) {
  if (!s.contains(key)) return fallback;
  const json& v = s.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ConfigError(std::string(sec) + "." + key + " must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

std::string text(const json& s, const char* sec, const char* key, std::optional<std::string> fallback = {}) {
  if (!s.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(std::string(sec) + "." + key + " is required");
  }
  const json& v = s.at(key);
  if (!v.is_string()) throw ConfigError(std::string(sec) + "." + key + " must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& s, const char* sec, const char* key, std::vector<double> fallback) {
  if (!s.contains(key)) return fallback;
  const json& v = s.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) throw ConfigError(std::string(sec) + "." + key + " must be a number or a nonempty array");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError(std::string(sec) + "." + key + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

// Parses with the field name prefixed to the message; kind and offset kept.
Expr expression(const std::string& source, const char* var, const std::string& field) {
  try {
    return parse(source, var);
  } catch (const ParseError& e) {
    std::string what = e.what();
    const std::string suffix = " at offset " + std::to_string(e.offset());
    if (what.size() >= suffix.size() && what.compare(what.size() - suffix.size(), suffix.size(), suffix) == 0) {
      what.resize(what.size() - suffix.size());
    }
    throw ParseError(e.kind(), e.offset(), field + ": " + what);
  }
}

json space_json(const std::string& name) {
  const WarpedSpace s = preset_space(name);
  return {{"preset", name},          {"kappa", s.kappa()},     {"g", render(s.g())},
          {"f", render(s.f())},      {"t_min", s.t_min()},     {"t_max", s.t_max()}};
}

json preset_doc(const std::string& name) {
  double t0 = 0.0, t1 = 0.8;
  if (name == "paper-sec4") t1 = 0.4;
  if (name == "paper-remark") {
    t0 = 0.5;
    t1 = 0.9;
  }
  if (name == "sphere") {
    t0 = std::numbers::pi / 2;
    t1 = 2.5;
  }
  return {
      {"space", space_json(name)},
      {"slice", {{"t0", t0}}},
      {"variation", {{"profile", "cosineCap"}, {"rho_max", 2.0}}},
      {"spectrum", {{"rho_max", 2.0}, {"grid", 64}}},
      {"flow", {{"t1", t1}, {"steps", 200}, {"rho_max", 1.0}}},
      {"asymptotics",
       {{"m", 3}, {"g", "r^2"}, {"f", "0"}, {"r_min", 0.1}, {"r_max", 10.0}, {"r1", 1.0}, {"r2", 2.0},
        {"R", 3.0}, {"growth_derivative", "2*r"}, {"a_grid", {1e2, 1e3, 1e4, 1e5}}, {"growth", true}}},
      {"conformal", {{"R", 1.0}, {"a", 0.875}, {"t", {1e-4, 1e-3, 1e-2}}, {"f", "0"}, {"samples", 200}}},
      {"quadrature", {{"panels", 4001}, {"tol", 1e-8}}},
      {"output", json::object()},
  };
}

}  // namespace

ScenarioConfig::ScenarioConfig(json doc) : doc_(std::move(doc)) {
  if (!doc_.is_object()) throw ConfigError("config must be a JSON object");
  // Expand a named space so reports carry the full geometry.
  if (doc_.contains("space") && doc_["space"].is_object() && doc_["space"].contains("preset")) {
    const json& p = doc_["space"]["preset"];
    if (!p.is_string()) throw ConfigError("space.preset must be a string");
    try {
      doc_["space"] = space_json(p.get<std::string>());
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
  }
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  try {
    return ScenarioConfig(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "' at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

ScenarioConfig ScenarioConfig::preset(const std::string& name) {
  try {
    return ScenarioConfig(preset_doc(name));
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::string> ScenarioConfig::preset_names() {
  return {"paper-sec4", "paper-remark", "flat", "cylinder", "sphere"};
}

WarpedSpace ScenarioConfig::space() const {
  const json& s = section(doc_, "space");
  const double kappa = number(s, "space", "kappa");
  if (kappa != -1.0 && kappa != 0.0 && kappa != 1.0) throw ConfigError("space.kappa must be -1, 0 or 1");
  const Expr g = expression(text(s, "space", "g"), "t", "space.g");
  const Expr f = expression(text(s, "space", "f", "0"), "t", "space.f");
  const double lo = number(s, "space", "t_min");
  const double hi = number(s, "space", "t_max");
  if (!(lo < hi)) throw ConfigError("space: need t_min < t_max");
  return WarpedSpace(static_cast<int>(kappa), g, f, lo, hi);
}

double ScenarioConfig::slice_t0() const {
  if (!doc_.contains("slice")) return 0.0;
  return number(section(doc_, "slice"), "slice", "t0", 0.0);
}

VariationSettings ScenarioConfig::variation() const {
  const json& s = section(doc_, "variation");
  const std::string kind = text(s, "variation", "profile", "cosineCap");
  const double rho_max = number(s, "variation", "rho_max");
  if (kind == "cosineCap") return {RadialProfile::cosine_cap(rho_max), s};
  if (kind == "expression") {
    const Expr e = expression(text(s, "variation", "expression"), "r", "variation.expression");
    return {RadialProfile::expression(e, rho_max), s};
  }
  throw ConfigError("variation.profile must be 'cosineCap' or 'expression'");
}

SpectrumSettings ScenarioConfig::spectrum() const {
  const json& s = section(doc_, "spectrum");
  return {number(s, "spectrum", "rho_max"), count(s, "spectrum", "grid", 64)};
}

FlowSettings ScenarioConfig::flow() const {
  const json& s = section(doc_, "flow");
  return {number(s, "flow", "t1"), count(s, "flow", "steps", 200), number(s, "flow", "rho_max", 1.0)};
}

AsymptoticsSettings ScenarioConfig::asymptotics() const {
  const json& s = section(doc_, "asymptotics");
  const std::size_t m = count(s, "asymptotics", "m", 3);
  const Expr g = expression(text(s, "asymptotics", "g"), "r", "asymptotics.g");
  const Expr f = expression(text(s, "asymptotics", "f", "0"), "r", "asymptotics.f");
  const double r_min = number(s, "asymptotics", "r_min");
  const double r_max = number(s, "asymptotics", "r_max");
  if (!(r_min < r_max)) throw ConfigError("asymptotics: need r_min < r_max");
  AsymptoticsSettings out{RadialMeasureModel(static_cast<int>(m), g, f, r_min, r_max), 1.0, 2.0, 3.0, Expr(), {}, true, 64};
  out.r1 = number(s, "asymptotics", "r1", 1.0);
  out.r2 = number(s, "asymptotics", "r2", 2.0);
  out.R = number(s, "asymptotics", "R", 3.0);
  out.growth_derivative =
      expression(text(s, "asymptotics", "growth_derivative", "2*r"), "r", "asymptotics.growth_derivative");
  out.a_grid = numbers(s, "asymptotics", "a_grid", {1e2, 1e3, 1e4, 1e5});
  if (s.contains("growth")) {
    if (!s.at("growth").is_boolean()) throw ConfigError("asymptotics.growth must be a boolean");
    out.growth = s.at("growth").get<bool>();
  }
  out.growth_points = static_cast<int>(count(s, "asymptotics", "growth_points", 64));
  return out;
}

ConformalSettings ScenarioConfig::conformal() const {
  const json& s = section(doc_, "conformal");
  ConformalSettings out;
  out.R = number(s, "conformal", "R", 1.0);
  out.a = number(s, "conformal", "a", 7.0 / 8.0);
  out.t = numbers(s, "conformal", "t", {1e-3});
  out.weight = expression(text(s, "conformal", "f", "0"), "r", "conformal.f");
  out.samples = static_cast<int>(count(s, "conformal", "samples", 200));
  return out;
}

QuadratureSpec ScenarioConfig::quadrature() const {
  QuadratureSpec q;
  if (!doc_.contains("quadrature")) return q;
  const json& s = section(doc_, "quadrature");
  q.nodes = count(s, "quadrature", "panels", q.nodes);
  q.tol = number(s, "quadrature", "tol", q.tol);
  if (!(q.tol > 0.0)) throw ConfigError("quadrature.tol must be positive");
  return q;
}

std::optional<std::string> ScenarioConfig::report_path() const {
  if (!doc_.contains("output")) return std::nullopt;
  const json& s = section(doc_, "output");
  if (!s.contains("report")) return std::nullopt;
  return text(s, "output", "report");
}

std::optional<std::string> ScenarioConfig::csv_dir() const {
  if (!doc_.contains("output")) return std::nullopt;
  const json& s = section(doc_, "output");
  if (!s.contains("csv_dir")) return std::nullopt;
  return text(s, "output", "csv_dir");
}

void ScenarioConfig::set(const std::string& pointer, json value) {
  doc_[json::json_pointer(pointer)] = std::move(value);
}

std::string config_digest(const json& j) {
  const std::string bytes = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fminlab
