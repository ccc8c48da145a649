#include "fminlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "fminlab/asymptotics.hpp"
#include "fminlab/commands.hpp"
#include "fminlab/conformal.hpp"
#include "fminlab/csv.hpp"
#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"
#include "fminlab/expr_corpus.hpp"
#include "fminlab/hypersurface.hpp"
#include "fminlab/normal_flow.hpp"
#include "fminlab/parallel.hpp"
#include "fminlab/scenario.hpp"
#include "fminlab/spectrum.hpp"
#include "fminlab/variation.hpp"

namespace fminlab {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
// First zero of J0, squared.
constexpr double kBesselZeroSq = 5.783185962946784;

bool compare(double observed, const std::string& relation, double limit) {
  if (relation == "<=") return observed <= limit;
  if (relation == ">=") return observed >= limit;
  if (relation == "<") return observed < limit;
  if (relation == ">") return observed > limit;
  if (relation == "==") return observed == limit;
  throw ConfigError("unknown relation '" + relation + "'");
}

class Recorder {
 public:
  explicit Recorder(std::vector<Check>& out) : out_(out) {}

  void le(const std::string& what, double observed, double limit) { add(what, observed, "<=", limit, observed <= limit); }
  void ge(const std::string& what, double observed, double limit) { add(what, observed, ">=", limit, observed >= limit); }
  void gt(const std::string& what, double observed, double limit) { add(what, observed, ">", limit, observed > limit); }
  void eq(const std::string& what, double observed, double expected) {
    add(what, observed, "==", expected, observed == expected);
  }
  void truth(const std::string& what, bool value) { eq(what, value ? 1.0 : 0.0, 1.0); }
  void relation(const std::string& what, double observed, const std::string& rel, double limit) {
    out_.push_back({what, observed, rel, limit, compare(observed, rel, limit)});
  }

 private:
  void add(const std::string& what, double observed, const char* rel, double limit, bool pass) {
    // NaN fails every relation above.
    out_.push_back({what, observed, rel, limit, pass});
  }
  std::vector<Check>& out_;
};

// Largest-error reduction of many comparisons to a single check.
struct Worst {
  double value = 0.0;
  std::string where;
  void offer(double v, const std::string& at) {
    if (!(v <= value)) {
      value = v;
      where = at;
    }
  }
};

std::string fmt(double v) { return csv_number(v); }

RadialMeasureModel measure_model(const char* g, const char* f, double r_min, double r_max) {
  return RadialMeasureModel(3, parse(g, "r"), parse(f, "r"), r_min, r_max);
}

void criterion1(Recorder& rec, int jobs) {
  const WarpedSpace space = preset_space("paper-sec4");
  double e11 = 0.0, e33 = 0.0, m11 = INFINITY, m33 = INFINITY;
  for (const CurvatureReport& c : sample_curvature(space, 101, jobs)) {
    const double t = c.t;
    e11 = std::max(e11, std::abs(c.ricf11 - (1 + 8 * t * t)));
    e33 = std::max(e33, std::abs(c.ricf33 - 4 * (1 / ((1 - 2 * t * t) * (1 - 2 * t * t)) - 1)));
    m11 = std::min(m11, c.ricf11);
    m33 = std::min(m33, c.ricf33);
  }
  rec.le("max |ricf11 - (1+8t^2)| on 101 points", e11, 1e-9);
  rec.le("max |ricf33 - 4((1-2t^2)^-2 - 1)| on 101 points", e33, 1e-9);
  rec.ge("min ricf11", m11, 0.0);
  rec.ge("min ricf33", m33, 0.0);
}

void criterion2(Recorder& rec, int jobs) {
  const WarpedSpace space = preset_space("paper-remark");
  double e33 = 0.0;
  for (const CurvatureReport& c : sample_curvature(space, 1001, jobs)) e33 = std::max(e33, std::abs(c.ricf33 - 1.5));
  rec.le("max |ricf33 - 3/2| on 1001 points of [-5, 5]", e33, 1e-9);
  const ComponentMinimum m = curvature_minimum(space, [](const CurvatureReport& c) { return c.ricf11; });
  rec.le("|min ricf11 - (1 - e^-1/2)|", std::abs(m.value - (1 - std::exp(-0.5))), 1e-6);
}

void criterion3(Recorder& rec, int) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Worst normalized, mixed;
  for (const char* name : {"paper-sec4", "paper-remark", "flat", "cylinder", "sphere"}) {
    const WarpedSpace space = preset_space(name);
    const double lo = space.t_min() + 0.05, hi = space.t_max() - 0.05;
    for (int i = 0; i < 20; ++i) {
      const double t = lo + (hi - lo) * unit(rng);
      const double rho = 0.1 + 2.8 * unit(rng);
      const CurvatureReport c = closed_form_curvature(space, t);
      const FdCurvature fd = fd_oracle_curvature(space, t, rho);
      const std::string at = std::string(name) + " t=" + fmt(t) + " rho=" + fmt(rho);
      const std::pair<double, double> pairs[] = {
          {fd.report.R1221, c.R1221},   {fd.report.R1331, c.R1331},   {fd.report.ric11, c.ric11},
          {fd.report.ric33, c.ric33},   {fd.report.ricf11, c.ricf11}, {fd.report.ricf33, c.ricf33},
          {fd.report.S, c.S},           {fd.report.lapf, c.lapf}};
      for (const auto& [a, b] : pairs) normalized.offer(std::abs(a - b) / std::max(1e-5 * std::abs(b), 1e-8), at);
      mixed.offer(fd.mixed_max, at);
    }
  }
  rec.le("max |fd - closed| / max(1e-5 |closed|, 1e-8) over 100 points (" + normalized.where + ")",
         normalized.value, 1.0);
  rec.le("max mixed Ricci / Hessian component (" + mixed.where + ")", mixed.value, 1e-6);
}

void criterion4(Recorder& rec, int jobs) {
  struct Cell {
    const char* model;
    double t0;
    int profile;
  };
  std::vector<Cell> cells;
  for (const auto& [name, t0] : std::vector<std::pair<const char*, double>>{
           {"paper-sec4", 0.0}, {"flat", 0.0}, {"paper-remark", 0.5}}) {
    for (int p = 0; p < 3; ++p) cells.push_back({name, t0, p});
  }
  const auto errors = parallel_map(cells.size(), jobs, [&](std::size_t i) {
    const Cell& c = cells[i];
    const WarpedSpace space = preset_space(c.model);
    const RadialProfile profile =
        c.profile == 0   ? RadialProfile::cosine_cap(2.0)
        : c.profile == 1 ? RadialProfile::expression(parse("1-(r/2)^2", "r"), 2.0)
                         : RadialProfile::expression(parse("(1-(r/2)^2)^2", "r"), 2.0);
    const double Q = second_variation_form(space, c.t0, profile);
    const double Qfd = second_variation_fd(space, c.t0, profile);
    return std::abs(Q - Qfd) / std::abs(Q);
  });
  Worst worst;
  const char* profiles[] = {"cosineCap(2)", "1-(r/2)^2", "(1-(r/2)^2)^2"};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    worst.offer(errors[i], std::string(cells[i].model) + " " + profiles[cells[i].profile]);
  }
  rec.le("max |Q - Q_fd| / |Q| over 3 models x 3 profiles (" + worst.where + ")", worst.value, 1e-4);

  // Flat slice, cosineCap(1): Q is the Dirichlet energy, 2 pi (pi^2/4)(1/4 + 1/pi^2).
  const double exact = kPi * kPi * kPi / 8 + kPi / 2;
  const WarpedSpace flat = preset_space("flat");
  const RadialProfile cap1 = RadialProfile::cosine_cap(1.0);
  const double energy = integrate_profile(
      cap1, [&](double r) { return 2 * kPi * r * cap1.derivative(r) * cap1.derivative(r); }, {});
  rec.le("flat: |Q - integral |grad lambda|^2| / Q", std::abs(second_variation_form(flat, 0.0, cap1) - energy) / energy,
         1e-6);
  rec.le("flat: |Q_fd - integral |grad lambda|^2| / Q", std::abs(second_variation_fd(flat, 0.0, cap1) - energy) / energy,
         1e-6);
  rec.le("flat: |integral |grad lambda|^2 - (pi^3/8 + pi/2)| / Q", std::abs(energy - exact) / exact, 1e-6);
}

void criterion5(Recorder& rec, int) {
  const WarpedSpace sec4 = preset_space("paper-sec4");
  const RadialProfile cap = RadialProfile::cosine_cap(2.0);
  Worst worst;
  for (double t0 : {-0.3, -0.1, 0.1, 0.25, 0.4}) {
    const double exact = first_variation(sec4, t0, cap);
    const double fd = first_variation_fd(sec4, t0, cap);
    worst.offer(std::abs(exact - fd) / std::abs(exact), "t0=" + fmt(t0));
  }
  rec.le("max relative |dA_f - first variation| at 5 non-minimal slices (" + worst.where + ")", worst.value, 1e-5);
  Worst root;
  int roots = 0;
  for (const char* name : {"paper-sec4", "paper-remark"}) {
    const WarpedSpace space = preset_space(name);
    for (const SliceShape& r : f_minimal_roots(space, 1e-14).roots) {
      ++roots;
      const double area = weighted_area(space, r.t0, cap, 0.0);
      const std::string at = std::string(name) + " t0=" + fmt(r.t0);
      root.offer(std::abs(first_variation(space, r.t0, cap)) / area, at);
      root.offer(std::abs(first_variation_fd(space, r.t0, cap)) / area, at);
    }
  }
  rec.eq("f-minimal roots found (sec4, remark)", roots, 2.0);
  rec.le("max |first variation| / A_f at f-minimal roots (" + root.where + ")", root.value, 1e-9);
}

void criterion6(Recorder& rec, int jobs) {
  const WarpedSpace flat = preset_space("flat");
  for (double rho : {1.0, 2.0}) {
    const SpectralResult r = stability_spectrum(flat, 0.0, rho);
    rec.le("flat rho_max=" + fmt(rho) + ": |mu1 rho_max^2 - 5.7832|", std::abs(r.mu1 * rho * rho - kBesselZeroSq),
           1e-3);
    rec.le("flat rho_max=" + fmt(rho) + ": grid-doubling delta / (1 + |mu1|)",
           r.convergenceDelta / (1 + std::abs(r.mu1)), 1e-6);
  }
  const WarpedSpace sec4 = preset_space("paper-sec4");
  const std::vector<double> radii = {1.0, 2.0, 4.0};
  const auto results = parallel_map(radii.size(), jobs, [&](std::size_t i) {
    return stability_spectrum(sec4, 0.0, radii[i]);
  });
  for (std::size_t i = 0; i < radii.size(); ++i) {
    rec.eq("sec4 t0=0 rho_max=" + fmt(radii[i]) + ": negCount", static_cast<double>(results[i].negCount), 0.0);
  }
}

void criterion7(Recorder& rec, int) {
  const WarpedSpace space = preset_space("paper-sec4");
  const FlowTrace trace = evolve(space, 0.0, 0.4, 200);
  rec.le("max Riccati residual on [0, 0.4]", trace.max_residual(), 1e-8);
  rec.le("|Htilde(0.4) + 64/85|", std::abs(trace.htildeOde.back() + 64.0 / 85.0), 1e-6);
  rec.le("max Htilde", trace.max_htilde(), 1e-10);
  double rise = 0.0;
  for (std::size_t i = 1; i < trace.areaWindow.size(); ++i) rise = std::max(rise, trace.areaWindow[i] - trace.areaWindow[i - 1]);
  rec.le("max step increase of the windowed weighted area", rise, 0.0);
}

void criterion8(Recorder& rec, int) {
  const Expr quad = parse("2*r", "r");
  const double a = 100.0;
  const double expected = 2.0 / std::log(a);
  rec.le("|E(100) - 2/log 100| / (2/log 100)", std::abs(cutoff_energy(quad, a) - expected) / expected, 1e-6);
  const DecayFit fit = decay_fit(quad, {1e2, 1e3, 1e4, 1e5});
  rec.le("|slope - 1| on a in {1e2, 1e3, 1e4, 1e5}", std::abs(fit.slope - 1.0), 0.05);
}

void criterion9(Recorder& rec, int jobs) {
  const ComparisonReport flat = sphere_area_ratio(measure_model("r^2", "0", 0.1, 10.0), 1.0, 2.0, 3.0);
  rec.le("flat: |margin|", std::abs(flat.margin), 1e-12);
  rec.le("flat: |ratio - 4|", std::abs(flat.ratio - 4.0), 1e-12);

  const ComparisonReport sphere = sphere_area_ratio(measure_model("sin(r)^2", "0", 0.1, 3.1), 0.5, 1.0, 1.02);
  rec.ge("sphere: margin", sphere.margin, 0.0);
  rec.truth("sphere: Ric_f >= 0 verified by the curvature engine", sphere.applicable);

  const ComparisonReport bumped =
      sphere_area_ratio(measure_model("sin(r)^2", "0.1*cos(r)", 0.1, 3.1), 0.5, 1.0, 1.02);
  rec.ge("perturbed sphere: margin", bumped.margin, 0.0);
  rec.truth("perturbed sphere: Ric_f >= 0 verified by the curvature engine", bumped.applicable);

  struct GrowthCase {
    const char* label;
    const char* g;
    const char* f;
    double r_max;
    QuadratureSpec quad;
  };
  const std::vector<GrowthCase> cases = {
      {"flat", "r^2", "0", 10.0, {}},
      {"sphere", "sin(r)^2", "0", 3.1, {}},
      {"flat with f = sin r", "r^2", "sin(r)", 200.0, {40001, 1e-8}},
  };
  const auto growth = parallel_map(cases.size(), jobs, [&](std::size_t i) {
    const GrowthCase& c = cases[i];
    return polynomial_growth_check(measure_model(c.g, c.f, 0.1, c.r_max), 64, c.quad);
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    rec.le(std::string(cases[i].label) + ": ball-volume growth slope", growth[i].slope, 3.05);
    rec.truth(std::string(cases[i].label) + ": bounded weight", growth[i].boundedWeight);
  }
}

void criterion10(Recorder& rec, int jobs) {
  const std::vector<double> ts = {1e-4, 1e-3, 1e-2};
  const Expr sin_r = parse("sin(r)", "r");
  struct Row {
    double min_ricf = 0.0, christoffel = 0.0, gap_margin = INFINITY;
  };
  const auto rows = parallel_map(ts.size(), jobs, [&](std::size_t i) {
    Row row;
    const ConformalProbe p = ConformalProbe::make(1.0, 7.0 / 8.0, ts[i]);
    row.min_ricf = scan_annulus(p, 200).min_ricf_t;
    for (double r : p.annulus_samples(200)) row.christoffel = std::max(row.christoffel, conformal_christoffel_check(p, r));
    const ConformalProbe q = ConformalProbe::make(1.0, 7.0 / 8.0, ts[i], sin_r);
    for (double r : q.annulus_samples(200)) {
      const HessianGap h = conformal_hessian_gap(q, r);
      row.gap_margin = std::min(row.gap_margin, h.gap - h.bound);
    }
    return row;
  });
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string at = "t=" + fmt(ts[i]);
    rec.gt(at + ": min Ric_f^t over 200 samples x 2 directions", rows[i].min_ricf, 0.0);
    rec.le(at + ": max Christoffel-law discrepancy", rows[i].christoffel, 1e-12);
    rec.ge(at + ": min (Hessian gap - bound), f = sin r", rows[i].gap_margin, 0.0);
  }
}

void criterion11(Recorder& rec, int) {
  const auto corpus = expr_corpus(1000, 6, 20240611);
  double round_trip_failures = 0.0, worst = 0.0;
  for (const CorpusEntry& entry : corpus) {
    const Expr s = simplify(entry.expr);
    if (!structurally_equal(parse(render(s), "x"), s)) ++round_trip_failures;
    const Expr d = differentiate(entry.expr);
    for (double x : entry.points) {
      const double exact = d.eval(x);
      const double h = 1e-4 * (std::abs(x) + 1.0);
      worst = std::max(worst, std::abs(exact - central_difference(entry.expr, x, h)) / std::max(1.0, std::abs(exact)));
    }
  }
  rec.eq("corpus size", static_cast<double>(corpus.size()), 1000.0);
  rec.eq("round-trip failures", round_trip_failures, 0.0);
  rec.le("max |d/dx symbolic - FD| / max(1, |d|)", worst, 1e-7);
}

struct CriterionSpec {
  int id;
  const char* title;
  double budget;
  void (*body)(Recorder&, int);
};

const std::vector<CriterionSpec>& specs() {
  static const std::vector<CriterionSpec> table = {
      {1, "hyperbolic example curvature", 1.0, criterion1},
      {2, "positive-curvature example curvature", 1.0, criterion2},
      {3, "closed form vs finite-difference tensor", 10.0, criterion3},
      {4, "second variation vs area oracle", 30.0, criterion4},
      {5, "first variation", 0.0, criterion5},
      {6, "stability spectrum", 0.0, criterion6},
      {7, "normal flow", 0.0, criterion7},
      {8, "logarithmic cutoff decay", 0.0, criterion8},
      {9, "weighted comparison and growth", 0.0, criterion9},
      {10, "conformal perturbation", 0.0, criterion10},
      {11, "parser and derivative corpus", 0.0, criterion11},
  };
  return table;
}

template <class Fn>
CriterionResult timed(int id, const std::string& title, double budget, Fn&& body) {
  CriterionResult result;
  result.id = id;
  result.title = title;
  result.budget_seconds = budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    Recorder rec(result.checks);
    body(rec);
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.pass = result.error.empty() && !result.checks.empty() &&
                std::all_of(result.checks.begin(), result.checks.end(), [](const Check& c) { return c.pass; });
  if (budget > 0.0 && result.seconds >= budget) result.pass = false;
  return result;
}

const std::vector<std::string>& sections_of(const std::string& command) {
  static const std::vector<std::string> space = {"space"};
  static const std::vector<std::string> variation = {"space", "variation"};
  static const std::vector<std::string> spectrum = {"space", "spectrum"};
  static const std::vector<std::string> flow = {"space", "flow"};
  static const std::vector<std::string> asym = {"asymptotics"};
  static const std::vector<std::string> conformal = {"conformal"};
  if (command == "variation") return variation;
  if (command == "spectrum") return spectrum;
  if (command == "flow") return flow;
  if (command == "cutoff" || command == "compare") return asym;
  if (command == "conformal") return conformal;
  return space;
}


// Scalar at a JSON pointer; booleans count as 0 / 1 and arrays by their
// extreme ("min" for >= / >, "max" otherwise).
double scalar_at(const json& body, const std::string& pointer, const std::string& relation) {
  const json& v = body.at(json::json_pointer(pointer));
  if (v.is_boolean()) return v.get<bool>() ? 1.0 : 0.0;
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && !v.empty()) {
    const bool lower = relation == ">=" || relation == ">";
    double out = v.front().get<double>();
    for (const json& x : v) out = lower ? std::min(out, x.get<double>()) : std::max(out, x.get<double>());
    return out;
  }
  throw ConfigError("'" + pointer + "' is not numeric");
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (const CriterionSpec& s : specs()) ids.push_back(s.id);
  return ids;
}

CriterionResult run_criterion(int id, int jobs) {
  for (const CriterionSpec& s : specs()) {
    if (s.id == id) return timed(s.id, s.title, s.budget, [&](Recorder& rec) { s.body(rec, jobs); });
  }
  throw PreconditionError("no acceptance criterion " + std::to_string(id));
}

// A scenario file lists the subcommands to run ("commands"; by default every
// subcommand whose sections are present) and optional "checks":
// [{"command": "curvature", "field": "/minEig", "relation": ">=", "value": 0}].
std::vector<CriterionResult> scenario_checks(const std::string& dir, int jobs) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CriterionResult> out;
  for (const auto& path : files) {
    const std::string file = path.filename().string();
    std::optional<ScenarioConfig> cfg;
    try {
      cfg = ScenarioConfig::load(path.string());
    } catch (const std::exception& e) {
      CriterionResult bad;
      bad.title = file;
      bad.error = e.what();
      out.push_back(bad);
      continue;
    }
    const json& doc = cfg->doc();
    std::vector<std::string> commands;
    if (doc.contains("commands")) {
      commands = doc.at("commands").get<std::vector<std::string>>();
    } else {
      for (const std::string& c : command_names()) {
        if (c == "verify-all") continue;
        const auto& need = sections_of(c);
        if (std::all_of(need.begin(), need.end(), [&](const std::string& s) { return doc.contains(s); })) {
          commands.push_back(c);
        }
      }
    }
    for (const std::string& command : commands) {
      out.push_back(timed(0, file + " " + command, 0.0, [&](Recorder& rec) {
        CommandOptions options;
        options.command = command;
        options.jobs = jobs;
        const json body = command_body(command, *cfg, options, "");
        rec.truth(command + " completed", true);
        if (!doc.contains("checks")) return;
        for (const json& c : doc.at("checks")) {
          if (c.value("command", "") != command) continue;
          const std::string field = c.at("field").get<std::string>();
          const std::string relation = c.value("relation", "==");
          const double limit = c.at("value").is_boolean() ? (c.at("value").get<bool>() ? 1.0 : 0.0)
                                                           : c.at("value").get<double>();
          rec.relation(command + " " + field, scalar_at(body, field, relation), relation, limit);
        }
      }));
    }
  }
  return out;
}

json to_json(const CriterionResult& r) {
  json checks = json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"what", c.what}, {"observed", c.observed}, {"relation", c.relation}, {"limit", c.limit},
                      {"pass", c.pass}});
  }
  json out = {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"checks", checks}, {"seconds", r.seconds}};
  if (r.budget_seconds > 0.0) out["budget_seconds"] = r.budget_seconds;
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream s;
  s << "criterion " << r.id << ' ' << (r.pass ? "PASS" : "FAIL") << ' ' << r.title << " (" << r.checks.size()
    << " checks, " << r.seconds << " s";
  if (r.budget_seconds > 0.0) s << " of " << r.budget_seconds << " s";
  s << ')';
  if (!r.error.empty()) s << " error: " << r.error;
  for (const Check& c : r.checks) {
    if (!c.pass) s << "\n    failed: " << c.what << ": " << c.observed << ' ' << c.relation << ' ' << c.limit;
  }
  return s.str();
}

}  // namespace fminlab
