#include "fminlab/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "fminlab/asymptotics.hpp"
#include "fminlab/conformal.hpp"
#include "fminlab/csv.hpp"
#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"
#include "fminlab/hypersurface.hpp"
#include "fminlab/normal_flow.hpp"
#include "fminlab/parallel.hpp"
#include "fminlab/scenario.hpp"
#include "fminlab/spectrum.hpp"
#include "fminlab/variation.hpp"
#include "fminlab/verify.hpp"

namespace fminlab {

using nlohmann::json;

namespace {

class CsvWriter {
 public:
  CsvWriter(const std::string& dir, const std::string& name, const std::string& header) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    path_ = (std::filesystem::path(dir) / name).string();
    file_.open(path_, std::ios::binary);
    if (!file_) throw ConfigError("cannot write '" + path_ + "'");
    file_ << header << "\r\n";
  }
  void row(const std::string& line) {
    if (file_.is_open()) file_ << line << "\r\n";
  }
  json record() const { return path_.empty() ? json() : json(path_); }

 private:
  std::string path_;
  std::ofstream file_;
};

int sample_count(const CommandOptions& o, int fallback) {
  const int n = o.samples.value_or(fallback);
  if (n < 2) throw ConfigError("--samples must be at least 2");
  return n;
}

double grid_point(double lo, double hi, int i, int n) {
  return i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
}

json curvature_body(const ScenarioConfig& cfg, const CommandOptions& o, const std::string& csv) {
  const WarpedSpace space = cfg.space();
  const int n = sample_count(o, 101);
  const auto reports = sample_curvature(space, n, o.jobs);
  CsvWriter out(csv, "curvature.csv", curvature_csv_header());
  json t = json::array(), f11 = json::array(), f33 = json::array(), u11 = json::array();
  double min_eig = reports.front().minEig, min_t = reports.front().t;
  bool nonneg = true;
  for (const CurvatureReport& c : reports) {
    t.push_back(c.t);
    f11.push_back(c.ricf11);
    f33.push_back(c.ricf33);
    u11.push_back(c.unitf11);
    if (c.minEig < min_eig) {
      min_eig = c.minEig;
      min_t = c.t;
    }
    nonneg = nonneg && c.nonnegative();
    out.row(curvature_csv_row(c));
  }
  return {{"samples", n}, {"t", t},         {"ricf11", f11},   {"ricf33", f33}, {"unitf11", u11},
          {"minEig", min_eig}, {"minEig_t", min_t}, {"ricf_nonnegative", nonneg}, {"csv", out.record()}};
}

json shape_json(const SliceShape& s) {
  return {{"t0", s.t0}, {"principal", s.principal}, {"normSqA", s.normSqA}, {"H", s.H}, {"fn", s.fn},
          {"residual", s.residual}, {"totallyGeodesic", s.totallyGeodesic}, {"KSlice", s.KSlice}};
}

json slice_body(const ScenarioConfig& cfg, const CommandOptions& o, const std::string& csv) {
  const WarpedSpace space = cfg.space();
  const double t0 = cfg.slice_t0();
  const double tol = o.tol.value_or(1e-12);
  json body = shape_json(slice_shape(space, t0));
  const RootScan scan = f_minimal_roots(space, tol);
  json roots = json::array();
  for (const SliceShape& r : scan.roots) roots.push_back(r.t0);
  body["roots"] = roots;
  body["identicallyMinimal"] = scan.identicallyMinimal;
  body["root_tol"] = tol;
  if (body["totallyGeodesic"].get<bool>()) {
    const GaussCheck g = gauss_identity_check(space, t0);
    body["gauss"] = {{"discrepancy", g.discrepancy}, {"twoK", g.twoK}, {"S", g.S}, {"ricnn", g.ricnn},
                     {"weighted_checked", g.weightedChecked}, {"weighted_discrepancy", g.weightedDiscrepancy}};
  }
  const int n = sample_count(o, 101);
  CsvWriter out(csv, "slices.csv", slice_csv_header());
  for (int i = 0; i < n; ++i) out.row(slice_csv_row(slice_shape(space, grid_point(space.t_min(), space.t_max(), i, n))));
  body["samples"] = n;
  body["csv"] = out.record();
  return body;
}

json variation_body(const ScenarioConfig& cfg, const CommandOptions&, const std::string& csv) {
  const WarpedSpace space = cfg.space();
  const double t0 = cfg.slice_t0();
  const VariationSettings v = cfg.variation();
  const QuadratureSpec quad = cfg.quadrature();
  const SliceShape shape = slice_shape(space, t0);
  json body = {{"t0", t0}, {"profile", v.echo}, {"residual", shape.residual}};
  body["area"] = weighted_area(space, t0, v.profile, 0.0, quad);
  body["first_variation"] = first_variation(space, t0, v.profile, quad);
  body["first_variation_fd"] = first_variation_fd(space, t0, v.profile, {1e-3, 5e-4, 2.5e-4}, quad);
  if (std::abs(shape.residual) <= 1e-8) {
    const double Q = second_variation_form(space, t0, v.profile, quad);
    const double Qfd = second_variation_fd(space, t0, v.profile, {1e-2, 5e-3, 2.5e-3}, quad);
    body["Q"] = Q;
    body["Q_fd"] = Qfd;
    body["rel_err"] = std::abs(Q - Qfd) / std::max(std::abs(Q), 1e-300);
    body["stable_direction"] = Q >= 0.0;
  } else {
    body["Q"] = nullptr;
    body["Q_fd"] = nullptr;
    body["rel_err"] = nullptr;
    body["note"] = "slice is not f-minimal; the second variation is not defined";
  }
  // (s, A_f(s)) with the graph kept inside the domain.
  const double reach = v.profile.max_abs();
  const double room = std::min(t0 - space.t_min(), space.t_max() - t0);
  const double s_max = std::min(0.1, 0.9 * room / reach);
  CsvWriter out(csv, "variation_area.csv", "s,A_f");
  constexpr int n = 41;
  for (int i = 0; i < n && s_max > 0.0; ++i) {
    const double s = -s_max + 2.0 * s_max * i / (n - 1);
    out.row(csv_join({s, weighted_area(space, t0, v.profile, s, quad)}));
  }
  body["csv"] = out.record();
  return body;
}

json spectrum_body(const ScenarioConfig& cfg, const CommandOptions&, const std::string&) {
  const WarpedSpace space = cfg.space();
  const double t0 = cfg.slice_t0();
  const SpectrumSettings s = cfg.spectrum();
  const SpectralResult r = stability_spectrum(space, t0, s.rho_max, s.grid);
  return {{"t0", t0},           {"mu1", r.mu1},       {"negCount", r.negCount},
          {"rhoMax", r.rhoMax}, {"grid", r.gridSize}, {"start_grid", s.grid},
          {"convergenceDelta", r.convergenceDelta}, {"stable", r.negCount == 0}};
}

json flow_body(const ScenarioConfig& cfg, const CommandOptions&, const std::string& csv) {
  const WarpedSpace space = cfg.space();
  const double t0 = cfg.slice_t0();
  const FlowSettings f = cfg.flow();
  const FlowTrace trace = evolve(space, t0, f.t1, f.steps, f.rho_max, cfg.quadrature());
  const MonotonicityReport rep = monotonicity_report(space, t0, f.t1, f.rho_max, f.steps);
  CsvWriter out(csv, "flow.csv", flow_csv_header());
  for (std::size_t i = 0; i < trace.t.size(); ++i) out.row(flow_csv_row(trace, i));
  return {{"t0", t0},
          {"t1", f.t1},
          {"steps", f.steps},
          {"substeps", trace.substeps},
          {"max_Htilde", trace.max_htilde()},
          {"max_residual", trace.max_residual()},
          {"Htilde_final", trace.htildeOde.back()},
          {"area_monotone", rep.areaMonotone},
          {"htilde_nonpositive", rep.htildeNonpositive},
          {"hypothesis_ok", rep.hypothesisOk},
          {"htilde_vanishes", rep.htildeVanishes},
          {"rigidity", rep.rigidity},
          {"messages", rep.messages},
          {"csv", out.record()}};
}

json cutoff_body(const ScenarioConfig& cfg, const CommandOptions&, const std::string& csv) {
  const AsymptoticsSettings a = cfg.asymptotics();
  const DecayFit fit = decay_fit(a.growth_derivative, a.a_grid, cfg.quadrature());
  CsvWriter out(csv, "cutoff.csv", "a,E,E_log_a");
  for (std::size_t i = 0; i < fit.a.size(); ++i) out.row(csv_join({fit.a[i], fit.E[i], fit.E_log_a[i]}));
  return {{"growth_derivative", render(a.growth_derivative)},
          {"a", fit.a},
          {"E", fit.E},
          {"E_log_a", fit.E_log_a},
          {"slope", fit.slope},
          {"hypothesis_violated", fit.hypothesisViolated},
          {"warning", fit.warning},
          {"csv", out.record()}};
}

json compare_body(const ScenarioConfig& cfg, const CommandOptions& o, const std::string& csv) {
  const AsymptoticsSettings a = cfg.asymptotics();
  const QuadratureSpec quad = cfg.quadrature();
  const ComparisonReport r = sphere_area_ratio(a.model, a.r1, a.r2, a.R);
  json body = {{"r1", a.r1},
               {"r2", a.r2},
               {"R", a.R},
               {"ratio", r.ratio},
               {"bound", r.bound},
               {"AR", r.AR},
               {"margin", r.margin},
               {"hypothesis_checked", r.hypothesisChecked},
               {"hypothesis_ok", r.hypothesisOk},
               {"applicable", r.applicable}};
  if (a.growth) {
    const GrowthCheck g = polynomial_growth_check(a.model, a.growth_points, quad);
    body["growth"] = {{"slope", g.slope},
                      {"order_limit", a.model.m() + 0.05},
                      {"within_order", g.withinOrder},
                      {"bounded_weight", g.boundedWeight},
                      {"hypothesis_ok", g.hypothesisOk}};
  }
  const int n = sample_count(o, 101);
  CsvWriter out(csv, "growth.csv", "r,A_f,V_f");
  if (!csv.empty()) {
    const auto rows = parallel_map(static_cast<std::size_t>(n), o.jobs, [&](std::size_t i) {
      const double r = grid_point(a.model.r_min(), a.model.r_max(), static_cast<int>(i), n);
      return csv_join({r, a.model.sphere_area(r), ball_volume(a.model, r, quad)});
    });
    for (const auto& row : rows) out.row(row);
  }
  body["csv"] = out.record();
  return body;
}

const char* direction_name(Direction d) { return d == Direction::Radial ? "radial" : "tangential"; }

json conformal_body(const ScenarioConfig& cfg, const CommandOptions& o, const std::string& csv) {
  const ConformalSettings c = cfg.conformal();
  const int n = o.samples.value_or(c.samples);
  if (n < 1) throw ConfigError("annulus sample count must be positive");
  CsvWriter out(csv, "conformal.csv", "t,r,ricf_radial,ricf_tangential,gap,gap_bound");
  json mins = json::array(), runs = json::array();
  bool positive = true;
  for (double t : c.t) {
    const ConformalProbe p = ConformalProbe::make(c.R, c.a, t, c.weight);
    const AnnulusScan scan = scan_annulus(p, n);
    double christoffel = 0.0;
    bool gap_ok = true;
    for (double r : p.annulus_samples(n)) {
      christoffel = std::max(christoffel, conformal_christoffel_check(p, r));
      const HessianGap gap = conformal_hessian_gap(p, r);
      gap_ok = gap_ok && gap.gap >= gap.bound;
      out.row(csv_join({t, r, conformal_ricci_f(p, r, Direction::Radial),
                        conformal_ricci_f(p, r, Direction::Tangential), gap.gap, gap.bound}));
    }
    mins.push_back(scan.min_ricf_t);
    positive = positive && scan.min_ricf_t > 0.0;
    runs.push_back({{"t", t},
                    {"min_ricf_t", scan.min_ricf_t},
                    {"argmin_r", scan.argmin_r},
                    {"argmin_direction", direction_name(scan.argmin_direction)},
                    {"christoffel_max", christoffel},
                    {"hessian_gap_holds", gap_ok}});
  }
  const ConformalProbe p = ConformalProbe::make(c.R, c.a, c.t.front(), c.weight);
  return {{"t", c.t},
          {"min_ricf_t", mins},
          {"annulus", {p.a * p.R, p.R}},
          {"samples_per_direction", n},
          {"weight", render(c.weight)},
          {"positive", positive},
          {"runs", runs},
          {"csv", out.record()}};
}

json verify_body(const ScenarioConfig* cfg, const CommandOptions& o, bool* all_pass) {
  json criteria = json::array();
  *all_pass = true;
  for (int id : criterion_ids()) {
    const CriterionResult r = run_criterion(id, o.jobs);
    *all_pass = *all_pass && r.pass;
    criteria.push_back(to_json(r));
  }
  json body = {{"criteria", criteria}};
  if (o.config && std::filesystem::is_directory(*o.config)) {
    json scenarios = json::array();
    for (const CriterionResult& r : scenario_checks(*o.config, o.jobs)) {
      *all_pass = *all_pass && r.pass;
      scenarios.push_back(to_json(r));
    }
    body["scenarios"] = scenarios;
  }
  (void)cfg;
  body["all_pass"] = *all_pass;
  return body;
}

using BodyFn = json (*)(const ScenarioConfig&, const CommandOptions&, const std::string&);

BodyFn body_fn(const std::string& command) {
  if (command == "curvature") return curvature_body;
  if (command == "slice") return slice_body;
  if (command == "variation") return variation_body;
  if (command == "spectrum") return spectrum_body;
  if (command == "flow") return flow_body;
  if (command == "cutoff") return cutoff_body;
  if (command == "compare") return compare_body;
  if (command == "conformal") return conformal_body;
  return nullptr;
}

void write_report(const json& report, const std::optional<std::string>& path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (!path) {
    out << text;
    return;
  }
  const std::filesystem::path p(*path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary);
  if (!file) throw ConfigError("cannot write report '" + *path + "'");
  file << text;
}

void print_checks(const json& criterion, std::ostream& err) {
  for (const json& c : criterion["checks"]) {
    err << "      " << (c["pass"].get<bool>() ? "ok  " : "FAIL") << "  " << c["what"].get<std::string>() << ": "
        << c["observed"].dump() << ' ' << c["relation"].get<std::string>() << ' ' << c["limit"].dump() << "\n";
  }
  if (criterion.contains("error")) err << "      error: " << criterion["error"].get<std::string>() << "\n";
}

}  // namespace

std::vector<std::string> command_names() {
  return {"curvature", "slice", "variation", "spectrum", "flow", "cutoff", "compare", "conformal", "verify-all"};
}

json command_body(const std::string& command, const ScenarioConfig& config, const CommandOptions& options,
                  const std::string& csv_dir) {
  const BodyFn fn = body_fn(command);
  if (!fn) throw ConfigError("unknown subcommand '" + command + "'");
  return fn(config, options, csv_dir);
}

int run_command(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    if (o.config && o.preset) throw ConfigError("--config and --preset are mutually exclusive");
    if (o.jobs < 1) throw ConfigError("--jobs must be at least 1");
    const bool verify = o.command == "verify-all";
    if (!verify && !body_fn(o.command)) throw ConfigError("unknown subcommand '" + o.command + "'");

    std::optional<ScenarioConfig> cfg;
    if (o.preset) {
      cfg = ScenarioConfig::preset(*o.preset);
    } else if (o.config && !(verify && std::filesystem::is_directory(*o.config))) {
      cfg = ScenarioConfig::load(*o.config);
    } else if (!verify) {
      throw ConfigError("a scenario is required: pass --config <path> or --preset <name>");
    }
    if (cfg && o.tol) cfg->set("/quadrature/tol", *o.tol);

    json inputs = cfg ? cfg->doc() : json::object();
    json flags = json::object();
    if (o.samples) flags["samples"] = *o.samples;
    if (o.tol) flags["tol"] = *o.tol;
    if (verify && o.config) flags["scenario_dir"] = *o.config;

    std::optional<std::string> report_path = o.out;
    if (!report_path && cfg) report_path = cfg->report_path();
    std::string csv_dir = o.csv_dir.value_or(cfg ? cfg->csv_dir().value_or("") : "");

    bool ok = true;
    json body = verify ? verify_body(cfg ? &*cfg : nullptr, o, &ok) : command_body(o.command, *cfg, o, csv_dir);

    json report = body;
    report["command"] = o.command;
    report["inputs"] = {{"config", inputs}, {"flags", flags}};
    report["tool_version"] = kToolVersion;
    report["config_digest"] = config_digest(report["inputs"]);
    report["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    write_report(report, report_path, out);
    if (report_path) err << o.command << ": report written to " << *report_path << "\n";

    if (verify) {
      for (const json& c : body["criteria"]) {
        err << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  criterion " << c["id"].get<int>() << "  "
            << c["title"].get<std::string>() << "\n";
        print_checks(c, err);
      }
      if (body.contains("scenarios")) {
        for (const json& c : body["scenarios"]) {
          err << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  scenario  " << c["title"].get<std::string>()
              << "\n";
          print_checks(c, err);
        }
      }
      if (!ok) {
        err << "verify-all: invariant failures detected\n";
        return 2;
      }
    }
    return 0;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const EvalDomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ContractViolation& e) {
    err << "contract failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "contract failure: unexpected error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fminlab
