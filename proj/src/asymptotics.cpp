#include "fminlab/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"

namespace fminlab {

namespace {

double unit_sphere_area(int m) {
  // Area of S^{m-1} in R^m.
  return 2.0 * std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0);
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ContractViolation("degenerate fit: abscissae coincide");
  return (n * sxy - sx * sy) / den;
}

}  // namespace

RadialMeasureModel::RadialMeasureModel(int m, Expr warp, Expr weight, double r_min, double r_max)
    : m_(m), warp_(std::move(warp)), weight_(std::move(weight)), r_min_(r_min), r_max_(r_max) {
  if (m < 2) throw PreconditionError("ambient dimension must be at least 2");
  if (!(r_min > 0.0)) throw PreconditionError("r_min must be positive (pole excluded)");
  if (!(r_min < r_max)) throw PreconditionError("domain must satisfy r_min < r_max");
  constexpr int n = 2001;
  for (int i = 0; i < n; ++i) {
    const double r = r_min + (r_max - r_min) * i / (n - 1);
    if (!(warp_.eval(r) > 0.0)) throw PreconditionError("warp must be positive");
    const double f = weight_.eval(r);
    if (!std::isfinite(f)) throw PreconditionError("weight must be bounded");
    sup_f_ = std::max(sup_f_, std::abs(f));
  }
}

double RadialMeasureModel::sphere_area(double r) const {
  return unit_sphere_area(m_) * std::pow(warp_.eval(r), (m_ - 1) / 2.0) * std::exp(-weight_.eval(r));
}

bool RadialMeasureModel::ricf_nonnegative(bool* checked) const {
  if (m_ != 3) {
    if (checked) *checked = false;
    return false;
  }
  if (checked) *checked = true;
  // dr^2 + g(r) ds^2_{S^2} is the warped space over the round base.
  const WarpedSpace space(1, warp_, weight_, r_min_, r_max_);
  for (const auto& c : sample_curvature(space, 1001)) {
    if (!c.nonnegative(1e-9)) return false;
  }
  return true;
}

double cutoff_energy(const Expr& growth_derivative, double a, const QuadratureSpec& quad) {
  if (!(a > 1.0)) throw PreconditionError("cutoff needs a > 1");
  const double la = std::log(a);
  for (int i = 0; i <= 1000; ++i) {
    const double r = std::exp(la + la * i / 1000.0);
    if (growth_derivative.eval(r) < 0.0) throw PreconditionError("V' must be nonnegative on [a, a^2]");
  }
  // r = e^u, dr = r du.
  auto integrand = [&](double u) {
    const double r = std::exp(u);
    return growth_derivative.eval(r) / r;
  };
  return integrate(integrand, la, 2.0 * la, quad).value / (la * la);
}

DecayFit decay_fit(const Expr& growth_derivative, const std::vector<double>& a_grid,
                   const QuadratureSpec& quad) {
  if (a_grid.size() < 4) throw PreconditionError("decay fit needs at least 4 points");
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > std::numbers::e)) throw PreconditionError("decay fit needs every a > e");
    if (i > 0 && !(a_grid[i] > a_grid[i - 1])) throw PreconditionError("a grid must increase");
  }
  DecayFit fit;
  fit.a = a_grid;
  std::vector<double> x, y;
  for (double a : a_grid) {
    const double E = cutoff_energy(growth_derivative, a, quad);
    fit.E.push_back(E);
    fit.E_log_a.push_back(E * std::log(a));
    x.push_back(std::log(1.0 / std::log(a)));
    y.push_back(E > 0.0 ? std::log(E) : -std::numeric_limits<double>::infinity());
  }
  bool all_equal = true;
  for (double E : fit.E) all_equal = all_equal && E == fit.E.front();
  if (all_equal || !std::isfinite(y.front())) throw ContractViolation("degenerate fit: energies do not vary");
  for (double v : y) {
    if (!std::isfinite(v)) throw ContractViolation("degenerate fit: zero energy");
  }
  fit.slope = slope_fit(x, y);
  if (std::abs(fit.slope - 1.0) > 0.05) {
    fit.hypothesisViolated = true;
    fit.warning = "cutoff energy does not decay like 1/log a (slope " + std::to_string(fit.slope) +
                  "); quadratic weighted growth V(r) <= C r^2 appears violated";
  }
  return fit;
}

ComparisonReport sphere_area_ratio(const RadialMeasureModel& model, double r1, double r2, double R) {
  if (!(model.r_min() <= r1 && r1 < r2 && r2 < R && 3.0 * R <= model.r_max())) {
    throw PreconditionError("need r_min <= r1 < r2 < R <= r_max / 3");
  }
  ComparisonReport rep;
  rep.ratio = model.sphere_area(r2) / model.sphere_area(r1);
  double sup = 0.0;
  constexpr int n = 2001;
  const double hi = 3.0 * R;
  for (int i = 0; i < n; ++i) {
    const double r = model.r_min() + (hi - model.r_min()) * i / (n - 1);
    sup = std::max(sup, std::abs(model.weight().eval(r)));
  }
  rep.AR = sup;
  rep.bound = std::exp(4.0 * sup) * std::pow(r2 / r1, model.m() - 1);
  rep.margin = rep.bound - rep.ratio;
  rep.hypothesisOk = model.ricf_nonnegative(&rep.hypothesisChecked);
  rep.applicable = rep.hypothesisChecked && rep.hypothesisOk;
  return rep;
}

double ball_volume(const RadialMeasureModel& model, double r, const QuadratureSpec& quad) {
  if (!(r >= model.r_min() && r <= model.r_max())) throw PreconditionError("radius outside domain");
  if (r == model.r_min()) return 0.0;
  return integrate([&](double s) { return model.sphere_area(s); }, model.r_min(), r, quad).value;
}

GrowthCheck polynomial_growth_check(const RadialMeasureModel& model, int points,
                                    const QuadratureSpec& quad) {
  if (points < 4) throw PreconditionError("growth fit needs at least 4 radii");
  const double lo = 0.5 * (model.r_min() + model.r_max());
  const double hi = model.r_max();
  std::vector<double> x, y;
  double volume = ball_volume(model, lo, quad);
  double prev = lo;
  for (int i = 0; i < points; ++i) {
    const double r = lo + (hi - lo) * i / (points - 1);
    if (r > prev) {
      volume += integrate([&](double s) { return model.sphere_area(s); }, prev, r, quad).value;
      prev = r;
    }
    x.push_back(std::log(r));
    y.push_back(std::log(volume));
  }
  GrowthCheck out;
  out.slope = slope_fit(x, y);
  out.boundedWeight = std::isfinite(model.sup_abs_weight());
  out.hypothesisOk = out.boundedWeight && model.ricf_nonnegative();
  out.withinOrder = out.slope <= model.m() + 0.05;
  return out;
}

}  // namespace fminlab
