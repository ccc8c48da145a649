#pragma once

#include <string>
#include <vector>

#include "fminlab/expr.hpp"
#include "fminlab/quadrature.hpp"

namespace fminlab {

// Rotationally symmetric space dr^2 + g(r) ds^2_{S^{m-1}} with weight f(r),
// pole excluded (r_min > 0).
class RadialMeasureModel {
 public:
  RadialMeasureModel(int m, Expr warp, Expr weight, double r_min, double r_max);

  int m() const noexcept { return m_; }
  const Expr& warp() const noexcept { return warp_; }
  const Expr& weight() const noexcept { return weight_; }
  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  double sup_abs_weight() const noexcept { return sup_f_; }

  // omega_{m-1} g^{(m-1)/2} e^{-f}
  double sphere_area(double r) const;
  // Ric_f >= 0 on the domain, decided through the curvature engine (m = 3
  // only; returns false otherwise and sets *checked to false).
  bool ricf_nonnegative(bool* checked = nullptr) const;

 private:
  int m_;
  Expr warp_;
  Expr weight_;
  double r_min_, r_max_;
  double sup_f_ = 0.0;
};

// Integral of V'(r) / (r^2 log^2 a) over [a, a^2], evaluated in log r.
double cutoff_energy(const Expr& growth_derivative, double a, const QuadratureSpec& quad = {});

struct DecayFit {
  std::vector<double> a;
  std::vector<double> E;
  std::vector<double> E_log_a;  // E(a) log a, constant under quadratic growth
  double slope = 0.0;
  bool hypothesisViolated = false;
  std::string warning;
};

// Least-squares slope of log E(a) against log(1 / log a).
DecayFit decay_fit(const Expr& growth_derivative, const std::vector<double>& a_grid,
                   const QuadratureSpec& quad = {});

struct ComparisonReport {
  double ratio = 0.0;
  double bound = 0.0;
  double AR = 0.0;
  double margin = 0.0;
  bool hypothesisChecked = false;
  bool hypothesisOk = false;
  bool applicable = false;  // hypothesis verified and holds
};

ComparisonReport sphere_area_ratio(const RadialMeasureModel& model, double r1, double r2, double R);

// Weighted volume of the annular ball [r_min, r].
double ball_volume(const RadialMeasureModel& model, double r, const QuadratureSpec& quad = {});

struct GrowthCheck {
  double slope = 0.0;
  bool boundedWeight = false;
  bool hypothesisOk = false;
  bool withinOrder = false;  // slope <= m + 0.05
};

// Fits log V against log r on `points` radii of the upper half of the domain.
GrowthCheck polynomial_growth_check(const RadialMeasureModel& model, int points = 64,
                                    const QuadratureSpec& quad = {});

}  // namespace fminlab
