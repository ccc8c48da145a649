#pragma once

#include <vector>

#include "fminlab/expr.hpp"
#include "fminlab/quadrature.hpp"
#include "fminlab/warped_space.hpp"

namespace fminlab {

// Rotationally symmetric variation profile lambda(rho) on [0, rho_max],
// vanishing at rho_max (Dirichlet end) and flat at the pole.
class RadialProfile {
 public:
  enum class Kind { Expression, CosineCap, LogCutoff };

  // Throws PreconditionError when lambda(rho_max) != 0 (1e-12) or
  // lambda'(0) != 0 (1e-10).
  static RadialProfile expression(const Expr& e, double rho_max);
  // cos(pi rho / (2 rho_max)).
  static RadialProfile cosine_cap(double rho_max);
  // 1 on [0, a], (2 log a - log r) / log a on (a, a^2), support a^2.
  static RadialProfile log_cutoff(double a);

  Kind kind() const noexcept { return kind_; }
  double rho_max() const noexcept { return rho_max_; }
  double value(double rho) const;
  double derivative(double rho) const;
  // Points in (0, rho_max) where the profile is only piecewise smooth.
  std::vector<double> breakpoints() const;
  double max_abs() const;

 private:
  RadialProfile(Kind kind, double rho_max) : kind_(kind), rho_max_(rho_max) {}

  Kind kind_;
  double rho_max_;
  double a_ = 0.0;
  Expr expr_;
  Expr dexpr_;
};

// Integral over [0, rho_max] split at the profile's breakpoints.
double integrate_profile(const RadialProfile& profile, const std::function<double(double)>& f,
                         const QuadratureSpec& quad);

// Weighted area of the graph t = t0 + s lambda(rho) over the base disk.
double weighted_area(const WarpedSpace& space, double t0, const RadialProfile& profile, double s,
                     const QuadratureSpec& quad = {});

// Weighted area of the slice {t} over the base disk of radius rho_max.
double slice_window_area(const WarpedSpace& space, double t, double rho_max,
                         const QuadratureSpec& quad = {});

// Integral of (H - f_n) lambda e^{-f} over the slice.
double first_variation(const WarpedSpace& space, double t0, const RadialProfile& profile,
                       const QuadratureSpec& quad = {});

// Centered first difference of weighted_area at s = 0, Richardson-extrapolated.
double first_variation_fd(const WarpedSpace& space, double t0, const RadialProfile& profile,
                          const std::vector<double>& steps = {1e-3, 5e-4, 2.5e-4},
                          const QuadratureSpec& quad = {});

// Stability form Q(lambda). Throws PreconditionError unless the slice is
// f-minimal (|H - f_n| <= 1e-8).
double second_variation_form(const WarpedSpace& space, double t0, const RadialProfile& profile,
                             const QuadratureSpec& quad = {});

// Richardson-extrapolated centered second difference of weighted_area.
double second_variation_fd(const WarpedSpace& space, double t0, const RadialProfile& profile,
                           const std::vector<double>& steps = {1e-2, 5e-3, 2.5e-3},
                           const QuadratureSpec& quad = {});

// Integral of lambda^2 e^{-f} over the slice.
double weighted_l2(const WarpedSpace& space, double t0, const RadialProfile& profile,
                   const QuadratureSpec& quad = {});

// Richardson table over steps; each entry is D(h_i) with error in powers of h^2.
double richardson(const std::vector<double>& steps, const std::vector<double>& values,
                  double* last_correction = nullptr);

}  // namespace fminlab
