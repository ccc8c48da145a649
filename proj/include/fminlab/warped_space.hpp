#pragma once

#include <string>

#include "fminlab/expr.hpp"

namespace fminlab {

// Model geometry dt^2 + g(t) ds^2 on an interval times a space form of
// curvature kappa, with weight f(t). Ambient dimension is 3.
class WarpedSpace {
 public:
  // Throws PreconditionError when kappa is not -1, 0 or +1, the interval is
  // empty, or g is not positive at 1001 uniform points.
  WarpedSpace(int kappa, Expr g, Expr f, double t_min, double t_max);

  static WarpedSpace from_text(int kappa, const std::string& g, const std::string& f,
                               double t_min, double t_max);

  int kappa() const noexcept { return kappa_; }
  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }
  bool contains(double t) const noexcept { return t >= t_min_ && t <= t_max_; }
  // Throws PreconditionError when t is outside [t_min, t_max].
  void require(double t) const;

  const Expr& g() const noexcept { return g_; }
  const Expr& f() const noexcept { return f_; }

  double g(double t) const { return g_.eval(t); }
  double gp(double t) const { return g1_.eval(t); }
  double gpp(double t) const { return g2_.eval(t); }
  double f(double t) const { return f_.eval(t); }
  double fp(double t) const { return f1_.eval(t); }
  double fpp(double t) const { return f2_.eval(t); }

  // Same geometry seen through t -> -t (normal reversed).
  WarpedSpace reflected() const;

 private:
  int kappa_;
  Expr g_, g1_, g2_;
  Expr f_, f1_, f2_;
  double t_min_, t_max_;
};

// Warp of the base space form in polar coordinates: sinh, identity or sin.
double base_sine(int kappa, double rho);

// Named model geometries: paper-sec4, paper-remark, flat, cylinder, sphere.
WarpedSpace preset_space(const std::string& name);

}  // namespace fminlab
