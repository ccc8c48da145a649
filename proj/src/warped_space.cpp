#include "fminlab/warped_space.hpp"

#include <cmath>

#include "fminlab/error.hpp"

namespace fminlab {

WarpedSpace::WarpedSpace(int kappa, Expr g, Expr f, double t_min, double t_max)
    : kappa_(kappa), g_(std::move(g)), f_(std::move(f)), t_min_(t_min), t_max_(t_max) {
  if (kappa != -1 && kappa != 0 && kappa != 1) {
    throw PreconditionError("base curvature must be -1, 0 or +1");
  }
  if (!(t_min < t_max)) throw PreconditionError("domain must satisfy t_min < t_max");
  g1_ = differentiate(g_);
  g2_ = differentiate(g1_);
  f1_ = differentiate(f_);
  f2_ = differentiate(f1_);
  constexpr int samples = 1001;
  for (int i = 0; i < samples; ++i) {
    const double t = t_min + (t_max - t_min) * i / (samples - 1);
    double gv = 0.0;
    try {
      gv = g_.eval(t);
      f_.eval(t);
    } catch (const EvalDomainError& e) {
      throw PreconditionError(std::string("profile not defined on the domain: ") + e.what());
    }
    if (!(gv > 0.0)) {
      throw PreconditionError("warp must be positive (g(" + std::to_string(t) +
                              ") = " + std::to_string(gv) + ")");
    }
  }
}

WarpedSpace WarpedSpace::from_text(int kappa, const std::string& g, const std::string& f,
                                   double t_min, double t_max) {
  return WarpedSpace(kappa, parse(g, "t"), parse(f, "t"), t_min, t_max);
}

void WarpedSpace::require(double t) const {
  if (!contains(t)) {
    throw PreconditionError("t = " + std::to_string(t) + " outside domain [" +
                            std::to_string(t_min_) + ", " + std::to_string(t_max_) + "]");
  }
}

WarpedSpace WarpedSpace::reflected() const {
  const Expr minus_t = -Expr::variable("t");
  return WarpedSpace(kappa_, substitute(g_, minus_t), substitute(f_, minus_t), -t_max_, -t_min_);
}

double base_sine(int kappa, double rho) {
  if (kappa < 0) return std::sinh(rho);
  if (kappa > 0) return std::sin(rho);
  return rho;
}

WarpedSpace preset_space(const std::string& name) {
  if (name == "paper-sec4") return WarpedSpace::from_text(-1, "1 - 2*t^2", "-2*t^2", -0.45, 0.45);
  if (name == "paper-remark") return WarpedSpace::from_text(1, "exp(t)", "t^2", -5.0, 5.0);
  if (name == "flat") return WarpedSpace::from_text(0, "1", "0", -1.0, 1.0);
  if (name == "cylinder") return WarpedSpace::from_text(1, "1", "0", -1.0, 1.0);
  if (name == "sphere") return WarpedSpace::from_text(1, "sin(t)^2", "0", 0.1, 3.0);
  throw PreconditionError("unknown preset '" + name + "'");
}

}  // namespace fminlab
