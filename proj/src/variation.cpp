#include "fminlab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"
#include "fminlab/hypersurface.hpp"

namespace fminlab {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RadialProfile RadialProfile::expression(const Expr& e, double rho_max) {
  if (!(rho_max > 0.0)) throw PreconditionError("profile support radius must be positive");
  RadialProfile p(Kind::Expression, rho_max);
  p.expr_ = e;
  p.dexpr_ = differentiate(e);
  if (std::abs(p.value(rho_max)) > 1e-12) {
    throw PreconditionError("profile must vanish at rho_max");
  }
  if (std::abs(p.derivative(0.0)) > 1e-10) {
    throw PreconditionError("profile must have zero slope at the pole");
  }
  return p;
}

RadialProfile RadialProfile::cosine_cap(double rho_max) {
  if (!(rho_max > 0.0)) throw PreconditionError("profile support radius must be positive");
  return RadialProfile(Kind::CosineCap, rho_max);
}

RadialProfile RadialProfile::log_cutoff(double a) {
  if (!(a > 1.0)) throw PreconditionError("log cutoff needs a > 1");
  RadialProfile p(Kind::LogCutoff, a * a);
  p.a_ = a;
  return p;
}

double RadialProfile::value(double rho) const {
  switch (kind_) {
    case Kind::Expression:
      return expr_.eval(rho);
    case Kind::CosineCap:
      return std::cos(std::numbers::pi * rho / (2.0 * rho_max_));
    case Kind::LogCutoff: {
      if (rho <= a_) return 1.0;
      if (rho >= rho_max_) return 0.0;
      const double la = std::log(a_);
      return (2.0 * la - std::log(rho)) / la;
    }
  }
  return 0.0;
}

double RadialProfile::derivative(double rho) const {
  switch (kind_) {
    case Kind::Expression:
      return dexpr_.eval(rho);
    case Kind::CosineCap: {
      const double w = std::numbers::pi / (2.0 * rho_max_);
      return -w * std::sin(w * rho);
    }
    case Kind::LogCutoff:
      if (rho <= a_ || rho >= rho_max_) return 0.0;
      return -1.0 / (rho * std::log(a_));
  }
  return 0.0;
}

std::vector<double> RadialProfile::breakpoints() const {
  if (kind_ == Kind::LogCutoff) return {a_};
  return {};
}

double RadialProfile::max_abs() const {
  double m = 0.0;
  constexpr int n = 2001;
  for (int i = 0; i < n; ++i) m = std::max(m, std::abs(value(rho_max_ * i / (n - 1))));
  for (double b : breakpoints()) m = std::max(m, std::abs(value(b)));
  return m;
}

double integrate_profile(const RadialProfile& profile, const std::function<double(double)>& f,
                         const QuadratureSpec& quad) {
  std::vector<double> cuts = {0.0};
  for (double b : profile.breakpoints()) cuts.push_back(b);
  cuts.push_back(profile.rho_max());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1], quad).value;
  }
  return total;
}

namespace {

void require_graph_in_domain(const WarpedSpace& space, double t0, const RadialProfile& profile,
                             double s) {
  space.require(t0);
  const double reach = std::abs(s) * profile.max_abs();
  if (!space.contains(t0 - reach) || !space.contains(t0 + reach)) {
    throw PreconditionError("variation graph exits the domain");
  }
}

double q_potential(const WarpedSpace& space, double t0) {
  return closed_form_curvature(space, t0).ricf33 + slice_shape(space, t0).normSqA;
}

void require_f_minimal(const WarpedSpace& space, double t0) {
  const SliceShape shape = slice_shape(space, t0);
  if (std::abs(shape.residual) > 1e-8) {
    throw PreconditionError("slice is not f-minimal (H - f_n = " + std::to_string(shape.residual) +
                            ")");
  }
}

}  // namespace

double weighted_area(const WarpedSpace& space, double t0, const RadialProfile& profile, double s,
                     const QuadratureSpec& quad) {
  require_graph_in_domain(space, t0, profile, s);
  const int kappa = space.kappa();
  auto integrand = [&](double rho) {
    const double u = t0 + s * profile.value(rho);
    const double g = space.g(u);
    const double dl = profile.derivative(rho);
    return std::exp(-space.f(u)) * g * std::sqrt(1.0 + s * s * dl * dl / g) * base_sine(kappa, rho);
  };
  return kTwoPi * integrate_profile(profile, integrand, quad);
}

double slice_window_area(const WarpedSpace& space, double t, double rho_max,
                         const QuadratureSpec& quad) {
  space.require(t);
  if (!(rho_max > 0.0)) throw PreconditionError("window radius must be positive");
  const int kappa = space.kappa();
  const double base = integrate([&](double rho) { return base_sine(kappa, rho); }, 0.0, rho_max, quad).value;
  return kTwoPi * std::exp(-space.f(t)) * space.g(t) * base;
}

double first_variation(const WarpedSpace& space, double t0, const RadialProfile& profile,
                       const QuadratureSpec& quad) {
  const SliceShape shape = slice_shape(space, t0);
  const int kappa = space.kappa();
  const double moment =
      integrate_profile(profile, [&](double rho) { return profile.value(rho) * base_sine(kappa, rho); }, quad);
  return shape.residual * std::exp(-space.f(t0)) * space.g(t0) * kTwoPi * moment;
}

double richardson(const std::vector<double>& steps, const std::vector<double>& values,
                  double* last_correction) {
  if (steps.empty() || steps.size() != values.size()) {
    throw PreconditionError("Richardson table needs one value per step");
  }
  const std::size_t n = steps.size();
  std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    T[i][0] = values[i];
    for (std::size_t j = 1; j <= i; ++j) {
      // Neville in x = h^2.
      const double ratio = (steps[i - j] / steps[i]) * (steps[i - j] / steps[i]);
      T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) / (ratio - 1.0);
    }
  }
  if (last_correction) {
    *last_correction = n >= 2 ? std::abs(T[n - 1][n - 1] - T[n - 1][n - 2]) : 0.0;
  }
  return T[n - 1][n - 1];
}

double first_variation_fd(const WarpedSpace& space, double t0, const RadialProfile& profile,
                          const std::vector<double>& steps, const QuadratureSpec& quad) {
  std::vector<double> d;
  for (double h : steps) {
    d.push_back((weighted_area(space, t0, profile, h, quad) -
                 weighted_area(space, t0, profile, -h, quad)) /
                (2.0 * h));
  }
  return richardson(steps, d);
}

double second_variation_form(const WarpedSpace& space, double t0, const RadialProfile& profile,
                             const QuadratureSpec& quad) {
  space.require(t0);
  require_f_minimal(space, t0);
  const double g0 = space.g(t0);
  const double q = q_potential(space, t0);
  const int kappa = space.kappa();
  auto integrand = [&](double rho) {
    const double l = profile.value(rho);
    const double dl = profile.derivative(rho);
    return (dl * dl / g0 - q * l * l) * base_sine(kappa, rho);
  };
  return kTwoPi * std::exp(-space.f(t0)) * g0 * integrate_profile(profile, integrand, quad);
}

double second_variation_fd(const WarpedSpace& space, double t0, const RadialProfile& profile,
                           const std::vector<double>& steps, const QuadratureSpec& quad) {
  require_f_minimal(space, t0);
  const double a0 = weighted_area(space, t0, profile, 0.0, quad);
  std::vector<double> d;
  for (double h : steps) {
    const double ap = weighted_area(space, t0, profile, h, quad);
    const double am = weighted_area(space, t0, profile, -h, quad);
    d.push_back((ap - 2.0 * a0 + am) / (h * h));
  }
  double correction = 0.0;
  const double value = richardson(steps, d, &correction);
  if (correction > 1e-4 * std::max(std::abs(value), 1e-8 * a0)) {
    throw ContractViolation("second-variation extrapolation did not converge");
  }
  return value;
}

double weighted_l2(const WarpedSpace& space, double t0, const RadialProfile& profile,
                   const QuadratureSpec& quad) {
  space.require(t0);
  const int kappa = space.kappa();
  auto integrand = [&](double rho) {
    const double l = profile.value(rho);
    return l * l * base_sine(kappa, rho);
  };
  return kTwoPi * std::exp(-space.f(t0)) * space.g(t0) * integrate_profile(profile, integrand, quad);
}

}  // namespace fminlab
