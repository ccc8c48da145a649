#include "fminlab/normal_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fminlab/csv.hpp"
#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"
#include "fminlab/hypersurface.hpp"
#include "fminlab/variation.hpp"

namespace fminlab {

double FlowTrace::max_residual() const {
  double m = 0.0;
  for (double r : residual) m = std::max(m, r);
  return m;
}

double FlowTrace::max_htilde() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double h : htildeOde) m = std::max(m, h);
  return m;
}

namespace {

constexpr double kResidualTol = 1e-8;
constexpr int kMaxHalvings = 12;

// d/dx of area(x) by a 4th-order stencil that stays inside [lo, hi].
template <class Fn>
double stencil_derivative(const Fn& area, double x, double lo, double hi) {
  const double room = std::min(x - lo, hi - x);
  double h = std::min(1e-3, room / 2.0);
  if (h >= 1e-6) {
    return (area(x - 2 * h) - 8 * area(x - h) + 8 * area(x + h) - area(x + 2 * h)) / (12 * h);
  }
  h = 1e-3;
  const double dir = (x - lo < hi - x) ? 1.0 : -1.0;
  auto f = [&](int k) { return area(x + dir * k * h); };
  return dir * (-25 * f(0) + 48 * f(1) - 36 * f(2) + 16 * f(3) - 3 * f(4)) / (12 * h);
}

}  // namespace

FlowTrace evolve(const WarpedSpace& space, double t0, double t1, std::size_t steps,
                 double rho_max, const QuadratureSpec& quad) {
  space.require(t0);
  space.require(t1);
  if (steps == 0) throw PreconditionError("flow needs at least one step");
  if (t0 == t1) throw PreconditionError("flow interval is empty");

  FlowTrace trace;
  trace.orientation = t1 > t0 ? 1 : -1;
  trace.rhoMax = rho_max;
  const double sigma = trace.orientation;
  const double length = std::abs(t1 - t0);
  const double ds = length / static_cast<double>(steps);

  auto t_of = [&](double s) { return t0 + sigma * s; };
  auto closed = [&](double t) { return sigma * (space.gp(t) / space.g(t) - space.fp(t)); };
  auto rhs = [&](double s, double htilde) {
    const double t = t_of(s);
    const double g = space.g(t), gp = space.gp(t), gpp = space.gpp(t);
    const double ricf_nn = (-2.0 * gpp * g + gp * gp + 2.0 * g * g * space.fpp(t)) / (2.0 * g * g);
    const double mean = htilde + sigma * space.fp(t);  // H for the normal N
    return -ricf_nn - 0.5 * mean * mean;
  };

  std::size_t sub = 1;
  for (int halving = 0;; ++halving) {
    if (halving > kMaxHalvings) {
      throw ContractViolation("flow residual above 1e-8 after " + std::to_string(kMaxHalvings) +
                              " step halvings");
    }
    trace.t.assign(1, t0);
    trace.htildeOde.assign(1, closed(t0));
    const double h = ds / static_cast<double>(sub);
    double y = closed(t0);
    double s = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
      for (std::size_t j = 0; j < sub; ++j) {
        const double k1 = rhs(s, y);
        const double k2 = rhs(s + h / 2, y + h / 2 * k1);
        const double k3 = rhs(s + h / 2, y + h / 2 * k2);
        const double k4 = rhs(s + h, y + h * k3);
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        s += h;
      }
      s = ds * static_cast<double>(i + 1);
      trace.t.push_back(i + 1 == steps ? t1 : t_of(s));
      trace.htildeOde.push_back(y);
    }
    trace.htildeClosed.clear();
    trace.residual.clear();
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
      trace.htildeClosed.push_back(closed(trace.t[i]));
      trace.residual.push_back(std::abs(trace.htildeOde[i] - trace.htildeClosed[i]));
    }
    if (trace.max_residual() <= kResidualTol) break;
    sub *= 2;
  }
  trace.substeps = sub;

  auto area = [&](double t) { return slice_window_area(space, t, rho_max, quad); };
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    const double t = trace.t[i];
    const double a = area(t);
    trace.areaWindow.push_back(a);
    trace.areaRate.push_back(sigma * stencil_derivative(area, t, space.t_min(), space.t_max()));
    trace.firstVariation.push_back(trace.htildeOde[i] * a);
  }
  return trace;
}

MonotonicityReport monotonicity_report(const WarpedSpace& space, double t0, double t1,
                                       double rho_max, std::size_t steps) {
  MonotonicityReport rep;
  const SliceShape start = slice_shape(space, t0);
  rep.sliceMinimal = std::abs(start.residual) <= 1e-10;
  rep.sliceTotallyGeodesic = start.totallyGeodesic;

  rep.ricfNonnegative = true;
  double max_abs_A = 0.0, max_abs_ricf = 0.0;
  constexpr int samples = 401;
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + (t1 - t0) * i / (samples - 1);
    const CurvatureReport c = closed_form_curvature(space, t);
    rep.ricfNonnegative = rep.ricfNonnegative && c.nonnegative(1e-12);
    max_abs_A = std::max(max_abs_A, std::sqrt(slice_shape(space, t).normSqA));
    max_abs_ricf = std::max(max_abs_ricf, std::abs(c.ricf33));
  }
  rep.hypothesisOk = rep.sliceMinimal && rep.sliceTotallyGeodesic && rep.ricfNonnegative;
  if (!rep.sliceMinimal) rep.messages.push_back("start slice is not f-minimal");
  if (!rep.sliceTotallyGeodesic) rep.messages.push_back("start slice is not totally geodesic");
  if (!rep.ricfNonnegative) rep.messages.push_back("Ric_f is negative somewhere on the interval");

  const FlowTrace trace = evolve(space, t0, t1, steps, rho_max);
  rep.maxHtilde = trace.max_htilde();
  rep.maxResidual = trace.max_residual();
  rep.htildeNonpositive = rep.maxHtilde <= 1e-10;

  const double scale = trace.areaWindow.front();
  rep.areaMonotone = true;
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    if (trace.areaRate[i] > 1e-8 * scale) rep.areaMonotone = false;
    if (i > 0 && trace.areaWindow[i] > trace.areaWindow[i - 1] + 1e-12 * scale) rep.areaMonotone = false;
  }

  double max_abs_h = 0.0;
  for (double h : trace.htildeOde) max_abs_h = std::max(max_abs_h, std::abs(h));
  rep.htildeVanishes = max_abs_h <= 1e-10;
  rep.rigidity = rep.htildeVanishes && max_abs_A <= 1e-10 && max_abs_ricf <= 1e-10;
  if (rep.htildeVanishes && !rep.rigidity) {
    rep.messages.push_back("Htilde vanishes but the slices are not totally geodesic");
  }
  return rep;
}

std::string flow_csv_header() { return "t,Htilde_ode,Htilde_closed,residual,areaWindow"; }

std::string flow_csv_row(const FlowTrace& trace, std::size_t i) {
  return csv_join({trace.t[i], trace.htildeOde[i], trace.htildeClosed[i], trace.residual[i],
                   trace.areaWindow[i]});
}

}  // namespace fminlab
