#include "fminlab/hypersurface.hpp"

#include <cmath>

#include "fminlab/csv.hpp"
#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"

namespace fminlab {

namespace {

constexpr double kGeodesicTol = 1e-10;

double residual_at(const WarpedSpace& space, double t) {
  return space.gp(t) / space.g(t) - space.fp(t);
}

}  // namespace

SliceShape slice_shape(const WarpedSpace& space, double t0) {
  space.require(t0);
  const double g = space.g(t0);
  const double gp = space.gp(t0);
  SliceShape s;
  s.t0 = t0;
  s.principal = gp / (2.0 * g);
  s.normSqA = gp * gp / (2.0 * g * g);
  s.H = gp / g;
  s.fn = space.fp(t0);
  s.residual = s.H - s.fn;
  s.totallyGeodesic = std::sqrt(s.normSqA) <= kGeodesicTol;
  s.KSlice = space.kappa() / g;
  return s;
}

RootScan f_minimal_roots(const WarpedSpace& space, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("root tolerance must be positive");
  constexpr int n = 2001;
  const double a = space.t_min(), b = space.t_max();
  const double dt = (b - a) / (n - 1);
  std::vector<double> ts(n), rs(n);
  bool all_small = true;
  for (int i = 0; i < n; ++i) {
    ts[i] = (i == n - 1) ? b : a + dt * i;
    rs[i] = residual_at(space, ts[i]);
    all_small = all_small && std::abs(rs[i]) <= tol;
  }
  RootScan out;
  if (all_small) {
    out.identicallyMinimal = true;
    return out;
  }
  std::vector<double> roots;
  auto push = [&](double t) {
    if (!roots.empty() && std::abs(t - roots.back()) <= 2.0 * dt) return;
    roots.push_back(t);
  };
  for (int i = 0; i < n; ++i) {
    if (rs[i] == 0.0) {
      push(ts[i]);
      continue;
    }
    if (i + 1 < n && rs[i + 1] != 0.0 && (rs[i] < 0.0) != (rs[i + 1] < 0.0)) {
      double lo = ts[i], hi = ts[i + 1];
      double rlo = rs[i];
      double mid = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double rm = residual_at(space, mid);
        if (rm == 0.0 || (std::abs(rm) <= tol && hi - lo <= 1e-14 * (1.0 + std::abs(mid)))) break;
        if ((rm < 0.0) == (rlo < 0.0)) {
          lo = mid;
          rlo = rm;
        } else {
          hi = mid;
        }
        if (hi - lo <= 1e-15 * (1.0 + std::abs(mid))) break;
      }
      if (std::abs(residual_at(space, mid)) <= tol) push(mid);
    }
  }
  for (double t : roots) out.roots.push_back(slice_shape(space, t));
  return out;
}

GaussCheck gauss_identity_check(const WarpedSpace& space, double t0) {
  const SliceShape shape = slice_shape(space, t0);
  if (!shape.totallyGeodesic) {
    throw PreconditionError("Gauss identity check needs a totally geodesic slice");
  }
  const CurvatureReport c = closed_form_curvature(space, t0);
  GaussCheck out;
  out.twoK = 2.0 * shape.KSlice;
  out.S = c.S;
  out.ricnn = c.ric33;
  out.discrepancy = std::abs(out.twoK - (c.S - 2.0 * c.ric33));
  if (c.fpp == 0.0 && shape.H == 0.0) {
    // f depends on t only, so its slice Laplacian vanishes.
    const double lap_slice = 0.0;
    out.weightedChecked = true;
    out.weightedDiscrepancy = std::abs(out.twoK - (c.Sf - lap_slice - c.fpp - 2.0 * c.ric33));
  }
  return out;
}

std::string slice_csv_header() { return "t0,principal,normSqA,H,fn,residual,totallyGeodesic,KSlice"; }

std::string slice_csv_row(const SliceShape& s) {
  return csv_join({csv_number(s.t0), csv_number(s.principal), csv_number(s.normSqA),
                   csv_number(s.H), csv_number(s.fn), csv_number(s.residual),
                   std::string(s.totallyGeodesic ? "1" : "0"), csv_number(s.KSlice)});
}

}  // namespace fminlab
