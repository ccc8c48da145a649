#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fminlab/warped_space.hpp"

namespace fminlab {

// Curvature scalars at one parameter value.
//
// Frame: e1, e2 tangent to the slice with unit length for the base metric
// (so |e1|^2 = g in M), e3 = d/dt. Components tagged 11 are in that
// coordinate frame; unit11 and unitf11 divide by g. Sign convention:
// R(X,Y,Z,W) = <R(X,Y)Z, W>, so the round sphere has R1221 > 0.
struct CurvatureReport {
  double t = 0.0;
  double g = 0.0, gp = 0.0, gpp = 0.0, fp = 0.0, fpp = 0.0;
  double R1221 = 0.0;
  double R1331 = 0.0;
  double ric11 = 0.0;
  double ric33 = 0.0;
  double ricf11 = 0.0;
  double ricf33 = 0.0;
  double unit11 = 0.0;
  double unitf11 = 0.0;
  double S = 0.0;
  double lapf = 0.0;
  double Sf = 0.0;
  double minEig = 0.0;

  // Ric_f >= 0 as a quadratic form (diagonal frame).
  bool nonnegative(double tol = 0.0) const { return unitf11 >= -tol && ricf33 >= -tol; }
};

CurvatureReport closed_form_curvature(const WarpedSpace& space, double t);

struct FdCurvature {
  CurvatureReport report;
  // Largest off-diagonal entry of Ric and Hess f in the orthonormal frame.
  double mixed_max = 0.0;
};

// Generic tensor pipeline on the coordinate metric diag(1, g(t), g(t) s(rho)^2)
// in coordinates (t, rho, theta): metric derivatives by 4th-order central
// differences, then Christoffel symbols, Riemann, Ricci and Hess f by index
// loops. A half-step rerun must agree to 1e-3 relative or ContractViolation
// is thrown.
FdCurvature fd_oracle_curvature(const WarpedSpace& space, double t, double rho,
                                double step = 3e-3);

// Sampled closed-form reports on `samples` uniform points of the domain.
std::vector<CurvatureReport> sample_curvature(const WarpedSpace& space, int samples, int jobs = 1);

struct ComponentMinimum {
  double t = 0.0;
  double value = 0.0;
};

// Minimum over the domain of component(closed_form_curvature(space, t)):
// 2001-point scan, then golden-section refinement around the best sample.
ComponentMinimum curvature_minimum(const WarpedSpace& space,
                                   const std::function<double(const CurvatureReport&)>& component);

// CSV header and row in the fixed column order of CurvatureReport.
std::string curvature_csv_header();
std::string curvature_csv_row(const CurvatureReport& r);

}  // namespace fminlab
