#pragma once

#include <string>
#include <vector>

#include "fminlab/quadrature.hpp"
#include "fminlab/warped_space.hpp"

namespace fminlab {

// Slices swept by the unit normal from t0 towards t1.
//
// With N = sign(t1 - t0) d/dt, Htilde = H - f_n obeys the Riccati law
// dHtilde/ds = -Ric_f(n,n) - |A|^2 with |A|^2 = (Htilde + f_n)^2 / 2 for the
// umbilic slices of a 3-dimensional warped product.
struct FlowTrace {
  int orientation = 1;
  double rhoMax = 1.0;
  std::size_t substeps = 0;  // RK4 steps per output interval after halving
  std::vector<double> t;
  std::vector<double> htildeOde;
  std::vector<double> htildeClosed;
  std::vector<double> residual;
  std::vector<double> areaWindow;
  std::vector<double> areaRate;         // d(areaWindow)/ds, numerical
  std::vector<double> firstVariation;   // integral of Htilde e^{-f} over the window

  double max_residual() const;
  double max_htilde() const;
};

// Integrates the Riccati law with classical RK4, halving the step until the
// residual against the closed-form slice value is <= 1e-8 everywhere.
FlowTrace evolve(const WarpedSpace& space, double t0, double t1, std::size_t steps,
                 double rho_max = 1.0, const QuadratureSpec& quad = {});

struct MonotonicityReport {
  double maxHtilde = 0.0;
  double maxResidual = 0.0;
  bool htildeNonpositive = false;
  bool areaMonotone = false;
  bool sliceMinimal = false;
  bool sliceTotallyGeodesic = false;
  bool ricfNonnegative = false;
  bool hypothesisOk = false;
  // Htilde == 0 along the flow, and then every slice is totally geodesic
  // with Ric_f(n,n) == 0.
  bool htildeVanishes = false;
  bool rigidity = false;
  std::vector<std::string> messages;
};

MonotonicityReport monotonicity_report(const WarpedSpace& space, double t0, double t1,
                                       double rho_max = 1.0, std::size_t steps = 200);

std::string flow_csv_header();
std::string flow_csv_row(const FlowTrace& trace, std::size_t i);

}  // namespace fminlab
