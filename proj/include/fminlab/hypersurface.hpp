#pragma once

#include <string>
#include <vector>

#include "fminlab/warped_space.hpp"

namespace fminlab {

// Extrinsic data of the slice {t = t0} with unit normal N = +d/dt.
struct SliceShape {
  double t0 = 0.0;
  double principal = 0.0;  // g'/(2g), both directions
  double normSqA = 0.0;    // |A|^2 = g'^2 / (2 g^2)
  double H = 0.0;          // g'/g
  double fn = 0.0;         // f'(t0)
  double residual = 0.0;   // H - f_n
  bool totallyGeodesic = false;
  double KSlice = 0.0;     // kappa / g
};

SliceShape slice_shape(const WarpedSpace& space, double t0);

struct RootScan {
  std::vector<SliceShape> roots;
  // H - f_n vanishes (within tol) on the whole scan; no root list is given.
  bool identicallyMinimal = false;
};

// Roots of g'/g - f' from a 2001-point sign-change scan refined by bisection.
RootScan f_minimal_roots(const WarpedSpace& space, double tol);

struct GaussCheck {
  double discrepancy = 0.0;  // |2 K - (S - 2 Ric(n,n))|
  double twoK = 0.0;
  double S = 0.0;
  double ricnn = 0.0;
  // Weighted form 2K = S_f - Lap_slice f - f_nn - 2 Ric(n,n); evaluated
  // when f''(t0) = 0 and H = 0.
  bool weightedChecked = false;
  double weightedDiscrepancy = 0.0;
};

// Throws PreconditionError unless the slice is totally geodesic.
GaussCheck gauss_identity_check(const WarpedSpace& space, double t0);

std::string slice_csv_header();
std::string slice_csv_row(const SliceShape& s);

}  // namespace fminlab
