#pragma once

#include <cstddef>
#include <vector>

#include "fminlab/warped_space.hpp"

namespace fminlab {

// Symmetric tridiagonal matrix; off[i] couples i and i + 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
  // Number of eigenvalues strictly below x (Sturm sequence sign count).
  std::size_t count_below(double x) const;
  // k-th smallest eigenvalue (0-based) by bisection.
  double eigenvalue(std::size_t k) const;
};

struct SpectralResult {
  double rhoMax = 0.0;
  std::size_t gridSize = 0;
  double mu1 = 0.0;
  std::size_t negCount = 0;
  double convergenceDelta = 0.0;
};

// Radial Dirichlet problem for -(Lap_f + q) on the slice disk of radius
// rho_max, q = Ric_f(n,n) + |A|^2 at t0, discretized by cell-centred finite
// volumes on `cells` cells.
SymTridiagonal stability_matrix(const WarpedSpace& space, double t0, double rho_max,
                                std::size_t cells, double q_shift = 0.0);

// Doubles the grid from `grid_size` until successive mu1 agree to
// 1e-6 (1 + |mu1|); ContractViolation after 6 doublings.
// q_shift is added to q (test hook for the spectral shift).
SpectralResult stability_spectrum(const WarpedSpace& space, double t0, double rho_max,
                                  std::size_t grid_size = 64, double q_shift = 0.0);

}  // namespace fminlab
