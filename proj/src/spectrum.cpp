#include "fminlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"
#include "fminlab/hypersurface.hpp"

namespace fminlab {

std::size_t SymTridiagonal::count_below(double x) const {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
    if (q < 0.0) ++count;
  }
  return count;
}

double SymTridiagonal::eigenvalue(std::size_t k) const {
  if (k >= diag.size()) throw PreconditionError("eigenvalue index out of range");
  // Gerschgorin interval.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < diag.size()) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SymTridiagonal stability_matrix(const WarpedSpace& space, double t0, double rho_max,
                                std::size_t cells, double q_shift) {
  const int kappa = space.kappa();
  const double g0 = space.g(t0);
  const double q = closed_form_curvature(space, t0).ricf33 + slice_shape(space, t0).normSqA + q_shift;
  const double h = rho_max / static_cast<double>(cells);

  // Cell i spans [i h, (i+1) h]; face weights w(i h); Dirichlet face at rho_max
  // sits half a cell from the last centre.
  std::vector<double> mass(cells), face(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) face[i] = base_sine(kappa, h * static_cast<double>(i));
  for (std::size_t i = 0; i < cells; ++i) mass[i] = base_sine(kappa, h * (static_cast<double>(i) + 0.5));

  SymTridiagonal T;
  T.diag.resize(cells);
  T.off.resize(cells - 1);
  const double scale = 1.0 / (g0 * h * h);
  for (std::size_t i = 0; i < cells; ++i) {
    const double left = face[i];
    const double right = (i + 1 == cells) ? 2.0 * face[cells] : face[i + 1];
    T.diag[i] = scale * (left + right) / mass[i] - q;
    if (i + 1 < cells) T.off[i] = -scale * face[i + 1] / std::sqrt(mass[i] * mass[i + 1]);
  }
  return T;
}

namespace {

SpectralResult solve_once(const WarpedSpace& space, double t0, double rho_max, std::size_t cells,
                          double q_shift) {
  const SymTridiagonal T = stability_matrix(space, t0, rho_max, cells, q_shift);
  SpectralResult r;
  r.rhoMax = rho_max;
  r.gridSize = cells;
  r.mu1 = T.eigenvalue(0);
  r.negCount = T.count_below(0.0);
  return r;
}

}  // namespace

SpectralResult stability_spectrum(const WarpedSpace& space, double t0, double rho_max,
                                  std::size_t grid_size, double q_shift) {
  space.require(t0);
  if (std::abs(slice_shape(space, t0).residual) > 1e-8) {
    throw PreconditionError("stability spectrum needs an f-minimal slice");
  }
  if (!(rho_max > 0.0)) throw PreconditionError("rho_max must be positive");
  if (space.kappa() > 0 && !(rho_max < std::numbers::pi)) {
    throw PreconditionError("rho_max must stay below pi on the round base");
  }
  if (grid_size < 64) throw PreconditionError("grid size must be at least 64");

  SpectralResult coarse = solve_once(space, t0, rho_max, grid_size, q_shift);
  std::size_t cells = grid_size;
  for (int doubling = 0; doubling < 6; ++doubling) {
    cells *= 2;
    SpectralResult fine = solve_once(space, t0, rho_max, cells, q_shift);
    fine.convergenceDelta = std::abs(fine.mu1 - coarse.mu1);
    if (fine.convergenceDelta <= 1e-6 * (1.0 + std::abs(fine.mu1))) return fine;
    coarse = fine;
  }
  throw ContractViolation("stability spectrum did not converge after 6 grid doublings");
}

}  // namespace fminlab
