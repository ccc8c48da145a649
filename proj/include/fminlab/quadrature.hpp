#pragma once

#include <cstddef>
#include <functional>

namespace fminlab {

// Composite Simpson rule with a coarse/fine consistency check.
struct QuadratureSpec {
  std::size_t nodes = 4001;  // odd; rounded up otherwise
  double tol = 1e-8;         // relative, against the integral of |f|
};

struct QuadratureResult {
  double value = 0.0;
  double abs_integral = 0.0;  // integral of |f| on the fine grid
  double coarse = 0.0;        // Simpson on every other node
};

// Simpson sum only; no convergence check.
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t nodes);

// Throws ContractViolation when the fine and coarse grids disagree by more
// than spec.tol relative to the integral of |f|.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

}  // namespace fminlab
