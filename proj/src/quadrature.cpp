#include "fminlab/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "fminlab/error.hpp"

namespace fminlab {

namespace {

std::size_t odd_nodes(std::size_t nodes) {
  if (nodes < 5) nodes = 5;
  // Coarse grid needs an odd count too: nodes = 4k + 1.
  while ((nodes - 1) % 4 != 0) ++nodes;
  return nodes;
}

double weighted_sum(const std::vector<double>& y, std::size_t stride, double h) {
  const std::size_t n = (y.size() - 1) / stride;
  double s = y.front() + y.back();
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i * stride];
  return s * h / 3.0;
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t nodes) {
  if (nodes < 3) nodes = 3;
  if (nodes % 2 == 0) ++nodes;
  const double h = (b - a) / static_cast<double>(nodes - 1);
  std::vector<double> y(nodes);
  for (std::size_t i = 0; i < nodes; ++i) y[i] = f(a + h * static_cast<double>(i));
  return weighted_sum(y, 1, h);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  const std::size_t nodes = odd_nodes(spec.nodes);
  const double h = (b - a) / static_cast<double>(nodes - 1);
  std::vector<double> y(nodes);
  std::vector<double> ay(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    // Hit the right endpoint exactly.
    const double x = (i + 1 == nodes) ? b : a + h * static_cast<double>(i);
    y[i] = f(x);
    ay[i] = std::abs(y[i]);
  }
  QuadratureResult r;
  r.value = weighted_sum(y, 1, h);
  r.coarse = weighted_sum(y, 2, 2.0 * h);
  r.abs_integral = weighted_sum(ay, 1, std::abs(h));
  if (!std::isfinite(r.value)) throw ContractViolation("quadrature produced a non-finite value");
  const double scale = r.abs_integral;
  if (std::abs(r.value - r.coarse) > spec.tol * scale) {
    throw ContractViolation("quadrature non-convergence: fine " + std::to_string(r.value) +
                            " vs coarse " + std::to_string(r.coarse));
  }
  return r;
}

}  // namespace fminlab
