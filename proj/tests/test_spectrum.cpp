#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "fminlab/error.hpp"
#include "fminlab/spectrum.hpp"

using namespace fminlab;

namespace {

// First zero of J0, squared.
constexpr double kBesselZeroSq = 5.783185962946784;

Eigen::VectorXd dense_eigenvalues(const SymTridiagonal& T) {
  const auto n = static_cast<Eigen::Index>(T.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    M(i, i) = T.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) M(i, i + 1) = M(i + 1, i) = T.off[static_cast<std::size_t>(i)];
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("Sturm bisection agrees with a dense eigensolver") {
  for (const char* name : {"flat", "paper-sec4", "paper-remark"}) {
    const WarpedSpace space = preset_space(name);
    const double t0 = std::string(name) == "paper-remark" ? 0.5 : 0.0;
    const SymTridiagonal T = stability_matrix(space, t0, 2.0, 200, 0.0);
    const Eigen::VectorXd ev = dense_eigenvalues(T);
    for (std::size_t k = 0; k < 5; ++k) {
      const double dense = ev(static_cast<Eigen::Index>(k));
      CHECK(T.eigenvalue(k) == doctest::Approx(dense).epsilon(1e-10));
    }
    for (double x : {-1.0, 0.0, 10.0, 100.0}) {
      std::size_t below = 0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) below += ev(i) < x ? 1 : 0;
      CHECK(T.count_below(x) == below);
    }
  }
}

TEST_CASE("flat disk ground state") {
  const WarpedSpace flat = preset_space("flat");
  const SpectralResult r = stability_spectrum(flat, 0.0, 1.0);
  CHECK(std::abs(r.mu1 - kBesselZeroSq) <= 1e-3);
  CHECK(r.convergenceDelta <= 1e-6 * (1 + std::abs(r.mu1)));
  CHECK(r.negCount == 0);
  // Scaling with the radius.
  const SpectralResult r2 = stability_spectrum(flat, 0.0, 2.0);
  CHECK(std::abs(r2.mu1 * 4 - kBesselZeroSq) <= 1e-3);
}

TEST_CASE("hyperbolic slice is stable on nested disks") {
  const WarpedSpace sec4 = preset_space("paper-sec4");
  double previous = INFINITY;
  for (double rho : {1.0, 2.0, 3.0, 4.0}) {
    const SpectralResult r = stability_spectrum(sec4, 0.0, rho);
    CHECK(r.negCount == 0);
    CHECK(r.mu1 >= 0.0);
    CHECK(r.mu1 <= previous);
    previous = r.mu1;
  }
}

TEST_CASE("spectral shift") {
  const WarpedSpace sec4 = preset_space("paper-sec4");
  const double base = stability_spectrum(sec4, 0.0, 2.0).mu1;
  const double shifted = stability_spectrum(sec4, 0.0, 2.0, 64, 0.75).mu1;
  CHECK(std::abs((base - shifted) - 0.75) <= 1e-8);
  // A large shift makes the disk unstable.
  const SpectralResult unstable = stability_spectrum(sec4, 0.0, 2.0, 64, base + 1.0);
  CHECK(unstable.mu1 < 0.0);
  CHECK(unstable.negCount >= 1);
}

TEST_CASE("spectrum preconditions") {
  CHECK_THROWS_AS(stability_spectrum(preset_space("paper-sec4"), 0.25, 1.0), PreconditionError);
  CHECK_THROWS_AS(stability_spectrum(preset_space("flat"), 0.0, 1.0, 32), PreconditionError);
  CHECK_THROWS_AS(stability_spectrum(preset_space("cylinder"), 0.0, 3.2), PreconditionError);
  CHECK_THROWS_AS(stability_spectrum(preset_space("flat"), 0.0, 0.0), PreconditionError);
}
