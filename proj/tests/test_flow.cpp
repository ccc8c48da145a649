#include <cmath>

#include "doctest.h"
#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"
#include "fminlab/normal_flow.hpp"

using namespace fminlab;

TEST_CASE("Riccati identity holds symbolically") {
  for (const char* name : {"paper-sec4", "paper-remark", "flat", "cylinder", "sphere"}) {
    const WarpedSpace space = preset_space(name);
    const Expr g1 = differentiate(space.g());
    const Expr htilde = g1 / space.g() - differentiate(space.f());
    const Expr rate = differentiate(htilde);
    for (int i = 0; i <= 100; ++i) {
      const double t = i == 100 ? space.t_max() : space.t_min() + (space.t_max() - space.t_min()) * i / 100.0;
      const double g = space.g(t), gp = space.gp(t);
      const double residual = rate.eval(t) + closed_form_curvature(space, t).ricf33 + gp * gp / (2 * g * g);
      INFO(name << " t=" << t);
      CHECK(std::abs(residual) <= 1e-10);
    }
  }
}

TEST_CASE("flow on the hyperbolic example") {
  const WarpedSpace space = preset_space("paper-sec4");
  const FlowTrace trace = evolve(space, 0.0, 0.4, 200);
  CHECK(trace.max_residual() <= 1e-8);
  CHECK(std::abs(trace.htildeOde.back() - (-0.512 / 0.68)) <= 1e-6);
  CHECK(trace.htildeOde.back() == doctest::Approx(-0.7529411764705882).epsilon(1e-8));
  CHECK(trace.max_htilde() <= 1e-10);
  for (std::size_t i = 1; i < trace.t.size(); ++i) {
    CHECK(trace.areaWindow[i] <= trace.areaWindow[i - 1]);
  }
  // d(area)/dt against the first-variation integral.
  for (std::size_t i = 1; i + 1 < trace.t.size(); ++i) {
    const double fv = trace.firstVariation[i];
    if (std::abs(fv) < 1e-6) continue;
    CHECK(std::abs(trace.areaRate[i] - fv) <= 1e-5 * std::abs(fv));
  }

  const MonotonicityReport rep = monotonicity_report(space, 0.0, 0.4);
  CHECK(rep.hypothesisOk);
  CHECK(rep.htildeNonpositive);
  CHECK(rep.areaMonotone);
  CHECK_FALSE(rep.htildeVanishes);
  CHECK_FALSE(rep.rigidity);
}

TEST_CASE("reversed flow by symmetry") {
  const WarpedSpace space = preset_space("paper-sec4");
  const FlowTrace back = evolve(space, 0.0, -0.4, 200);
  CHECK(back.orientation == -1);
  CHECK(back.max_residual() <= 1e-8);
  CHECK(back.htildeOde.back() == doctest::Approx(-0.7529411764705882).epsilon(1e-8));
  const MonotonicityReport rep = monotonicity_report(space, 0.0, -0.4);
  CHECK(rep.htildeNonpositive);
  CHECK(rep.areaMonotone);

  const FlowTrace mirrored = evolve(space.reflected(), 0.0, 0.4, 200);
  for (std::size_t i = 0; i < back.t.size(); ++i) {
    CHECK(mirrored.htildeOde[i] == doctest::Approx(back.htildeOde[i]).epsilon(1e-12));
  }
}

TEST_CASE("rigidity on product models") {
  for (const char* name : {"flat", "cylinder"}) {
    const WarpedSpace space = preset_space(name);
    const FlowTrace trace = evolve(space, 0.0, 0.8, 50);
    for (double h : trace.htildeOde) CHECK(h == 0.0);
    for (double a : trace.areaWindow) CHECK(a == doctest::Approx(trace.areaWindow.front()).epsilon(1e-14));
    const MonotonicityReport rep = monotonicity_report(space, 0.0, 0.8);
    CHECK(rep.htildeVanishes);
    CHECK(rep.rigidity);
    CHECK(rep.areaMonotone);
  }
}

TEST_CASE("hypothesis failures are reported") {
  const MonotonicityReport rep = monotonicity_report(preset_space("paper-sec4"), 0.1, 0.4);
  CHECK_FALSE(rep.sliceMinimal);
  CHECK_FALSE(rep.hypothesisOk);
  CHECK_FALSE(rep.messages.empty());
  CHECK_THROWS_AS(evolve(preset_space("paper-sec4"), 0.0, 0.5, 10), PreconditionError);
  CHECK_THROWS_AS(evolve(preset_space("paper-sec4"), 0.0, 0.4, 0), PreconditionError);
}
