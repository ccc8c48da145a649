#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "fminlab/curvature.hpp"
#include "fminlab/error.hpp"

using namespace fminlab;

namespace {

void check_close(double fd, double exact, const char* what) {
  INFO(what << ": fd " << fd << " closed " << exact);
  CHECK(std::abs(fd - exact) <= std::max(1e-5 * std::abs(exact), 1e-8));
}

}  // namespace

TEST_CASE("closed form on the hyperbolic example") {
  const WarpedSpace space = preset_space("paper-sec4");
  const CurvatureReport c = closed_form_curvature(space, 0.25);
  CHECK(c.ricf11 == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(c.ricf33 == doctest::Approx(1.2244897959183674).epsilon(1e-12));
  CHECK(c.ric33 == doctest::Approx(2.0 * c.R1331 / c.g).epsilon(1e-12));
  CHECK(c.minEig == std::min(c.unitf11, c.ricf33));
}

TEST_CASE("hyperbolic example on 101 points") {
  const WarpedSpace space = preset_space("paper-sec4");
  for (const CurvatureReport& c : sample_curvature(space, 101, 2)) {
    const double t = c.t;
    CHECK(std::abs(c.ricf11 - (1 + 8 * t * t)) <= 1e-9);
    CHECK(std::abs(c.ricf33 - 4 * (1 / ((1 - 2 * t * t) * (1 - 2 * t * t)) - 1)) <= 1e-9);
    CHECK(c.nonnegative());
    CHECK(std::abs(c.ric33 - 2 * c.R1331 / c.g) <= 1e-12);
  }
}

TEST_CASE("remark model") {
  const WarpedSpace space = preset_space("paper-remark");
  for (const CurvatureReport& c : sample_curvature(space, 201)) {
    CHECK(std::abs(c.ricf33 - 1.5) <= 1e-9);
    CHECK(c.ricf11 == doctest::Approx(1 + std::exp(c.t) * (c.t - 0.5)).epsilon(1e-12));
  }
  const ComponentMinimum m = curvature_minimum(space, [](const CurvatureReport& c) { return c.ricf11; });
  CHECK(std::abs(m.value - (1 - std::exp(-0.5))) <= 1e-6);
  CHECK(std::abs(m.t + 0.5) <= 1e-4);
}

TEST_CASE("flat and cylinder") {
  for (const CurvatureReport& c : sample_curvature(preset_space("flat"), 11)) {
    CHECK(c.R1221 == 0.0);
    CHECK(c.ricf11 == 0.0);
    CHECK(c.ricf33 == 0.0);
    CHECK(c.Sf == 0.0);
  }
  const CurvatureReport c = closed_form_curvature(preset_space("cylinder"), 0.0);
  CHECK(c.ric11 == 1.0);
  CHECK(c.ric33 == 0.0);
  CHECK(c.S == 2.0);
}

TEST_CASE("warp positivity and domain checks") {
  try {
    WarpedSpace::from_text(0, "-1", "0", -1, 1);
    FAIL("negative warp accepted");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("warp must be positive") != std::string::npos);
  }
  CHECK_THROWS_AS(WarpedSpace::from_text(2, "1", "0", -1, 1), PreconditionError);
  CHECK_THROWS_AS(WarpedSpace::from_text(0, "1", "0", 1, 1), PreconditionError);
  CHECK_THROWS_AS(closed_form_curvature(preset_space("paper-sec4"), 0.5), PreconditionError);
}

TEST_CASE("finite-difference tensor oracle") {
  SUBCASE("pinned examples") {
    const FdCurvature fd = fd_oracle_curvature(preset_space("paper-sec4"), 0.25, 1.0);
    check_close(fd.report.ricf11, 1.5, "ricf11");
    check_close(fd.report.ricf33, 1.2244897959183674, "ricf33");
    CHECK(fd.mixed_max <= 1e-6);

    const FdCurvature flat = fd_oracle_curvature(preset_space("flat"), 0.0, 1.0);
    CHECK(std::abs(flat.report.R1221) <= 1e-8);
    CHECK(std::abs(flat.report.ricf33) <= 1e-8);
    CHECK(std::abs(flat.report.S) <= 1e-8);

    const FdCurvature cyl = fd_oracle_curvature(preset_space("cylinder"), 0.0, 1.0);
    check_close(cyl.report.ric11, 1.0, "ric11");
    check_close(cyl.report.ric33, 0.0, "ric33");
    check_close(cyl.report.S, 2.0, "S");
  }

  SUBCASE("independent of the base radius") {
    const WarpedSpace space = preset_space("paper-remark");
    const double a = fd_oracle_curvature(space, 0.3, 0.4).report.ricf11;
    const double b = fd_oracle_curvature(space, 0.3, 2.5).report.ricf11;
    CHECK(std::abs(a - b) <= 1e-5 * std::abs(a));
  }

  SUBCASE("agrees with the closed form on five models") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const char* name : {"paper-sec4", "paper-remark", "flat", "cylinder", "sphere"}) {
      const WarpedSpace space = preset_space(name);
      const double lo = space.t_min() + 0.05, hi = space.t_max() - 0.05;
      for (int i = 0; i < 20; ++i) {
        const double t = lo + (hi - lo) * unit(rng);
        const double rho = 0.1 + 2.8 * unit(rng);
        INFO(name << " t=" << t << " rho=" << rho);
        const CurvatureReport c = closed_form_curvature(space, t);
        const FdCurvature fd = fd_oracle_curvature(space, t, rho);
        check_close(fd.report.R1221, c.R1221, "R1221");
        check_close(fd.report.R1331, c.R1331, "R1331");
        check_close(fd.report.ric11, c.ric11, "ric11");
        check_close(fd.report.ric33, c.ric33, "ric33");
        check_close(fd.report.ricf11, c.ricf11, "ricf11");
        check_close(fd.report.ricf33, c.ricf33, "ricf33");
        check_close(fd.report.S, c.S, "S");
        check_close(fd.report.lapf, c.lapf, "lapf");
        CHECK(fd.mixed_max <= 1e-6);
      }
    }
  }

  SUBCASE("preconditions") {
    const WarpedSpace space = preset_space("sphere");
    CHECK_THROWS_AS(fd_oracle_curvature(space, 1.0, 0.01), PreconditionError);
    CHECK_THROWS_AS(fd_oracle_curvature(space, 1.0, 3.2), PreconditionError);
    CHECK_THROWS_AS(fd_oracle_curvature(space, 1.0, 1.0, 1e-6), PreconditionError);
    CHECK_THROWS_AS(fd_oracle_curvature(space, 0.1, 1.0), PreconditionError);
  }
}
