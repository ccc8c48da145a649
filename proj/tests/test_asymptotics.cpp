#include <cmath>

#include "doctest.h"
#include "fminlab/asymptotics.hpp"
#include "fminlab/error.hpp"

using namespace fminlab;

namespace {

RadialMeasureModel model(const char* g, const char* f, double r_min, double r_max) {
  return RadialMeasureModel(3, parse(g, "r"), parse(f, "r"), r_min, r_max);
}

}  // namespace

TEST_CASE("cutoff energy") {
  const Expr quad = parse("2*r", "r");
  CHECK(std::abs(cutoff_energy(quad, 100.0) - 2 / std::log(100.0)) <= 1e-6 * 2 / std::log(100.0));
  for (double a : {1e2, 1e3, 1e4, 1e5, 1e6}) {
    CHECK(std::abs(cutoff_energy(quad, a) * std::log(a) - 2.0) <= 2e-6);
  }
  // V' = 2 C r with C = 3.
  CHECK(cutoff_energy(parse("6*r", "r"), 1e3) * std::log(1e3) == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(cutoff_energy(parse("0", "r"), 100.0) == 0.0);
  CHECK_THROWS_AS(cutoff_energy(quad, 1.0), PreconditionError);
  CHECK_THROWS_AS(cutoff_energy(parse("-r", "r"), 10.0), PreconditionError);
}

TEST_CASE("decay fit") {
  const std::vector<double> grid = {1e2, 1e3, 1e4, 1e5};
  const DecayFit f2 = decay_fit(parse("2*r", "r"), grid);
  CHECK(std::abs(f2.slope - 1.0) <= 1e-3);
  CHECK_FALSE(f2.hypothesisViolated);
  CHECK(std::abs(decay_fit(parse("r", "r"), grid).slope - 1.0) <= 1e-3);

  const DecayFit quartic = decay_fit(parse("4*r^3", "r"), grid);
  CHECK(quartic.hypothesisViolated);
  CHECK_FALSE(quartic.warning.empty());
  CHECK(std::abs(quartic.slope - 1.0) > 0.05);

  CHECK_THROWS_AS(decay_fit(parse("2*r", "r"), {1e2, 1e3, 1e4}), PreconditionError);
  CHECK_THROWS_AS(decay_fit(parse("2*r", "r"), {1e2, 1e4, 1e3, 1e5}), PreconditionError);
  CHECK_THROWS_AS(decay_fit(parse("2*r", "r"), {2, 1e3, 1e4, 1e5}), PreconditionError);
  CHECK_THROWS_AS(decay_fit(parse("0", "r"), grid), ContractViolation);
}

TEST_CASE("sphere area ratio") {
  SUBCASE("flat equality case") {
    const ComparisonReport r = sphere_area_ratio(model("r^2", "0", 0.1, 10.0), 1.0, 2.0, 3.0);
    CHECK(std::abs(r.ratio - 4.0) <= 1e-12);
    CHECK(r.bound == 4.0);
    CHECK(r.AR == 0.0);
    CHECK(std::abs(r.margin) <= 1e-12);
    CHECK(r.hypothesisChecked);
    CHECK(r.hypothesisOk);
  }
  SUBCASE("round sphere") {
    const ComparisonReport r = sphere_area_ratio(model("sin(r)^2", "0", 0.1, 3.1), 0.5, 1.0, 1.02);
    const double exact = std::pow(std::sin(1.0) / std::sin(0.5), 2);
    CHECK(r.ratio == doctest::Approx(exact).epsilon(1e-13));
    CHECK(r.ratio == doctest::Approx(3.0806).epsilon(1e-4));
    CHECK(r.bound == 4.0);
    CHECK(r.margin > 0.0);
    CHECK(r.applicable);
  }
  SUBCASE("perturbed sphere") {
    const ComparisonReport r =
        sphere_area_ratio(model("sin(r)^2", "0.1*cos(r)", 0.1, 3.1), 0.5, 1.0, 1.02);
    CHECK(r.hypothesisOk);
    CHECK(r.AR <= 0.1);
    CHECK(r.AR >= 0.0995);
    CHECK(r.bound <= std::exp(0.4) * 4.0);
    CHECK(r.margin >= 0.0);
    const double exact = std::pow(std::sin(1.0) / std::sin(0.5), 2) * std::exp(-0.1 * (std::cos(1.0) - std::cos(0.5)));
    CHECK(r.ratio == doctest::Approx(exact).epsilon(1e-13));
  }
  SUBCASE("hypothesis failure is reported, not thrown") {
    // e^{-f} with f = -r^2 bends Ric_f negative along the radius.
    const ComparisonReport r = sphere_area_ratio(model("r^2", "-r^2", 0.1, 10.0), 1.0, 2.0, 3.0);
    CHECK(r.hypothesisChecked);
    CHECK_FALSE(r.hypothesisOk);
    CHECK_FALSE(r.applicable);
  }
  CHECK_THROWS_AS(sphere_area_ratio(model("r^2", "0", 0.1, 8.0), 1.0, 2.0, 3.0), PreconditionError);
}

TEST_CASE("ball volume and growth") {
  const RadialMeasureModel flat = model("r^2", "0", 0.1, 10.0);
  for (double r : {0.5, 2.0, 10.0}) {
    CHECK(ball_volume(flat, r) == doctest::Approx(4 * M_PI / 3 * (r * r * r - 1e-3)).epsilon(1e-12));
  }
  // dV/dr = sphere area.
  for (double r : {0.7, 3.0, 8.0}) {
    const double h = 1e-3;
    const double dv = (ball_volume(flat, r + h) - ball_volume(flat, r - h)) / (2 * h);
    CHECK(dv == doctest::Approx(flat.sphere_area(r)).epsilon(1e-6));
  }
  const GrowthCheck g = polynomial_growth_check(flat);
  CHECK(g.slope == doctest::Approx(3.0).epsilon(0.01));
  CHECK(g.withinOrder);
  CHECK(g.hypothesisOk);

  const GrowthCheck sphere = polynomial_growth_check(model("sin(r)^2", "0", 0.1, 3.1));
  CHECK(sphere.slope < 3.0);
  CHECK(sphere.withinOrder);

  const GrowthCheck wobble = polynomial_growth_check(model("r^2", "sin(r)", 0.1, 200.0), 64, {40001, 1e-8});
  CHECK(wobble.boundedWeight);
  CHECK(wobble.slope <= 3.05);
  CHECK(wobble.withinOrder);
}

TEST_CASE("measure model validation") {
  CHECK_THROWS_AS(model("r^2", "0", 0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(model("r^2", "0", 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(model("-1", "0", 0.1, 1.0), PreconditionError);
  CHECK_THROWS_AS(RadialMeasureModel(1, parse("r^2", "r"), parse("0", "r"), 0.1, 1.0), PreconditionError);
  const RadialMeasureModel m4(4, parse("r^2", "r"), parse("0", "r"), 0.1, 5.0);
  CHECK(m4.sphere_area(1.0) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-14));
  bool checked = true;
  CHECK_FALSE(m4.ricf_nonnegative(&checked));
  CHECK_FALSE(checked);
}
