#include <cmath>

#include "doctest.h"
#include "fminlab/conformal.hpp"
#include "fminlab/error.hpp"

using namespace fminlab;

namespace {

// lambda = -(R - r)^5 written out by hand: lambda' = 5 rho^4, lambda'' = -20 rho^3.
double radial_formula(double t, double rho, double r) { return t * (40 * std::pow(rho, 3) - 10 * std::pow(rho, 4) / r); }

double tangential_formula(double t, double rho, double r) {
  return t * (20 * std::pow(rho, 3) - 15 * std::pow(rho, 4) / r) - 25 * t * t * std::pow(rho, 8);
}

}  // namespace

TEST_CASE("conformal Ricci examples") {
  const ConformalProbe p = ConformalProbe::make(1.0, 7.0 / 8.0, 1e-3);
  CHECK(conformal_ricci(p, 0.9, Direction::Radial) == doctest::Approx(3.8888888888888894e-5).epsilon(1e-12));
  CHECK(conformal_ricci(p, 0.9, Direction::Tangential) ==
        doctest::Approx(1.8333333333333333e-5 - 2.5e-13).epsilon(1e-12));
  const ConformalProbe flat = ConformalProbe::make(1.0, 7.0 / 8.0, 0.0);
  CHECK(conformal_ricci(flat, 0.9, Direction::Radial) == 0.0);
  CHECK(conformal_ricci(flat, 0.95, Direction::Tangential) == 0.0);
  CHECK_THROWS_AS(conformal_ricci(p, 0.5, Direction::Radial), PreconditionError);
  CHECK_THROWS_AS(ConformalProbe::make(1.0, 1.0, 1e-3), PreconditionError);
  CHECK_THROWS_AS(ConformalProbe::make(-1.0, 0.5, 1e-3), PreconditionError);
}

TEST_CASE("conformal Ricci matches the hand-reduced formulas") {
  for (double R : {1.0, 2.0}) {
    for (double t : {1e-4, 1e-3, 1e-2, 0.1}) {
      const ConformalProbe p = ConformalProbe::make(R, 7.0 / 8.0, t);
      for (double r : p.annulus_samples(200)) {
        const double rho = R - r;
        const double rad = radial_formula(t, rho, r);
        const double tan = tangential_formula(t, rho, r);
        CHECK(std::abs(conformal_ricci(p, r, Direction::Radial) - rad) <= 1e-12 * std::abs(rad) + 1e-300);
        CHECK(std::abs(conformal_ricci(p, r, Direction::Tangential) - tan) <= 1e-12 * std::abs(tan) + 1e-300);
      }
    }
  }
}

TEST_CASE("annulus positivity for small t") {
  for (double t : {1e-4, 1e-3, 1e-2}) {
    const AnnulusScan scan = scan_annulus(ConformalProbe::make(1.0, 7.0 / 8.0, t), 200);
    CHECK(scan.samples == 200);
    CHECK(scan.min_ricf_t > 0.0);
  }
}

TEST_CASE("Christoffel law is exact for conformally flat metrics") {
  CHECK(conformal_christoffel_check(ConformalProbe::make(1.0, 7.0 / 8.0, 1e-3), 0.9) <= 1e-12);
  CHECK(conformal_christoffel_check(ConformalProbe::make(1.0, 7.0 / 8.0, 1e-2), 0.95) <= 1e-12);
  CHECK(conformal_christoffel_check(ConformalProbe::make(1.0, 7.0 / 8.0, 0.0), 0.9) == 0.0);
}

TEST_CASE("Hessian gap") {
  const ConformalProbe zero = ConformalProbe::make(1.0, 7.0 / 8.0, 1e-3);
  const HessianGap g0 = conformal_hessian_gap(zero, 0.9);
  CHECK(g0.gap == 0.0);
  CHECK(g0.bound == 0.0);

  for (double t : {1e-4, 1e-3, 1e-2}) {
    const ConformalProbe p = ConformalProbe::make(1.0, 7.0 / 8.0, t, parse("sin(r)", "r"));
    for (double r : p.annulus_samples(200)) {
      const HessianGap h = conformal_hessian_gap(p, r);
      const double lp = 5 * std::pow(1 - r, 4);
      // t f' lambda' (I - 2 e_r e_r^T): smallest eigenvalue -t |f' lambda'|.
      CHECK(h.gap == doctest::Approx(-t * std::abs(std::cos(r)) * lp).epsilon(1e-12));
      CHECK(h.bound == doctest::Approx(-3 * t * std::abs(std::cos(r)) * lp).epsilon(1e-12));
      CHECK(h.gap >= h.bound);
    }
  }

  // Linear vanishing in t.
  const double a = conformal_hessian_gap(ConformalProbe::make(1.0, 0.875, 1e-3, parse("sin(r)", "r")), 0.9).gap;
  const double b = conformal_hessian_gap(ConformalProbe::make(1.0, 0.875, 1e-4, parse("sin(r)", "r")), 0.9).gap;
  CHECK(a / b == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("rho^5 Hessian identity and distance bound") {
  const ConformalProbe p = ConformalProbe::make(1.0, 7.0 / 8.0, 1e-3);
  for (double r : p.annulus_samples(200)) {
    for (Direction d : {Direction::Radial, Direction::Tangential}) {
      CHECK(rho5_hessian_discrepancy(p, r, d) <= 1e-14);
      const DistanceBound b = distance_term_bound(p, r, d);
      CHECK(b.value == doctest::Approx(d == Direction::Radial ? 2 / r : 3 / r).epsilon(1e-14));
      CHECK(b.bound == doctest::Approx(27 / (8 * r)).epsilon(1e-14));
      CHECK(b.value <= b.bound);
    }
  }
}

TEST_CASE("lower estimate bounds the weighted change") {
  for (double t : {1e-4, 1e-3, 1e-2}) {
    const ConformalProbe p = ConformalProbe::make(1.0, 7.0 / 8.0, t, parse("0.1*sin(r)", "r"));
    for (double r : p.annulus_samples(200)) {
      for (Direction d : {Direction::Radial, Direction::Tangential}) {
        // Flat background f = 0.1 sin r: Ric_f = f_vv, so the change is Ric^t_f - f_vv.
        const double change = conformal_ricci_f(p, r, d) -
                              (d == Direction::Radial ? -0.1 * std::sin(r) : 0.1 * std::cos(r) / r);
        CHECK(change >= conformal_lower_estimate(p, r, d) - 1e-15);
      }
    }
  }
}
