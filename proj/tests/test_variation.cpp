#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "fminlab/error.hpp"
#include "fminlab/hypersurface.hpp"
#include "fminlab/spectrum.hpp"
#include "fminlab/variation.hpp"

using namespace fminlab;

namespace {

// Integral of cos(b rho) sinh(rho) over [0, L], from the antiderivatives of
// e^{+-rho} cos(b rho).
double cos_sinh_integral(double b, double L) {
  auto plus = [&](double x) { return std::exp(x) * (std::cos(b * x) + b * std::sin(b * x)) / (1 + b * b); };
  auto minus = [&](double x) { return std::exp(-x) * (-std::cos(b * x) + b * std::sin(b * x)) / (1 + b * b); };
  return 0.5 * (plus(L) - plus(0)) - 0.5 * (minus(L) - minus(0));
}

std::vector<RadialProfile> profile_matrix() {
  return {RadialProfile::cosine_cap(2.0), RadialProfile::expression(parse("1-(r/2)^2", "r"), 2.0),
          RadialProfile::expression(parse("(1-(r/2)^2)^2", "r"), 2.0)};
}

}  // namespace

TEST_CASE("radial profiles") {
  const RadialProfile cap = RadialProfile::cosine_cap(2.0);
  CHECK(std::abs(cap.value(2.0)) <= 1e-12);
  CHECK(cap.derivative(0.0) == 0.0);
  CHECK(cap.max_abs() == 1.0);
  CHECK_THROWS_AS(RadialProfile::expression(parse("1-r/2", "r"), 2.0), PreconditionError);
  CHECK_THROWS_AS(RadialProfile::expression(parse("1-r^2", "r"), 2.0), PreconditionError);

  const RadialProfile cut = RadialProfile::log_cutoff(10.0);
  CHECK(cut.value(5.0) == 1.0);
  CHECK(cut.value(10.0) == 1.0);
  CHECK(std::abs(cut.value(100.0)) <= 1e-15);
  CHECK(cut.derivative(20.0) == doctest::Approx(-1 / (20 * std::log(10.0))));
}

TEST_CASE("weighted area examples") {
  const RadialProfile cap2 = RadialProfile::cosine_cap(2.0);
  CHECK(weighted_area(preset_space("flat"), 0.0, cap2, 0.0) == doctest::Approx(M_PI * 4).epsilon(1e-12));
  // sinh integrates to cosh 2 - 1 on the hyperbolic base disk.
  CHECK(weighted_area(preset_space("paper-sec4"), 0.0, cap2, 0.0) ==
        doctest::Approx(2 * M_PI * (std::cosh(2.0) - 1)).epsilon(1e-10));

  // Flat: A(s) = pi rho^2 + (s^2 / 2) int |grad lambda|^2 + O(s^4).
  const WarpedSpace flat = preset_space("flat");
  const double energy = second_variation_form(flat, 0.0, cap2);
  auto remainder = [&](double s) {
    return weighted_area(flat, 0.0, cap2, s) - (M_PI * 4 + 0.5 * s * s * energy);
  };
  CHECK(remainder(0.1) / remainder(0.05) == doctest::Approx(16.0).epsilon(0.01));

  CHECK_THROWS_AS(weighted_area(preset_space("paper-sec4"), 0.4, cap2, 0.1), PreconditionError);
}

TEST_CASE("second variation closed values") {
  // Hyperbolic slice t0 = 0: q = 0, |grad lambda|^2 = (pi/4)^2 sin^2(pi rho / 4).
  const double hyper = 2 * M_PI * (M_PI * M_PI / 16) *
                       (0.5 * (std::cosh(2.0) - 1) - 0.5 * cos_sinh_integral(M_PI / 2, 2.0));
  const WarpedSpace sec4 = preset_space("paper-sec4");
  const double Q = second_variation_form(sec4, 0.0, RadialProfile::cosine_cap(2.0));
  CHECK(Q == doctest::Approx(hyper).epsilon(1e-10));
  CHECK(Q > 0.0);
  CHECK(Q == doctest::Approx(8.01438).epsilon(1e-5));

  // Flat, cosineCap(1): 2 pi (pi^2 / 4) (1/4 + 1/pi^2).
  const double flat_exact = M_PI * M_PI * M_PI / 8 + M_PI / 2;
  const WarpedSpace flat = preset_space("flat");
  const RadialProfile cap1 = RadialProfile::cosine_cap(1.0);
  CHECK(second_variation_form(flat, 0.0, cap1) == doctest::Approx(flat_exact).epsilon(1e-10));
  const double fd = second_variation_fd(flat, 0.0, cap1);
  CHECK(std::abs(fd - flat_exact) <= 1e-6 * flat_exact);

  // Scaling.
  const RadialProfile p = RadialProfile::expression(parse("1-(r/2)^2", "r"), 2.0);
  const RadialProfile p3 = RadialProfile::expression(parse("3*(1-(r/2)^2)", "r"), 2.0);
  CHECK(second_variation_form(sec4, 0.0, p3) ==
        doctest::Approx(9 * second_variation_form(sec4, 0.0, p)).epsilon(1e-12));

  CHECK_THROWS_AS(second_variation_form(sec4, 0.25, p), PreconditionError);
}

TEST_CASE("second variation form against the area oracle") {
  const std::vector<std::pair<const char*, double>> models = {
      {"paper-sec4", 0.0}, {"flat", 0.0}, {"paper-remark", 0.5}};
  for (const auto& [name, t0] : models) {
    const WarpedSpace space = preset_space(name);
    for (const RadialProfile& p : profile_matrix()) {
      const double Q = second_variation_form(space, t0, p);
      const double Qfd = second_variation_fd(space, t0, p);
      INFO(name << " Q=" << Q << " Qfd=" << Qfd);
      CHECK(std::abs(Q - Qfd) <= 1e-4 * std::abs(Q));
    }
  }
}

TEST_CASE("first variation") {
  const WarpedSpace sec4 = preset_space("paper-sec4");
  const RadialProfile cap = RadialProfile::cosine_cap(2.0);
  for (double t0 : {-0.3, -0.1, 0.1, 0.25, 0.4}) {
    const double exact = first_variation(sec4, t0, cap);
    const double fd = first_variation_fd(sec4, t0, cap);
    INFO("t0=" << t0);
    CHECK(std::abs(exact - fd) <= 1e-5 * std::abs(exact));
    // Slice H recovered from the area oracle: dA/ds = (H - f_n) e^{-f} g 2 pi int lambda sinh.
    const SliceShape s = slice_shape(sec4, t0);
    const double moment = cos_sinh_integral(M_PI / 4, 2.0);
    const double density = std::exp(2 * t0 * t0) * (1 - 2 * t0 * t0) * 2 * M_PI * moment;
    CHECK(fd / density + s.fn == doctest::Approx(s.H).epsilon(1e-5));
  }
  for (const char* name : {"paper-sec4", "paper-remark"}) {
    const WarpedSpace space = preset_space(name);
    for (const SliceShape& root : f_minimal_roots(space, 1e-14).roots) {
      const double area = weighted_area(space, root.t0, cap, 0.0);
      CHECK(std::abs(first_variation(space, root.t0, cap)) <= 1e-9 * area);
      CHECK(std::abs(first_variation_fd(space, root.t0, cap)) <= 1e-9 * area);
    }
  }
  CHECK(first_variation(preset_space("flat"), 0.7, cap) == 0.0);
}

TEST_CASE("Rayleigh quotient never beats the ground state") {
  const std::vector<std::pair<const char*, double>> models = {
      {"paper-sec4", 0.0}, {"flat", 0.0}, {"paper-remark", 0.5}};
  for (const auto& [name, t0] : models) {
    const WarpedSpace space = preset_space(name);
    const double mu1 = stability_spectrum(space, t0, 2.0).mu1;
    for (const RadialProfile& p : profile_matrix()) {
      const double rq = second_variation_form(space, t0, p) / weighted_l2(space, t0, p);
      INFO(name << " rq=" << rq << " mu1=" << mu1);
      CHECK(rq >= mu1 - 1e-6);
    }
  }
}

TEST_CASE("Richardson table") {
  // D(h) = 1 + h^2 + h^4 is resolved exactly by three levels.
  std::vector<double> h = {0.1, 0.05, 0.025}, d;
  for (double x : h) d.push_back(1 + x * x + x * x * x * x);
  double corr = 0.0;
  CHECK(richardson(h, d, &corr) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(richardson({}, {}), PreconditionError);
}
