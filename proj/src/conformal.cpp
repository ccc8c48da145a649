#include "fminlab/conformal.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fminlab/error.hpp"

namespace fminlab {

namespace {

constexpr double kDim = 3.0;

// Radial function h(r) on flat R^3: grad = h' e_r, Hess = diag(h'', h'/r, h'/r).
double radial_hessian(double d1, double d2, double r, Direction v) {
  return v == Direction::Radial ? d2 : d1 / r;
}

double radial_laplacian(double d1, double d2, double r) { return d2 + (kDim - 1.0) * d1 / r; }

}  // namespace

ConformalProbe ConformalProbe::make(double R, double a, double t, const Expr& weight) {
  if (!(R > 0.0)) throw PreconditionError("ball radius R must be positive");
  if (!(a > 0.0 && a < 1.0)) throw PreconditionError("annulus fraction a must lie in (0, 1)");
  if (!(t >= 0.0)) throw PreconditionError("perturbation size t must be nonnegative");
  ConformalProbe p;
  p.R = R;
  p.a = a;
  p.t = t;
  p.rho = Expr::constant(R) - Expr::variable("r");
  p.lambda = -pow(p.rho, 5.0);
  p.weight = weight;
  p.rho_d1 = differentiate(p.rho);
  p.rho_d2 = differentiate(p.rho_d1);
  p.lambda_d1 = differentiate(p.lambda);
  p.lambda_d2 = differentiate(p.lambda_d1);
  p.weight_d1 = differentiate(weight);
  p.weight_d2 = differentiate(p.weight_d1);
  return p;
}

ConformalProbe ConformalProbe::make(double R, double a, double t) {
  return make(R, a, t, Expr::constant(0.0));
}

void ConformalProbe::require_annulus(double r) const {
  if (!in_annulus(r)) {
    throw PreconditionError("r = " + std::to_string(r) + " outside the annulus (aR, R)");
  }
}

std::vector<double> ConformalProbe::annulus_samples(int count) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const double lo = a * R;
  const double width = R - lo;
  for (int i = 0; i < count; ++i) out.push_back(lo + width * (i + 0.5) / count);
  return out;
}

double conformal_ricci(const ConformalProbe& p, double r, Direction v) {
  p.require_annulus(r);
  const double l1 = p.lambda_d1.eval(r);
  const double l2 = p.lambda_d2.eval(r);
  const double lvv = radial_hessian(l1, l2, r, v);
  const double lap = radial_laplacian(l1, l2, r);
  const double v_lambda_sq = v == Direction::Radial ? l1 * l1 : 0.0;
  const double grad_sq = l1 * l1;
  const double ric0 = 0.0;  // flat background
  const double t = p.t;
  return ric0 - t * (kDim - 2.0) * lvv - t * lap + t * t * (kDim - 2.0) * (v_lambda_sq - grad_sq);
}

namespace {

// Diagonal of t(<grad f, grad lambda> I - lambda_i f_j - lambda_j f_i) in the
// radial frame (e_r, e_theta, e_phi).
std::array<double, 3> gap_diagonal(const ConformalProbe& p, double r) {
  const std::array<double, 3> grad_f = {p.weight_d1.eval(r), 0.0, 0.0};
  const std::array<double, 3> grad_l = {p.lambda_d1.eval(r), 0.0, 0.0};
  double inner = 0.0;
  for (int i = 0; i < 3; ++i) inner += grad_f[i] * grad_l[i];
  std::array<double, 3> diag{};
  for (int i = 0; i < 3; ++i) {
    diag[i] = p.t * (inner - 2.0 * grad_l[i] * grad_f[i]);
  }
  return diag;
}

}  // namespace

double conformal_ricci_f(const ConformalProbe& p, double r, Direction v) {
  const double ric = conformal_ricci(p, r, v);
  const double f_vv = radial_hessian(p.weight_d1.eval(r), p.weight_d2.eval(r), r, v);
  const auto diag = gap_diagonal(p, r);
  return ric + f_vv + (v == Direction::Radial ? diag[0] : diag[1]);
}

HessianGap conformal_hessian_gap(const ConformalProbe& p, double r) {
  p.require_annulus(r);
  const auto diag = gap_diagonal(p, r);
  HessianGap out;
  out.gap = std::min({diag[0], diag[1], diag[2]});
  out.bound = -3.0 * p.t * std::abs(p.weight_d1.eval(r)) * std::abs(p.lambda_d1.eval(r));
  if (out.gap < out.bound - 1e-15 * (1.0 + std::abs(out.bound))) {
    throw ContractViolation("Hessian gap below -3t|grad f||grad lambda|");
  }
  return out;
}

double conformal_christoffel_check(const ConformalProbe& p, double r) {
  using Mat = std::array<std::array<double, 3>, 3>;
  const std::array<std::array<double, 3>, 5> directions = {{
      {1.0, 0.0, 0.0},
      {0.0, 1.0, 0.0},
      {0.0, 0.0, 1.0},
      {1.0, 1.0, 1.0},
      {1.0, -2.0, 0.5},
  }};
  const double lam = p.lambda.eval(r);
  const double lam1 = p.lambda_d1.eval(r);
  const double conf = std::exp(2.0 * p.t * lam);
  const double dconf = conf * 2.0 * p.t * lam1;  // d/dr of exp(2 t lambda)

  double worst = 0.0;
  for (auto u : directions) {
    const double n = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    std::array<double, 3> x{};
    for (int i = 0; i < 3; ++i) x[i] = r * u[i] / n;

    Mat g{};
    std::array<Mat, 3> dg{};  // dg[k][i][j] = d_k g_ij
    for (int i = 0; i < 3; ++i) g[i][i] = conf;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) dg[k][i][i] = dconf * x[k] / r;

    // Inverse by cofactors; the metric is not assumed diagonal here.
    Mat gi{};
    const double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                       g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                       g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        gi[i][j] = (g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1]) / det;
      }

    std::array<double, 3> grad{};
    for (int i = 0; i < 3; ++i) grad[i] = lam1 * x[i] / r;

    for (int s = 0; s < 3; ++s)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double direct = 0.0;
          for (int l = 0; l < 3; ++l) {
            direct += 0.5 * gi[s][l] * (dg[j][i][l] + dg[i][j][l] - dg[l][i][j]);
          }
          const double law = p.t * (grad[j] * (i == s) + grad[i] * (j == s) - grad[s] * (i == j));
          worst = std::max(worst, std::abs(direct - law));
        }
  }
  return worst;
}

double rho5_hessian_discrepancy(const ConformalProbe& p, double r, Direction v) {
  p.require_annulus(r);
  const Expr rho5 = pow(p.rho, 5.0);
  const Expr d1 = differentiate(rho5);
  const Expr d2 = differentiate(d1);
  const double direct = radial_hessian(d1.eval(r), d2.eval(r), r, v);
  const double rho = p.rho.eval(r);
  const double drho = p.rho_d1.eval(r);
  const double v_rho = v == Direction::Radial ? drho : 0.0;
  const double hess_rho = radial_hessian(drho, p.rho_d2.eval(r), r, v);
  const double identity = 20.0 * std::pow(rho, 3) * v_rho * v_rho + 5.0 * std::pow(rho, 4) * hess_rho;
  return std::abs(direct - identity);
}

DistanceBound distance_term_bound(const ConformalProbe& p, double r, Direction v) {
  p.require_annulus(r);
  const double d1 = p.rho_d1.eval(r);
  const double d2 = p.rho_d2.eval(r);
  DistanceBound out;
  out.value = std::abs(radial_laplacian(d1, d2, r) + (kDim - 2.0) * radial_hessian(d1, d2, r, v));
  const double rho = p.rho.eval(r);
  out.bound = 9.0 * (2.0 * kDim - 3.0) / (8.0 * (p.R - rho));
  return out;
}

double conformal_lower_estimate(const ConformalProbe& p, double r, Direction v) {
  p.require_annulus(r);
  const double rho = p.rho.eval(r);
  const double d1 = p.rho_d1.eval(r);
  const double d2 = p.rho_d2.eval(r);
  const double t = p.t;
  const double grad_f = std::abs(p.weight_d1.eval(r));
  return 20.0 * t * std::pow(rho, 3) +
         5.0 * t * std::pow(rho, 4) * (radial_laplacian(d1, d2, r) + (kDim - 2.0) * radial_hessian(d1, d2, r, v)) -
         25.0 * (kDim - 2.0) * t * t * std::pow(rho, 8) - 15.0 * t * std::pow(rho, 4) * grad_f;
}

AnnulusScan scan_annulus(const ConformalProbe& p, int samples) {
  AnnulusScan scan;
  scan.samples = samples;
  scan.min_ricf_t = std::numeric_limits<double>::infinity();
  for (double r : p.annulus_samples(samples)) {
    for (auto v : {Direction::Radial, Direction::Tangential}) {
      const double value = conformal_ricci_f(p, r, v);
      if (value < scan.min_ricf_t) {
        scan.min_ricf_t = value;
        scan.argmin_r = r;
        scan.argmin_direction = v;
      }
    }
  }
  return scan;
}

}  // namespace fminlab
