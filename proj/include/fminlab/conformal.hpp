#pragma once

#include <vector>

#include "fminlab/expr.hpp"

namespace fminlab {

enum class Direction { Radial, Tangential };

// Conformal perturbation g(t) = exp(2 t lambda) g0 of a flat 3-ball of
// radius R, with lambda = -rho^5 and rho = R - r near the boundary sphere.
// All profiles are expressions in r.
struct ConformalProbe {
  double R = 1.0;
  double a = 7.0 / 8.0;
  double t = 1e-3;
  Expr rho;
  Expr lambda;
  Expr weight;  // background f(r)
  Expr rho_d1, rho_d2, lambda_d1, lambda_d2, weight_d1, weight_d2;

  // Throws PreconditionError unless 0 < a < 1, t >= 0 and R > 0.
  static ConformalProbe make(double R, double a, double t, const Expr& weight);
  static ConformalProbe make(double R, double a, double t);

  bool in_annulus(double r) const { return r > a * R && r < R; }
  void require_annulus(double r) const;
  // Midpoints of `count` equal cells of the open annulus (aR, R).
  std::vector<double> annulus_samples(int count) const;
};

// Ric^t(v, v) for a g0-unit vector v, flat background, dimension 3.
double conformal_ricci(const ConformalProbe& probe, double r, Direction direction);

// Ric^t(v, v) + f^t_vv.
double conformal_ricci_f(const ConformalProbe& probe, double r, Direction direction);

struct HessianGap {
  double gap = 0.0;    // min over unit v of f^t_vv - f_vv
  double bound = 0.0;  // -3 t |grad f| |grad lambda|
};

HessianGap conformal_hessian_gap(const ConformalProbe& probe, double r);

// Max |Gamma_direct - Gamma_law| over all index triples at Cartesian points
// of radius r along a fixed set of directions.
double conformal_christoffel_check(const ConformalProbe& probe, double r);

// |Hess(rho^5)(v,v) - (20 rho^3 v(rho)^2 + 5 rho^4 Hess(rho)(v,v))|.
double rho5_hessian_discrepancy(const ConformalProbe& probe, double r, Direction direction);

struct DistanceBound {
  double value = 0.0;  // |Laplacian(rho) + Hess(rho)(v,v)|
  double bound = 0.0;  // 9 (2m - 3) / (8 r)
};

DistanceBound distance_term_bound(const ConformalProbe& probe, double r, Direction direction);

// Lower estimate 20 t rho^3 + 5 t rho^4 (Lap rho + Hess rho(v,v))
// - 25 t^2 rho^8 - 15 t rho^4 |grad f| for the change of Ric_f under the
// perturbation.
double conformal_lower_estimate(const ConformalProbe& probe, double r, Direction direction);

struct AnnulusScan {
  double min_ricf_t = 0.0;
  double argmin_r = 0.0;
  Direction argmin_direction = Direction::Radial;
  int samples = 0;
};

AnnulusScan scan_annulus(const ConformalProbe& probe, int samples);

}  // namespace fminlab
