#include "fminlab/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "fminlab/csv.hpp"
#include "fminlab/error.hpp"
#include "fminlab/parallel.hpp"

namespace fminlab {

CurvatureReport closed_form_curvature(const WarpedSpace& space, double t) {
  space.require(t);
  CurvatureReport r;
  const double k = space.kappa();
  r.t = t;
  r.g = space.g(t);
  r.gp = space.gp(t);
  r.gpp = space.gpp(t);
  r.fp = space.fp(t);
  r.fpp = space.fpp(t);
  const double g = r.g, gp = r.gp, gpp = r.gpp;

  r.R1221 = k * g - gp * gp / 4.0;
  r.R1331 = -gpp / 2.0 + gp * gp / (4.0 * g);
  r.ric11 = k - gpp / 2.0;
  r.ric33 = -gpp / g + gp * gp / (2.0 * g * g);
  r.ricf11 = k - gpp / 2.0 + r.fp * gp / 2.0;
  r.ricf33 = (-2.0 * gpp * g + gp * gp + 2.0 * g * g * r.fpp) / (2.0 * g * g);
  r.unit11 = r.ric11 / g;
  r.unitf11 = r.ricf11 / g;
  r.S = 2.0 * r.ric11 / g + r.ric33;
  r.lapf = r.fpp + (gp / g) * r.fp;
  r.Sf = r.S + r.lapf;
  r.minEig = std::min(r.unitf11, r.ricf33);
  return r;
}

// ---------------------------------------------------------------------------
// Finite-difference tensor oracle

namespace {

constexpr int D = 3;
using Vec = std::array<double, D>;
using Mat = std::array<std::array<double, D>, D>;
using Mat3 = std::array<Mat, D>;   // [k][i][j]
using Mat4 = std::array<Mat3, D>;  // [k][l][i][j]

using MetricFn = std::function<Mat(const Vec&)>;
using ScalarFn = std::function<double(const Vec&)>;

Mat inverse(const Mat& m) {
  Mat inv{};
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < D; ++j) {
      const int i1 = (j + 1) % D, i2 = (j + 2) % D;
      const int j1 = (i + 1) % D, j2 = (i + 2) % D;
      inv[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / det;
    }
  }
  return inv;
}

// 4th-order central stencils.
constexpr std::array<double, 4> kFirstOffsets = {-2.0, -1.0, 1.0, 2.0};
constexpr std::array<double, 4> kFirstWeights = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
constexpr std::array<double, 5> kSecondOffsets = {-2.0, -1.0, 0.0, 1.0, 2.0};
constexpr std::array<double, 5> kSecondWeights = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0,
                                                  16.0 / 12.0, -1.0 / 12.0};

template <class T, class Fn>
T first_partial(const Fn& fn, Vec x, int k, double h) {
  T acc{};
  const double x0 = x[k];
  for (std::size_t s = 0; s < kFirstOffsets.size(); ++s) {
    x[k] = x0 + kFirstOffsets[s] * h;
    acc = acc + kFirstWeights[s] * fn(x);
  }
  return acc * (1.0 / h);
}

template <class T, class Fn>
T second_partial(const Fn& fn, const Vec& x, int k, int l, const Vec& h) {
  if (k == l) {
    T acc{};
    Vec y = x;
    for (std::size_t s = 0; s < kSecondOffsets.size(); ++s) {
      y[k] = x[k] + kSecondOffsets[s] * h[k];
      acc = acc + kSecondWeights[s] * fn(y);
    }
    return acc * (1.0 / (h[k] * h[k]));
  }
  T acc{};
  Vec y = x;
  for (std::size_t a = 0; a < kFirstOffsets.size(); ++a) {
    for (std::size_t b = 0; b < kFirstOffsets.size(); ++b) {
      y[k] = x[k] + kFirstOffsets[a] * h[k];
      y[l] = x[l] + kFirstOffsets[b] * h[l];
      acc = acc + (kFirstWeights[a] * kFirstWeights[b]) * fn(y);
    }
  }
  return acc * (1.0 / (h[k] * h[l]));
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat r{};
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}
Mat operator*(double s, const Mat& a) {
  Mat r{};
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) r[i][j] = s * a[i][j];
  return r;
}
Mat operator*(const Mat& a, double s) { return s * a; }

struct Tensors {
  Mat metric{};
  Mat inv{};
  Mat3 christoffel{};  // [a][b][c] = Gamma^a_bc
  Mat4 riemann{};      // [a][b][c][d] = R^a_bcd, R(d_c, d_d) d_b = R^a_bcd d_a
  Mat ricci{};
  Mat hess{};
};

Tensors tensors_at(const MetricFn& metric, const ScalarFn& weight, const Vec& x, double step) {
  Vec h{};
  for (int k = 0; k < D; ++k) h[k] = step * (1.0 + std::abs(x[k]));

  Tensors out;
  out.metric = metric(x);
  out.inv = inverse(out.metric);
  const Mat& gi = out.inv;

  Mat3 dg{};
  Mat4 ddg{};
  Vec df{};
  Mat ddf{};
  for (int k = 0; k < D; ++k) {
    dg[k] = first_partial<Mat>(metric, x, k, h[k]);
    df[k] = first_partial<double>(weight, x, k, h[k]);
    for (int l = 0; l < D; ++l) {
      if (l < k) {
        ddg[k][l] = ddg[l][k];
        ddf[k][l] = ddf[l][k];
        continue;
      }
      ddg[k][l] = second_partial<Mat>(metric, x, k, l, h);
      ddf[k][l] = second_partial<double>(weight, x, k, l, h);
    }
  }

  // d_e g^{-1} = -g^{-1} (d_e g) g^{-1}
  Mat3 dgi{};
  for (int e = 0; e < D; ++e)
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        double s = 0.0;
        for (int p = 0; p < D; ++p)
          for (int q = 0; q < D; ++q) s -= gi[a][p] * dg[e][p][q] * gi[q][b];
        dgi[e][a][b] = s;
      }

  // Lowered combination T_dbc = d_b g_dc + d_c g_db - d_d g_bc and its derivatives.
  Mat3 low{};
  Mat4 dlow{};  // [e][d][b][c]
  for (int d = 0; d < D; ++d)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) {
        low[d][b][c] = dg[b][d][c] + dg[c][d][b] - dg[d][b][c];
        for (int e = 0; e < D; ++e) {
          dlow[e][d][b][c] = ddg[e][b][d][c] + ddg[e][c][d][b] - ddg[e][d][b][c];
        }
      }

  Mat4 dgamma{};  // [e][a][b][c] = d_e Gamma^a_bc
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) {
        double s = 0.0;
        for (int d = 0; d < D; ++d) s += 0.5 * gi[a][d] * low[d][b][c];
        out.christoffel[a][b][c] = s;
        for (int e = 0; e < D; ++e) {
          double ds = 0.0;
          for (int d = 0; d < D; ++d) {
            ds += 0.5 * (dgi[e][a][d] * low[d][b][c] + gi[a][d] * dlow[e][d][b][c]);
          }
          dgamma[e][a][b][c] = ds;
        }
      }

  const Mat3& G = out.christoffel;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          double s = dgamma[c][a][d][b] - dgamma[d][a][c][b];
          for (int e = 0; e < D; ++e) s += G[a][c][e] * G[e][d][b] - G[a][d][e] * G[e][c][b];
          out.riemann[a][b][c][d] = s;
        }

  for (int b = 0; b < D; ++b)
    for (int d = 0; d < D; ++d) {
      double s = 0.0;
      for (int a = 0; a < D; ++a) s += out.riemann[a][b][a][d];
      out.ricci[b][d] = s;
      double hs = ddf[b][d];
      for (int c = 0; c < D; ++c) hs -= G[c][b][d] * df[c];
      out.hess[b][d] = hs;
    }
  return out;
}

// <R(d_x, d_y) d_z, d_w>
double lowered(const Tensors& T, int x, int y, int z, int w) {
  double s = 0.0;
  for (int a = 0; a < D; ++a) s += T.metric[w][a] * T.riemann[a][z][x][y];
  return s;
}

double derivative1(const Expr& e, double t, double h) {
  auto fn = [&](const Vec& v) { return e.eval(v[0]); };
  return first_partial<double>(fn, Vec{t, 0.0, 0.0}, 0, h);
}

double derivative2(const Expr& e, double t, double h) {
  auto fn = [&](const Vec& v) { return e.eval(v[0]); };
  return second_partial<double>(fn, Vec{t, 0.0, 0.0}, 0, 0, Vec{h, h, h});
}

FdCurvature fd_single(const WarpedSpace& space, double t, double rho, double step) {
  const int kappa = space.kappa();
  MetricFn metric = [&](const Vec& x) {
    const double gv = space.g().eval(x[0]);
    const double s = base_sine(kappa, x[1]);
    Mat m{};
    m[0][0] = 1.0;
    m[1][1] = gv;
    m[2][2] = gv * s * s;
    return m;
  };
  ScalarFn weight = [&](const Vec& x) { return space.f().eval(x[0]); };

  const Vec x{t, rho, 0.0};
  const Tensors T = tensors_at(metric, weight, x, step);
  const double s = base_sine(kappa, rho);
  const double ht = step * (1.0 + std::abs(t));

  FdCurvature out;
  CurvatureReport& r = out.report;
  r.t = t;
  r.g = space.g().eval(t);
  r.gp = derivative1(space.g(), t, ht);
  r.gpp = derivative2(space.g(), t, ht);
  r.fp = derivative1(space.f(), t, ht);
  r.fpp = derivative2(space.f(), t, ht);

  // Coordinate indices: 0 = t (e3), 1 = rho (e1), 2 = theta (e2 = d_theta / s).
  r.R1221 = lowered(T, 1, 2, 2, 1) / (s * s);
  r.R1331 = lowered(T, 1, 0, 0, 1);
  r.ric11 = T.ricci[1][1];
  r.ric33 = T.ricci[0][0];
  r.ricf11 = T.ricci[1][1] + T.hess[1][1];
  r.ricf33 = T.ricci[0][0] + T.hess[0][0];
  r.unit11 = r.ric11 / r.g;
  r.unitf11 = r.ricf11 / r.g;
  double S = 0.0, lap = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      S += T.inv[a][b] * T.ricci[a][b];
      lap += T.inv[a][b] * T.hess[a][b];
    }
  r.S = S;
  r.lapf = lap;
  r.Sf = S + lap;
  r.minEig = std::min(r.unitf11, r.ricf33);

  double mixed = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      if (a == b) continue;
      const double norm = std::sqrt(T.metric[a][a] * T.metric[b][b]);
      mixed = std::max(mixed, std::abs(T.ricci[a][b]) / norm);
      mixed = std::max(mixed, std::abs(T.hess[a][b]) / norm);
    }
  out.mixed_max = mixed;
  return out;
}

std::array<double, 12> fields(const CurvatureReport& r) {
  return {r.R1221, r.R1331, r.ric11, r.ric33, r.ricf11, r.ricf33,
          r.unit11, r.unitf11, r.S, r.lapf, r.Sf, r.gpp};
}

}  // namespace

FdCurvature fd_oracle_curvature(const WarpedSpace& space, double t, double rho, double step) {
  space.require(t);
  if (!(step >= 1e-5 && step <= 1e-2)) throw PreconditionError("FD step must lie in [1e-5, 1e-2]");
  if (!(rho > 0.05)) throw PreconditionError("base radius must exceed 0.05");
  if (space.kappa() > 0 && !(rho < 3.0)) throw PreconditionError("base radius beyond injectivity");
  const double hmax = 2.0 * step * (1.0 + std::abs(t));
  if (!space.contains(t - hmax) || !space.contains(t + hmax)) {
    throw PreconditionError("FD stencil leaves the domain");
  }
  FdCurvature full = fd_single(space, t, rho, step);
  FdCurvature half = fd_single(space, t, rho, step / 2.0);
  const auto a = fields(full.report);
  const auto b = fields(half.report);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-3 * (1.0 + std::abs(a[i]))) {
      throw ContractViolation("FD step underflow: step and half-step disagree beyond 1e-3");
    }
  }
  return full;
}

ComponentMinimum curvature_minimum(const WarpedSpace& space,
                                   const std::function<double(const CurvatureReport&)>& component) {
  constexpr int n = 2001;
  const double lo = space.t_min(), hi = space.t_max();
  const double dt = (hi - lo) / (n - 1);
  auto value = [&](double t) { return component(closed_form_curvature(space, t)); };
  int best = 0;
  double best_v = value(lo);
  for (int i = 1; i < n; ++i) {
    const double v = value(i + 1 == n ? hi : lo + dt * i);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = std::max(lo, lo + dt * (best - 1));
  double b = std::min(hi, lo + dt * (best + 1));
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double vc = value(c), vd = value(d);
  for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
    if (vc < vd) {
      b = d;
      d = c;
      vd = vc;
      c = b - phi * (b - a);
      vc = value(c);
    } else {
      a = c;
      c = d;
      vc = vd;
      d = a + phi * (b - a);
      vd = value(d);
    }
  }
  ComponentMinimum m{0.5 * (a + b), value(0.5 * (a + b))};
  if (best_v < m.value) m = {best + 1 == n ? hi : lo + dt * best, best_v};
  return m;
}

std::vector<CurvatureReport> sample_curvature(const WarpedSpace& space, int samples, int jobs) {
  if (samples < 2) throw PreconditionError("need at least 2 samples");
  return parallel_map(static_cast<std::size_t>(samples), jobs, [&](std::size_t i) {
    const double t = (i + 1 == static_cast<std::size_t>(samples))
                         ? space.t_max()
                         : space.t_min() + (space.t_max() - space.t_min()) * static_cast<double>(i) /
                                               (samples - 1);
    return closed_form_curvature(space, t);
  });
}

std::string curvature_csv_header() {
  return "t,g,gp,gpp,fp,fpp,R1221,R1331,ric11,ric33,ricf11,ricf33,unitf11,S,lapf,Sf,minEig";
}

std::string curvature_csv_row(const CurvatureReport& r) {
  return csv_join({r.t, r.g, r.gp, r.gpp, r.fp, r.fpp, r.R1221, r.R1331, r.ric11, r.ric33,
                   r.ricf11, r.ricf33, r.unitf11, r.S, r.lapf, r.Sf, r.minEig});
}

}  // namespace fminlab
