#include "rotpatch/multi.hpp"

#include <algorithm>
#include <cmath>

#include "rotpatch/kernels.hpp"
#include "rotpatch/spectral.hpp"

namespace rotpatch {

double cd_value(CdVariant v, double Q, double mu, double r0) {
  switch (v) {
    case CdVariant::TwoMu:
      return 2.0 * mu / (1.0 - Q * Q);
    case CdVariant::TwoMuPi:
      return 2.0 * mu * pi / (1.0 - Q * Q);
    case CdVariant::Balance:
      return leading_order_delta(Q, mu, r0) / (r0 * r0);
  }
  throw numerics_error("cd_value: unknown variant");
}

double leading_order_delta(double Q, double mu, double r0) {
  const double Om = (1.0 - Q * Q) / (4.0 * pi * r0 * r0) + mu / (4.0 * pi);
  // relative azimuthal speed of a point vortex at radius 1 - delta:
  // own image + central monopole + opposite satellite pair - frame
  auto urel = [&](double delta) {
    const double rho = 1.0 - delta;
    const double self_img = mu * rho / (2.0 * pi * (1.0 - rho * rho));
    const double central = (1.0 - Q * Q) / (2.0 * pi * rho);
    const double other = mu / (4.0 * pi * rho) - mu / (2.0 * pi * (rho + 1.0 / rho));
    return self_img + central + other - Om * rho;
  };
  double lo = 1e-12, hi = 0.49;
  if (urel(lo) < 0.0 || urel(hi) > 0.0)
    throw numerics_error("leading_order_delta: balance not bracketed");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (urel(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double leading_order_y(double Q, double mu, double r0, double cd) {
  const double delta = leading_order_delta(Q, mu, r0);
  return (delta / (cd * r0 * r0) - 1.0) / (r0 * r0);
}

double MultiConfig::Omega() const {
  const double r0 = radii[0];
  return (1.0 - Q * Q) / (4.0 * pi * r0 * r0) + mu / (4.0 * pi);
}

double MultiConfig::center_abscissa(int j) const {
  const double r0 = radii[0];
  const double off = cd * r0 * r0 * (1.0 + r0 * r0 * Y[j - 1]);
  return (j == 1) ? (1.0 - off) : -(1.0 - off);
}

MultiConfig make_multi_config(double Q, double mu, double r0, double r1, double r2,
                              int N, CdVariant cd) {
  if (!(mu > 0.0)) throw geometry_error("make_multi_config: mu must be positive");
  if (!(std::max(r1, r2) < 0.5 * r0 * r0))
    throw geometry_error("make_multi_config: max(r1,r2) must stay below r0^2/2");
  MultiConfig c;
  c.Q = Q;
  c.mu = mu;
  c.radii = {r0, r1, r2};
  c.cd = cd_value(cd, Q, mu, r0);
  c.beta0.Q = Q;
  c.beta0.eps = r0;
  c.beta0.coeffs.assign(N - 1, 0.0);
  c.beta1.r = r1;
  c.beta1.orientation = +1;
  c.beta1.coeffs.assign(N - 2, 0.0);
  c.beta2.r = r2;
  c.beta2.orientation = -1;
  c.beta2.coeffs.assign(N - 2, 0.0);
  const double y0 = leading_order_y(Q, mu, r0, c.cd);
  c.Y = {y0, y0};
  return c;
}

namespace {

struct Curves {
  SampledCurve c0, c1, c2;
  NearDiskDomain d1, d2;
  double lam0, om1, om2;
};

Curves assemble(const MultiConfig& c, const MultiOptions& opts) {
  Curves out;
  const double r0 = c.radii[0];
  FourierBoundary b0 = renormalize_scale(c.beta0);
  out.c0 = eval_outer_map(b0, opts.m0);
  if (c.t0 != 0.0)
    for (auto& p : out.c0.points) p += c.t0;

  out.d1 = c.beta1;
  out.d1.r = c.radii[1];  // radii[] is authoritative
  out.d1.center = cplx(c.center_abscissa(1), 0.0);
  out.d1 = renormalize_scale(out.d1);
  out.d2 = c.beta2;
  out.d2.r = c.radii[2];
  out.d2.center = cplx(c.center_abscissa(2), 0.0);
  out.d2 = renormalize_scale(out.d2);
  out.c1 = eval_near_disk_map(out.d1, opts.ms);
  out.c2 = eval_near_disk_map(out.d2, opts.ms);

  out.lam0 = 1.0 / (pi * r0 * r0);
  out.om1 = c.mu / (pi * c.radii[1] * c.radii[1]);
  out.om2 = c.mu / (pi * c.radii[2] * c.radii[2]);

  // pairwise disjointness and containment in the disk
  if (out.c0.max_radius() >= 1.0 || out.c1.max_radius() >= 1.0 || out.c2.max_radius() >= 1.0)
    throw geometry_error("residual_multi: a domain reaches the boundary");
  const double node_gap = 3.0 * curve_perimeter(out.c1) / opts.ms;
  if (min_curve_distance(out.c0, out.c1) < node_gap ||
      min_curve_distance(out.c0, out.c2) < node_gap ||
      min_curve_distance(out.c1, out.c2) < node_gap)
    throw geometry_error("residual_multi: domains overlap or nearly collide");
  return out;
}

// velocity (conjugated) from a satellite patch via polar-grid area quadrature
// of the Green's-function gradient (the satellite integrands are smooth).
std::vector<cplx> satellite_velocity_area_conj(const NearDiskDomain& d, double omega,
                                               std::span<const cplx> targets, int npolar) {
  std::vector<cplx> eta, wgt_eta;
  eta.reserve(npolar * npolar);
  std::vector<double> wgt;
  wgt.reserve(npolar * npolar);
  const double s = static_cast<double>(d.orientation);
  for (int i = 0; i < npolar; ++i) {
    const double rho = (i + 0.5) / npolar;
    for (int k = 0; k < npolar; ++k) {
      const double phi = 2.0 * pi * (k + 0.5) / npolar;
      const cplx y = std::polar(rho, phi);
      cplx G = y, dG = 1.0;
      cplx zp = y * y;  // y^{n-1}, n from 3
      for (std::size_t q = 0; q < d.coeffs.size(); ++q) {
        const double n = static_cast<double>(q + 3);
        G += d.coeffs[q] * zp * y;
        dG += n * d.coeffs[q] * zp;
        zp *= y;
      }
      eta.push_back(d.center + d.a1 * d.r * s * G);
      const double jac = d.a1 * d.r * d.a1 * d.r * std::norm(dG);
      wgt.push_back(rho * (1.0 / npolar) * (2.0 * pi / npolar) * jac);
    }
  }
  std::vector<cplx> out(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const cplx x = targets[t];
    cplx g{0.0, 0.0};
    for (std::size_t q = 0; q < eta.size(); ++q)
      g += green_gradient(x, eta[q]) * wgt[q];
    out[t] = std::conj(-iu * omega * g);  // u = -i grad Psi
  }
  return out;
}

void add(std::vector<cplx>& acc, const std::vector<cplx>& v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
}

}  // namespace

MultiResidual residual_multi(const MultiConfig& c, const MultiOptions& opts) {
  const int N = c.beta0.order();
  const double r0 = c.radii[0];
  const double Om = c.Omega();
  Curves cv = assemble(c, opts);

  PatchSource s0{cv.c0, cv.lam0, true};
  PatchSource s1{cv.c1, cv.om1, true};
  PatchSource s2{cv.c2, cv.om2, true};

  // central patch: self + both satellites
  auto ub0 = self_velocity_conj(s0);
  if (opts.satellites_by_area) {
    add(ub0, satellite_velocity_area_conj(cv.d1, cv.om1, cv.c0.points, opts.npolar));
    add(ub0, satellite_velocity_area_conj(cv.d2, cv.om2, cv.c0.points, opts.npolar));
  } else {
    add(ub0, velocity_conj_at(s1, cv.c0.points));
    add(ub0, velocity_conj_at(s2, cv.c0.points));
  }
  std::vector<double> R0(cv.c0.m);
  for (int k = 0; k < cv.c0.m; ++k) {
    const cplx field = 2.0 * Om * std::conj(cv.c0.points[k]) - 2.0 * iu * ub0[k];
    R0[k] = -std::imag(field * (-iu * cv.c0.dpoints[k])) / r0;
  }

  // satellites: self + central + other satellite; unit-normal normalization
  auto satellite_block = [&](const SampledCurve& cj, const PatchSource& self,
                            const NearDiskDomain& other_d, double other_om,
                            const PatchSource& other_s) {
    auto ub = self_velocity_conj(self);
    add(ub, velocity_conj_at(s0, cj.points));
    if (opts.satellites_by_area)
      add(ub, satellite_velocity_area_conj(other_d, other_om, cj.points, opts.npolar));
    else
      add(ub, velocity_conj_at(other_s, cj.points));
    std::vector<double> F(cj.m);
    for (int k = 0; k < cj.m; ++k) {
      const cplx urel_bar = ub[k] + iu * Om * std::conj(cj.points[k]);
      F[k] = -std::imag(urel_bar * cj.dpoints[k]) / std::abs(cj.dpoints[k]);
    }
    return F;
  };

  const auto F1 = satellite_block(cv.c1, s1, cv.d2, cv.om2, s2);
  const auto F2 = satellite_block(cv.c2, s2, cv.d1, cv.om1, s1);

  MultiResidual out;
  const auto m0modes = project_modes(R0, central_mode_count(N));
  out.F0.coeffs.assign(m0modes.b.begin() + 1, m0modes.b.end());
  const auto m1modes = project_modes(F1, satellite_mode_count(N));
  out.F1.coeffs.assign(m1modes.b.begin() + 1, m1modes.b.end());
  const auto m2modes = project_modes(F2, satellite_mode_count(N));
  out.F2.coeffs.assign(m2modes.b.begin() + 1, m2modes.b.end());

  double leak = 0.0;
  for (double a : m0modes.a) leak = std::max(leak, std::abs(a));
  for (double a : m1modes.a) leak = std::max(leak, std::abs(a));
  for (double a : m2modes.a) leak = std::max(leak, std::abs(a));
  out.cos_leakage = leak;
  return out;
}

std::array<double, 2> boundary_distance(const MultiConfig& c, int msample) {
  std::array<double, 2> out{};
  for (int j = 1; j <= 2; ++j) {
    NearDiskDomain d = (j == 1) ? c.beta1 : c.beta2;
    d.r = c.radii[j];
    d.center = cplx(c.center_abscissa(j), 0.0);
    d = renormalize_scale(d);
    const auto curve = eval_near_disk_map(d, msample);
    out[j - 1] = 1.0 - curve.max_radius();
  }
  return out;
}

LinearizedOperator near_disk_linearization(int N) {
  LinearizedOperator op;
  op.matrix = Eigen::MatrixXd::Zero(N - 2, N - 2);  // rows sin 2..N-1, cols A_3..A_N
  for (int n = 2; n <= N - 1; ++n)
    op.matrix(n - 2, n - 2) = -(n - 1) / (2.0 * pi);
  return op;
}

std::vector<double> satellite_self_term(const NearDiskDomain& d, int m) {
  // shape functional only: evaluated at unit scale with the center dropped
  // (the self log-interaction is translation and scale covariant)
  const double s = static_cast<double>(d.orientation);
  std::vector<cplx> pts(m), dps(m);
  for (int k = 0; k < m; ++k) {
    const cplx z = std::polar(1.0, 2.0 * pi * k / m);
    cplx shape = z, dshape = 1.0;
    cplx zp = z * z;
    for (std::size_t q = 0; q < d.coeffs.size(); ++q) {
      const double n = static_cast<double>(q + 3);
      shape += d.coeffs[q] * zp * z;
      dshape += n * d.coeffs[q] * zp;
      zp *= z;
    }
    pts[k] = s * shape;
    dps[k] = s * iu * z * dshape;
  }
  double acc = 0.0;
  for (int k = 0; k < m; ++k) acc += std::imag(std::conj(pts[k]) * dps[k]);
  const double a1 = std::sqrt(pi / (0.5 * acc * 2.0 * pi / m));  // area -> pi
  for (int k = 0; k < m; ++k) {
    pts[k] *= a1;
    dps[k] *= a1;
  }
  const SampledCurve curve = make_curve(std::move(pts), std::move(dps));
  PatchSource src{curve, 1.0, false};  // unit vorticity, free space
  const auto ub = self_velocity_conj(src);
  std::vector<double> h(m);
  for (int k = 0; k < m; ++k)
    h[k] = -std::imag(ub[k] * curve.dpoints[k]) / pi;
  return h;
}

LimitOperatorResult limit_position_operator(double Q, double mu, int j, CdVariant cd,
                                            std::vector<double> r0_sequence,
                                            const MultiOptions& opts) {
  if (j != 1 && j != 2) throw numerics_error("limit_position_operator: j must be 1 or 2");
  if (r0_sequence.empty()) r0_sequence = {0.02, 0.014, 0.01, 0.007, 0.005};

  LimitOperatorResult res;
  res.r0_sequence = r0_sequence;
  const double dy = 1.0;
  for (double r0 : r0_sequence) {
    const int N = 6;
    MultiOptions lo = opts;
    lo.m0 = std::min(opts.m0, 128);
    lo.ms = std::min(opts.ms, 64);
    lo.satellites_by_area = false;  // limit probe: contour route is exact here
    auto eval = [&](double y) {
      MultiConfig c = make_multi_config(Q, mu, r0, r0 * r0 / 4.0, r0 * r0 / 4.0, N, cd);
      c.Y = {y, y};
      const auto r = residual_multi(c, lo);
      return (j == 1) ? r.F1.coeff(1) : r.F2.coeff(1);
    };
    // derivative at the trivial point Y = 0 (the lemma's linearization point)
    res.raw.push_back((eval(+dy) - eval(-dy)) / (2.0 * dy));
  }

  // least-squares fit raw ~ c + a r0^2
  const int n = static_cast<int>(r0_sequence.size());
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = r0_sequence[i] * r0_sequence[i];
    rhs(i) = res.raw[i];
  }
  const Eigen::Vector2d sol = X.colPivHouseholderQr().solve(rhs);
  res.constant = sol(0);
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double fit = sol(0) + sol(1) * X(i, 1);
    rss = std::max(rss, std::abs(res.raw[i] - fit));
  }
  res.extrapolation_residual = rss;
  res.converged = std::abs(res.constant) > 0.0 &&
                  rss < 1e-3 * std::abs(res.constant);
  if (!res.converged)
    throw numerics_error("limit_position_operator: extrapolation did not converge");
  return res;
}

}  // namespace rotpatch
