#include "rotpatch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotpatch/spectral.hpp"

namespace rotpatch {

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

// Proper segment intersection for the closed polyline through the nodes.
bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
  auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

bool polyline_simple(const std::vector<cplx>& p) {
  const int m = static_cast<int>(p.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // adjacent around the seam
      if (segments_intersect(p[i], p[(i + 1) % m], p[j], p[(j + 1) % m]))
        return false;
    }
  }
  return true;
}

}  // namespace

double SampledCurve::min_derivative() const {
  double v = std::numeric_limits<double>::max();
  for (const auto& d : dpoints) v = std::min(v, std::abs(d));
  return v;
}

double SampledCurve::max_radius() const {
  double v = 0.0;
  for (const auto& p : points) v = std::max(v, std::abs(p));
  return v;
}

double SampledCurve::diameter() const {
  double v = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      v = std::max(v, std::abs(points[i] - points[j]));
  return v;
}

SampledCurve make_curve(std::vector<cplx> points, std::vector<cplx> dpoints,
                        const CurveChecks& checks) {
  if (points.size() != dpoints.size() || points.empty())
    throw geometry_error("make_curve: size mismatch");
  const int m = static_cast<int>(points.size());
  if (!is_power_of_two(m)) throw geometry_error("make_curve: m must be a power of two");

  SampledCurve c;
  c.m = m;
  c.thetas.resize(m);
  for (int k = 0; k < m; ++k) c.thetas[k] = 2.0 * pi * k / m;
  c.points = std::move(points);
  c.dpoints = std::move(dpoints);

  for (const auto& d : c.dpoints) {
    if (std::abs(d) <= checks.min_deriv)
      throw geometry_error("make_curve: degenerate parametrization");
  }
  // signed area > 0 <=> counterclockwise
  double area2 = 0.0;
  for (int k = 0; k < m; ++k)
    area2 += std::imag(std::conj(c.points[k]) * c.dpoints[k]);
  if (area2 <= 0.0) throw geometry_error("make_curve: orientation not counterclockwise");
  if (checks.simple && !polyline_simple(c.points))
    throw geometry_error("make_curve: curve self-intersects");

  c.normals.resize(m);
  for (int k = 0; k < m; ++k)
    c.normals[k] = -iu * c.dpoints[k] / std::abs(c.dpoints[k]);
  return c;
}

SampledCurve curve_from_points(std::vector<cplx> points, const CurveChecks& checks) {
  auto dp = spectral_derivative(points);
  return make_curve(std::move(points), std::move(dp), checks);
}

double enclosed_area(const SampledCurve& c) {
  double acc = 0.0;
  for (int k = 0; k < c.m; ++k)
    acc += std::imag(std::conj(c.points[k]) * c.dpoints[k]);
  return 0.5 * acc * (2.0 * pi / c.m);
}

double curve_perimeter(const SampledCurve& c) {
  double acc = 0.0;
  for (const auto& d : c.dpoints) acc += std::abs(d);
  return acc * (2.0 * pi / c.m);
}

double min_curve_distance(const SampledCurve& a, const SampledCurve& b) {
  double v = std::numeric_limits<double>::max();
  for (const auto& p : a.points)
    for (const auto& q : b.points) v = std::min(v, std::abs(p - q));
  return v;
}

// ---------------------------------------------------------------- FourierBoundary

double FourierBoundary::coeff(int n) const {
  if (n == 1) return b1;
  const int idx = n - 2;
  if (idx < 0 || idx >= static_cast<int>(coeffs.size())) return 0.0;
  return coeffs[idx];
}

cplx FourierBoundary::map(cplx z) const {
  cplx pert = b1 / z;
  cplx zp = z * z;  // z^{n} accumulator for z^{-n}
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    pert += coeffs[i] / zp;
    zp *= z;
  }
  return A * eps * (z + Q / z + eps * pert);
}

cplx FourierBoundary::map_dtheta(cplx z) const {
  // d/dz of the perturbation series, times iz.
  cplx dpert = -b1 / (z * z);
  cplx zp = z * z * z;  // z^{n+1}
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double n = static_cast<double>(i + 2);
    dpert += -n * coeffs[i] / zp;
    zp *= z;
  }
  const cplx dz = 1.0 - Q / (z * z) + eps * dpert;
  return A * eps * iu * z * dz;
}

void validate(const FourierBoundary& b) {
  if (!(b.Q >= 0.0 && b.Q < 0.5))
    throw geometry_error("FourierBoundary: Q outside [0, 1/2)");
  if (!(b.eps > 0.0)) throw geometry_error("FourierBoundary: eps must be positive");
  if (!(b.A > 0.0)) throw geometry_error("FourierBoundary: A must be positive");
  for (double c : b.coeffs)
    if (!std::isfinite(c)) throw geometry_error("FourierBoundary: non-finite coefficient");
}

FourierBoundary renormalize_scale(FourierBoundary b, int quad_m) {
  b.A = 1.0;
  validate(b);
  // area scales as A^2, so one quadrature at A=1 determines it
  double acc = 0.0;
  for (int k = 0; k < quad_m; ++k) {
    const cplx z = std::polar(1.0, 2.0 * pi * k / quad_m);
    acc += std::imag(std::conj(b.map(z)) * b.map_dtheta(z));
  }
  const double area1 = 0.5 * acc * (2.0 * pi / quad_m);
  const double target = pi * b.eps * b.eps * (1.0 - b.Q * b.Q);
  if (!(area1 > 0.0))
    throw geometry_error("renormalize_scale: perturbation too large, nonpositive area");
  b.A = std::sqrt(target / area1);
  return b;
}

double scale_closed_form(const FourierBoundary& b) {
  double s = b.b1 * b.b1;
  for (std::size_t i = 0; i < b.coeffs.size(); ++i)
    s += static_cast<double>(i + 2) * b.coeffs[i] * b.coeffs[i];
  const double q2 = 1.0 - b.Q * b.Q;
  return q2 / (q2 - 0.5 * b.eps * b.eps * s);
}

SampledCurve eval_outer_map(const FourierBoundary& b, int m) {
  validate(b);
  const int N = b.order();
  if (m < 4 * N) throw geometry_error("eval_outer_map: m < 4N undersamples the map");
  std::vector<cplx> pts(m), dps(m);
  for (int k = 0; k < m; ++k) {
    const cplx z = std::polar(1.0, 2.0 * pi * k / m);
    pts[k] = b.map(z);
    dps[k] = b.map_dtheta(z);
  }
  CurveChecks checks;
  checks.min_deriv = 1e-8 * b.A * b.eps;
  return make_curve(std::move(pts), std::move(dps), checks);
}

// ---------------------------------------------------------------- NearDiskDomain

cplx NearDiskDomain::map(cplx z) const {
  cplx shape = z;
  cplx zp = z * z * z;  // z^n from n=3
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    shape += coeffs[i] * zp;
    zp *= z;
  }
  return center + a1 * r * static_cast<double>(orientation) * shape;
}

cplx NearDiskDomain::map_dtheta(cplx z) const {
  cplx dshape = 1.0;
  cplx zp = z * z;  // z^{n-1} from n=3
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double n = static_cast<double>(i + 3);
    dshape += n * coeffs[i] * zp;
    zp *= z;
  }
  return a1 * r * static_cast<double>(orientation) * iu * z * dshape;
}

void validate(const NearDiskDomain& d) {
  if (!(d.r > 0.0)) throw geometry_error("NearDiskDomain: r must be positive");
  if (!(d.a1 > 0.0)) throw geometry_error("NearDiskDomain: a1 must be positive");
  if (!(std::abs(d.center) + 2.5 * d.r < 1.0))
    throw geometry_error("NearDiskDomain: |center| + 2.5 r must stay below 1");
  if (d.orientation != 1 && d.orientation != -1)
    throw geometry_error("NearDiskDomain: orientation must be +-1");
}

NearDiskDomain renormalize_scale(NearDiskDomain d, int quad_m) {
  d.a1 = 1.0;
  validate(d);
  double acc = 0.0;
  for (int k = 0; k < quad_m; ++k) {
    const cplx z = std::polar(1.0, 2.0 * pi * k / quad_m);
    acc += std::imag(std::conj(d.map(z) - d.center) * d.map_dtheta(z));
  }
  const double area1 = 0.5 * acc * (2.0 * pi / quad_m);
  if (!(area1 > 0.0))
    throw geometry_error("renormalize_scale: nonpositive satellite area");
  d.a1 = std::sqrt(pi * d.r * d.r / area1);
  return d;
}

SampledCurve eval_near_disk_map(const NearDiskDomain& d, int m) {
  validate(d);
  const int N = d.order();
  if (m < 4 * N) throw geometry_error("eval_near_disk_map: m < 4N undersamples the map");
  std::vector<cplx> pts(m), dps(m);
  for (int k = 0; k < m; ++k) {
    const cplx z = std::polar(1.0, 2.0 * pi * k / m);
    pts[k] = d.map(z);
    dps[k] = d.map_dtheta(z);
  }
  CurveChecks checks;
  checks.min_deriv = 1e-8 * d.a1 * d.r;
  return make_curve(std::move(pts), std::move(dps), checks);
}

}  // namespace rotpatch
