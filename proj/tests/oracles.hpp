// Test-only reference computations, kept independent of the library's
// quadrature and evaluation paths.
#pragma once

#include <cmath>
#include <functional>

#include "rotpatch/types.hpp"

namespace oracles {

using rotpatch::cplx;

/// Recursive adaptive Simpson quadrature.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb, double whole,
                                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 40) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Enclosed area of a parametrized closed curve by adaptive quadrature of
/// (1/2)(x y' - x' y); independent of the trapezoid path under test.
inline double area_by_adaptive_quadrature(const std::function<cplx(double)>& w,
                                          const std::function<cplx(double)>& dw,
                                          double tol = 1e-13) {
  auto f = [&](double th) {
    const cplx p = w(th), d = dw(th);
    return 0.5 * (p.real() * d.imag() - d.real() * p.imag());
  };
  return adaptive_simpson(f, 0.0, 2.0 * rotpatch::pi, tol);
}

/// Central finite difference of a scalar field on the plane (complex gradient).
inline cplx fd_gradient(const std::function<double(cplx)>& f, cplx x, double h = 1e-6) {
  const double gx = (f(x + h) - f(x - h)) / (2.0 * h);
  const double gy = (f(x + h * rotpatch::iu) - f(x - h * rotpatch::iu)) / (2.0 * h);
  return {gx, gy};
}

/// Velocity of a point vortex of circulation kappa at y, unit-disk images
/// included: u = kappa * (-i) * grad_x G(x, y).
inline cplx point_vortex_velocity(cplx x, cplx y, double kappa) {
  const cplx gfree = -1.0 / std::conj(x - y) / (2.0 * rotpatch::pi);
  const cplx gim = -y / (1.0 - std::conj(x) * y) / (2.0 * rotpatch::pi);
  return -rotpatch::iu * kappa * (gfree + gim);
}

}  // namespace oracles
