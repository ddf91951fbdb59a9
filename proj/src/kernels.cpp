#include "rotpatch/kernels.hpp"

#include <cmath>

namespace rotpatch {

namespace {

void require_interior(cplx x, const char* who) {
  if (std::abs(x) >= 1.0) throw geometry_error(std::string(who) + ": point outside the open unit disk");
}

}  // namespace

double green_disk(cplx x, cplx y) {
  require_interior(x, "green_disk");
  require_interior(y, "green_disk");
  const double d = std::abs(x - y);
  if (d == 0.0) throw geometry_error("green_disk: x == y");
  return (-std::log(d) + std::log(std::abs(1.0 - x * std::conj(y)))) / (2.0 * pi);
}

double robin_regular_part(cplx x, cplx y) {
  const double img = std::abs(1.0 - x * std::conj(y));
  if (img == 0.0) throw geometry_error("robin_regular_part: image singularity |x conj(y)| = 1");
  return std::log(img) / (2.0 * pi);
}

cplx robin_gradient(cplx x, cplx y) {
  const cplx den = 1.0 - std::conj(x) * y;
  if (std::abs(den) == 0.0) throw geometry_error("robin_gradient: image singularity");
  return -y / den / (2.0 * pi);
}

cplx green_gradient(cplx x, cplx y) {
  const cplx d = std::conj(x - y);
  if (std::abs(d) == 0.0) throw geometry_error("green_gradient: x == y");
  return -1.0 / d / (2.0 * pi) + robin_gradient(x, y);
}

// Contour velocity of a patch:
//   conj(u(z)) = (lam/4pi) [ oint (conj(xi) - conj(z))/(xi - z) dxi
//                            + conj( oint |xi|^2 / (1 - conj(z) xi) dxi ) ].
// Trapezoid over the curve nodes; the first integrand's node self-value is the
// removable limit conj(xi')/xi'.
namespace {

cplx conj_velocity(const PatchSource& src, cplx z, std::optional<int> self_idx) {
  const auto& c = src.curve;
  cplx free_acc{0.0, 0.0}, img_acc{0.0, 0.0};
  const cplx zc = std::conj(z);
  for (int l = 0; l < c.m; ++l) {
    cplx k1;
    if (self_idx && *self_idx == l) {
      k1 = std::conj(c.dpoints[l]) / c.dpoints[l];
    } else {
      const cplx d = c.points[l] - z;
      k1 = std::conj(d) / d;
    }
    free_acc += k1 * c.dpoints[l];
    if (src.image_term) {
      const cplx pl = c.points[l];
      img_acc += (pl.real() * pl.real() + pl.imag() * pl.imag()) /
                 (1.0 - zc * pl) * c.dpoints[l];
    }
  }
  const double w = src.strength / (4.0 * pi) * (2.0 * pi / c.m);
  return w * (free_acc + std::conj(img_acc));
}

}  // namespace

cplx patch_velocity(const PatchSource& src, cplx z, std::optional<int> on_curve_index) {
  if (src.image_term && std::abs(z) > 1.0 + 1e-14)
    throw geometry_error("patch_velocity: target outside the closed unit disk");
  return std::conj(conj_velocity(src, z, on_curve_index));
}

std::vector<cplx> self_velocity_conj(const PatchSource& src) {
  std::vector<cplx> out(src.curve.m);
  for (int k = 0; k < src.curve.m; ++k)
    out[k] = conj_velocity(src, src.curve.points[k], k);
  return out;
}

std::vector<cplx> velocity_conj_at(const PatchSource& src, std::span<const cplx> targets) {
  std::vector<cplx> out(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k)
    out[k] = conj_velocity(src, targets[k], std::nullopt);
  return out;
}

double tangency_check(const PatchSource& src, int m_bnd) {
  double worst = 0.0;
  for (int k = 0; k < m_bnd; ++k) {
    const cplx n = std::polar(1.0, 2.0 * pi * (k + 0.5) / m_bnd);
    const cplx ub = conj_velocity(src, n, std::nullopt);
    worst = std::max(worst, std::abs(std::real(ub * n)));
  }
  return worst;
}

double circulation(const PatchSource& src, double radius, int m) {
  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    const cplx x = std::polar(radius, 2.0 * pi * k / m);
    const cplx t = iu * x / std::abs(x);
    acc += std::real(conj_velocity(src, x, std::nullopt) * t);
  }
  return acc * (2.0 * pi * radius / m);
}

}  // namespace rotpatch
