#pragma once

#include <span>
#include <vector>

#include "rotpatch/types.hpp"

namespace rotpatch {

/// Equispaced-in-theta samples of a closed boundary curve. dpoints holds the
/// exact theta-derivative of the parametrization, so contour integrals
/// become plain trapezoid sums over the nodes. Counterclockwise orientation;
/// normals[k] = -i * dpoints[k] / |dpoints[k]| points outward.
struct SampledCurve {
  int m = 0;
  std::vector<double> thetas;
  std::vector<cplx> points;
  std::vector<cplx> dpoints;
  std::vector<cplx> normals;

  double min_derivative() const;
  double max_radius() const;
  double diameter() const;
};

struct CurveChecks {
  bool simple = true;          // run the O(m^2) segment self-intersection test
  double min_deriv = 0.0;      // reject |dpoints| below this
};

/// Builds a curve from points and exact derivatives, filling thetas/normals
/// and validating closedness (orientation) and simplicity.
SampledCurve make_curve(std::vector<cplx> points, std::vector<cplx> dpoints,
                        const CurveChecks& checks = {});

/// Builds a curve from points only; derivatives come from the FFT.
SampledCurve curve_from_points(std::vector<cplx> points,
                               const CurveChecks& checks = {});

/// Green's-theorem area, 0.5 * integral of Im(conj(z) dz); spectrally accurate.
double enclosed_area(const SampledCurve& c);

double curve_perimeter(const SampledCurve& c);
double min_curve_distance(const SampledCurve& a, const SampledCurve& b);

/// Exterior conformal-map boundary of the central patch:
///   Phi(z) = A eps (z + Q/z + eps (b1/z + sum_{n>=2} B_n z^-n)),  z = e^{i theta}.
/// coeffs holds B_2..B_N. b1 is the aspect-mode coefficient used by the solver
/// (zero for hand-built boundaries). A is derived: it is always recomputed so
/// the enclosed area equals pi eps^2 (1 - Q^2).
struct FourierBoundary {
  double Q = 0.0;
  double eps = 0.1;
  double b1 = 0.0;
  std::vector<double> coeffs;
  double A = 1.0;

  int order() const { return static_cast<int>(coeffs.size()) + 1; }  // N
  double coeff(int n) const;  // B_n, n >= 1 (n=1 -> b1); 0 outside range

  cplx map(cplx z) const;        // Phi(z)
  cplx map_dtheta(cplx z) const; // d/dtheta Phi(e^{i theta}) at z = e^{i theta}
};

/// Checks parameter ranges (0 <= Q < 1/2, eps > 0, A > 0).
void validate(const FourierBoundary& b);

/// Returns b with A set so that enclosed_area == pi eps^2 (1-Q^2), computed by
/// exact area quadrature (not the closed-form series). Throws geometry_error
/// if the perturbation makes the required A^2 nonpositive.
FourierBoundary renormalize_scale(FourierBoundary b, int quad_m = 512);

/// Leading-order closed form for A, retained as a cross-check:
///   A = (1-Q^2) / ((1-Q^2) - (eps^2/2) sum n B_n^2).
double scale_closed_form(const FourierBoundary& b);

/// Samples the mapped boundary at m nodes with exact analytic derivatives.
/// Rejects self-intersecting curves and degenerate parametrizations
/// (|d Phi/d theta| < 1e-8 A eps).
SampledCurve eval_outer_map(const FourierBoundary& b, int m);

/// Interior conformal-map boundary of a satellite domain:
///   Gamma(z) = center + a1 r s (z + sum_{n>=3} A_n z^n),
/// s = orientation (+1 or -1; -1 rotates the local frame by pi so mirror-image
/// satellites have mirror-image parametrizations). coeffs holds A_3..A_N.
/// a1 is derived so the enclosed area equals pi r^2.
struct NearDiskDomain {
  cplx center{0.0, 0.0};
  double r = 0.05;
  int orientation = +1;
  std::vector<double> coeffs;
  double a1 = 1.0;

  int order() const { return static_cast<int>(coeffs.size()) + 2; }  // N
  cplx map(cplx z) const;
  cplx map_dtheta(cplx z) const;
};

/// Containment in the unit disk: |center| + 2.5 r < 1.
void validate(const NearDiskDomain& d);

NearDiskDomain renormalize_scale(NearDiskDomain d, int quad_m = 512);

SampledCurve eval_near_disk_map(const NearDiskDomain& d, int m);

}  // namespace rotpatch
