#pragma once

#include <array>
#include <vector>

#include "rotpatch/functional.hpp"
#include "rotpatch/geometry.hpp"

namespace rotpatch {

/// Which leading coefficient multiplies r0^2 in the satellite center ansatz
///   x_1 = +(1 - cd r0^2 (1 + r0^2 y_1)),  x_2 = -(1 - cd r0^2 (1 + r0^2 y_2)).
enum class CdVariant {
  TwoMu,     // 2 mu / (1 - Q^2)       (default; proof version)
  TwoMuPi,   // 2 mu pi / (1 - Q^2)    (ansatz version)
  Balance,   // point-vortex balance coefficient, computed
};

double cd_value(CdVariant v, double Q, double mu, double r0);

/// Point-vortex azimuthal force balance for a satellite near the wall; returns
/// the y that centers the ansatz on the balance point (the continuation's
/// initial guess) via the wall distance delta solving u_rel,theta(delta) = 0.
double leading_order_y(double Q, double mu, double r0, double cd);
double leading_order_delta(double Q, double mu, double r0);

/// Full 2+1 configuration: central patch D0 (vorticity 1/(pi r0^2), area
/// pi r0^2 (1-Q^2)) plus two satellites of total vorticity mu each near the
/// boundary. Omega is derived, never stored.
struct MultiConfig {
  double Q = 0.3;
  double mu = 1.0;
  std::array<double, 3> radii{0.05, 0.000625, 0.000625};  // r0, r1, r2
  std::array<double, 2> Y{0.0, 0.0};
  double t0 = 0.0;              // central horizontal offset (solver unknown)
  double cd = 0.0;              // center-ansatz coefficient
  FourierBoundary beta0;        // shape of D0 (eps = r0)
  NearDiskDomain beta1, beta2;  // shapes of D1, D2 (centers derived from Y)

  double Omega() const;                      // (1-Q^2)/(4 pi r0^2) + mu/(4 pi)
  double center_abscissa(int j) const;       // signed x_j on the horizontal axis
};

/// Builds a configuration with zero shapes from the scalar parameters,
/// validating max(r1, r2) < r0^2 / 2 and domain containment.
MultiConfig make_multi_config(double Q, double mu, double r0, double r1, double r2,
                              int N, CdVariant cd = CdVariant::TwoMu);

/// Number of sine modes carried per block for truncation order N.
inline int central_mode_count(int N) { return N + 1; }    // sin 1 .. sin N+1
inline int satellite_mode_count(int N) { return N - 1; }  // sin 1 .. sin N-1

struct MultiResidual {
  SineSpectrum F0;        // sin 1 .. N+1
  SineSpectrum F1, F2;    // sin 1 .. N-1 (sin 1 = position residual)
  double cos_leakage = 0.0;
};

struct MultiOptions {
  int m0 = 256;     // central curve nodes
  int ms = 128;     // satellite curve nodes
  int npolar = 64;  // polar quadrature grid per direction (area route)
  bool satellites_by_area = true;  // area quadrature vs contour formula
};

/// Residuals of the 2+1 system. F0 uses the single-patch scaling (exact
/// reduction to residual_single at mu = 0); F1, F2 are the unit-normal
/// normalized tangential derivatives of the total relative stream function
/// along each satellite boundary.
MultiResidual residual_multi(const MultiConfig& c, const MultiOptions& opts = {});

/// Wall distances (d1, d2) of the satellite domains, sampled at msample nodes.
std::array<double, 2> boundary_distance(const MultiConfig& c, int msample = 1024);

/// Analytic near-disk shape linearization (diagonal): the A_{n+1} cosine mode
/// maps to -((n-1)/(2 pi)) A_{n+1} sin(n theta), 2 <= n <= N-1.
LinearizedOperator near_disk_linearization(int N);

/// Satellite self-interaction functional h(beta)(theta) at the curve nodes:
/// h = -(1/pi) d/dtheta [ Psi_free o Gamma ], with Psi_free the free-space
/// stream of the unit-vorticity patch. Its shape derivative at beta = 0 is the
/// diagonal of near_disk_linearization.
std::vector<double> satellite_self_term(const NearDiskDomain& d, int m);

struct LimitOperatorResult {
  double constant = 0.0;            // coefficient multiplying y_j
  std::vector<double> raw;          // dF_j/dy at each r0 in the sequence
  std::vector<double> r0_sequence;
  double extrapolation_residual = 0.0;
  bool converged = false;
};

/// Richardson-extrapolated r0 -> 0 limit of d(sin theta component of F_j)/dy_j
/// at zero shapes (Lemma-of-the-limit operator). j is 1 or 2.
LimitOperatorResult limit_position_operator(double Q, double mu, int j,
                                            CdVariant cd = CdVariant::TwoMu,
                                            std::vector<double> r0_sequence = {},
                                            const MultiOptions& opts = {});

}  // namespace rotpatch
