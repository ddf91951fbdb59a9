#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rotpatch/geometry.hpp"
#include "rotpatch/types.hpp"

namespace rotpatch {

/// Coefficients of a sine series sum b_n sin(n theta), n = 1..size.
struct SineSpectrum {
  std::vector<double> coeffs;  // b_1 .. b_K

  int size() const { return static_cast<int>(coeffs.size()); }
  double coeff(int n) const { return (n >= 1 && n <= size()) ? coeffs[n - 1] : 0.0; }
  /// Weighted l2 norm with weight n^{s-1} on mode n (s > 3/2, default s = 2).
  double weighted_norm(double s = 2.0) const;
  double max_abs() const;
};

struct ResidualDiagnostics {
  double cos_leakage = 0.0;       // max |cos-mode| of the projection
  double aliasing_fraction = 0.0; // energy above N/2 relative to the norm
};

struct ResidualOptions {
  int m = 256;          // quadrature grid
  bool image_term = true;
  int nmodes = 0;       // sine modes to return; 0 -> N-1
};

/// Scaled steady-state residual of the single rotating patch:
///   F(theta) = -(1/eps) Im( (2 Omega conj(Phi) + I(Phi)) z Phi'(z) ),
/// with lambda = 1/(pi eps^2), Omega = (1-Q^2)/(4 pi eps^2) and I the contour
/// velocity functional, projected onto sin(n theta) by FFT. The boundary is
/// renormalized (area = pi eps^2 (1-Q^2)) before evaluation. At eps = 0 the
/// analytic limit of the scaling is the linear operator itself.
SineSpectrum residual_single(const FourierBoundary& b, const ResidualOptions& opts = {},
                             ResidualDiagnostics* diag = nullptr);

/// Banded analytic linearization at the ellipse (coeffs = 0, eps = 0):
/// row n (the sin n theta output, n = 1..N-1) is
///   y_n = (1/pi) f(n) (B_{n-1} - Q B_{n+1}),   f(n) = (1-Q^2) n / 2 - 1 - Q^n,
/// with B_0 = B_1 = 0. Couples only B_{n-1} and B_{n+1} (bandwidth 2).
struct LinearizedOperator {
  Eigen::MatrixXd matrix;  // rows: sin 1..K ; cols follow the owner's coefficients
  int bandwidth() const;
};

LinearizedOperator linearization_analytic(double Q, int N);

/// f(n) = (1-Q^2) n / 2 - 1 - Q^n.
double spectral_factor(double Q, int n);

/// Central finite differences of residual_single over B_2..B_N.
/// Rows sin(1..N-1) theta, columns B_2..B_N; step h relative to max(1,|B_j|).
Eigen::MatrixXd jacobian_numeric(const FourierBoundary& b, const ResidualOptions& opts = {},
                                 double h_rel = 1e-6);

/// min over 3 <= n <= N of f(n); positive for all 0 < Q < 1/2.
double invertibility_margin(double Q, int N);

}  // namespace rotpatch
