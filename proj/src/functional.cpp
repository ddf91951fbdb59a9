#include "rotpatch/functional.hpp"

#include <algorithm>
#include <cmath>

#include "rotpatch/kernels.hpp"
#include "rotpatch/parallel.hpp"
#include "rotpatch/spectral.hpp"

namespace rotpatch {

double SineSpectrum::weighted_norm(double s) const {
  double acc = 0.0;
  for (int n = 1; n <= size(); ++n) {
    const double w = std::pow(static_cast<double>(n), s - 1.0);
    acc += w * w * coeffs[n - 1] * coeffs[n - 1];
  }
  return std::sqrt(acc);
}

double SineSpectrum::max_abs() const {
  double v = 0.0;
  for (double c : coeffs) v = std::max(v, std::abs(c));
  return v;
}

double spectral_factor(double Q, int n) {
  return 0.5 * (1.0 - Q * Q) * n - 1.0 - std::pow(Q, n);
}

namespace {

// eps -> 0 limit of the scaled residual: the linearization applied to the
// coefficient vector (with b1 in the B_1 slot).
SineSpectrum residual_limit(const FourierBoundary& b, int nmodes) {
  SineSpectrum out;
  out.coeffs.resize(nmodes, 0.0);
  for (int n = 1; n <= nmodes; ++n) {
    const double fn = spectral_factor(b.Q, n);
    out.coeffs[n - 1] = fn / pi * (b.coeff(n - 1) - b.Q * b.coeff(n + 1));
  }
  return out;
}

}  // namespace

SineSpectrum residual_single(const FourierBoundary& b, const ResidualOptions& opts,
                             ResidualDiagnostics* diag) {
  const int N = b.order();
  const int nmodes = opts.nmodes > 0 ? opts.nmodes : N - 1;
  if (b.eps == 0.0) {
    if (diag) *diag = {};
    return residual_limit(b, nmodes);
  }

  const FourierBoundary bn = renormalize_scale(b);
  const SampledCurve curve = eval_outer_map(bn, opts.m);
  const double lam = 1.0 / (pi * bn.eps * bn.eps);
  const double Om = (1.0 - bn.Q * bn.Q) / (4.0 * pi * bn.eps * bn.eps);

  PatchSource src{curve, lam, opts.image_term};
  const auto ubar = self_velocity_conj(src);

  std::vector<double> R(curve.m);
  for (int k = 0; k < curve.m; ++k) {
    const cplx field = 2.0 * Om * std::conj(curve.points[k]) - 2.0 * iu * ubar[k];
    R[k] = -std::imag(field * (-iu * curve.dpoints[k])) / bn.eps;
  }

  const int nproj = curve.m / 2;
  if (nmodes > nproj) throw numerics_error("residual_single: nmodes above Nyquist");
  const auto modes = project_modes(R, nproj);

  SineSpectrum out;
  out.coeffs.assign(modes.b.begin() + 1, modes.b.begin() + 1 + nmodes);
  if (diag) {
    double leak = 0.0;
    for (int n = 0; n <= nmodes; ++n) leak = std::max(leak, std::abs(modes.a[n]));
    diag->cos_leakage = leak;
    double total = 0.0, high = 0.0;
    for (int n = 1; n <= nproj; ++n) {
      const double e = modes.b[n] * modes.b[n];
      total += e;
      if (n > N / 2) high += e;
    }
    diag->aliasing_fraction = total > 0.0 ? std::sqrt(high / total) : 0.0;
  }
  return out;
}

int LinearizedOperator::bandwidth() const {
  // max |row - col| index offset of a non-negligible entry, in B-space where
  // row n pairs naturally with column B_{n+1}
  int bw = 0;
  const double tol = 1e-14 * matrix.cwiseAbs().maxCoeff();
  for (int i = 0; i < matrix.rows(); ++i)
    for (int j = 0; j < matrix.cols(); ++j)
      if (std::abs(matrix(i, j)) > tol) bw = std::max(bw, std::abs((j + 2) - (i + 1)));
  return bw;
}

LinearizedOperator linearization_analytic(double Q, int N) {
  if (!(Q >= 0.0 && Q < 0.5))
    throw geometry_error("linearization_analytic: Q outside [0, 1/2)");
  LinearizedOperator op;
  op.matrix = Eigen::MatrixXd::Zero(N - 1, N - 1);
  for (int n = 1; n <= N - 1; ++n) {
    const double fn = spectral_factor(Q, n);
    const int jlo = n - 1;  // B_{n-1}
    const int jhi = n + 1;  // B_{n+1}
    if (jlo >= 2 && jlo <= N) op.matrix(n - 1, jlo - 2) += fn / pi;
    if (jhi >= 2 && jhi <= N) op.matrix(n - 1, jhi - 2) += -Q * fn / pi;
  }
  return op;
}

Eigen::MatrixXd jacobian_numeric(const FourierBoundary& b, const ResidualOptions& opts,
                                 double h_rel) {
  const int N = b.order();
  const int ncols = N - 1;
  Eigen::MatrixXd J(N - 1, ncols);
  if (h_rel <= 0.0 || !std::isfinite(h_rel))
    throw numerics_error("jacobian_numeric: invalid step");
  parallel_for(ncols, [&](std::size_t j) {
    const double h = h_rel * std::max(1.0, std::abs(b.coeffs[j]));
    FourierBoundary bp = b, bm = b;
    bp.coeffs[j] += h;
    bm.coeffs[j] -= h;
    const auto rp = residual_single(bp, opts);
    const auto rm = residual_single(bm, opts);
    for (int i = 0; i < N - 1; ++i)
      J(i, j) = (rp.coeffs[i] - rm.coeffs[i]) / (2.0 * h);
  });
  return J;
}

double invertibility_margin(double Q, int N) {
  if (!(Q > 0.0 && Q <= 0.5))
    throw numerics_error("invertibility_margin: Q outside (0, 1/2]");
  double v = spectral_factor(Q, 3);
  for (int n = 4; n <= N; ++n) v = std::min(v, spectral_factor(Q, n));
  return v;
}

}  // namespace rotpatch
