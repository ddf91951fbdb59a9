#pragma once

#include <span>
#include <vector>

#include "rotpatch/types.hpp"

namespace rotpatch {

/// Fourier coefficients of a real 2pi-periodic sample set f(theta_k),
/// theta_k = 2 pi k / m:  f ~ a_0/2 + sum_n (a_n cos n theta + b_n sin n theta).
struct FourierModes {
  std::vector<double> a;  // a_0 .. a_nmax
  std::vector<double> b;  // b_0 (=0) .. b_nmax
};

/// FFT-based projection onto the first nmax trigonometric modes (nmax <= m/2).
FourierModes project_modes(std::span<const double> samples, int nmax);

/// Forward DFT, F_j = sum_k f_k exp(-2 pi i j k / m), unnormalized.
std::vector<cplx> fft_forward(std::span<const cplx> samples);

/// Inverse of fft_forward (includes the 1/m factor).
std::vector<cplx> fft_inverse(std::span<const cplx> modes);

/// d/dtheta of a periodic sample set by spectral differentiation.
std::vector<cplx> spectral_derivative(std::span<const cplx> samples);

/// Evaluates the trigonometric interpolant of the samples at arbitrary angles.
std::vector<cplx> trig_interpolate(std::span<const cplx> samples,
                                   std::span<const double> thetas);

}  // namespace rotpatch
