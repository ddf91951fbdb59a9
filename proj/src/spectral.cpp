#include "rotpatch/spectral.hpp"

#include <fftw3.h>

#include <mutex>

namespace rotpatch {

namespace {

// FFTW planning is not thread-safe; execution of independent plans is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::vector<cplx> run_dft(std::span<const cplx> in, int sign) {
  const int m = static_cast<int>(in.size());
  std::vector<cplx> out(m);
  std::vector<cplx> buf(in.begin(), in.end());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_1d(m, reinterpret_cast<fftw_complex*>(buf.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), sign,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<cplx> fft_forward(std::span<const cplx> samples) {
  return run_dft(samples, FFTW_FORWARD);
}

std::vector<cplx> fft_inverse(std::span<const cplx> modes) {
  auto out = run_dft(modes, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(modes.size());
  for (auto& v : out) v *= inv;
  return out;
}

FourierModes project_modes(std::span<const double> samples, int nmax) {
  const int m = static_cast<int>(samples.size());
  if (nmax > m / 2) throw numerics_error("project_modes: nmax exceeds Nyquist");
  std::vector<cplx> cs(samples.begin(), samples.end());
  auto F = fft_forward(cs);
  FourierModes out;
  out.a.resize(nmax + 1);
  out.b.resize(nmax + 1);
  out.a[0] = 2.0 * F[0].real() / m;
  out.b[0] = 0.0;
  for (int n = 1; n <= nmax; ++n) {
    out.a[n] = 2.0 * F[n].real() / m;
    out.b[n] = -2.0 * F[n].imag() / m;
  }
  return out;
}

std::vector<cplx> spectral_derivative(std::span<const cplx> samples) {
  const int m = static_cast<int>(samples.size());
  auto F = fft_forward(samples);
  for (int j = 0; j < m; ++j) {
    int k = (j <= m / 2) ? j : j - m;
    if (j == m / 2) k = 0;  // drop the unmatched Nyquist mode of d/dtheta
    F[j] *= cplx(0.0, static_cast<double>(k));
  }
  return fft_inverse(F);
}

std::vector<cplx> trig_interpolate(std::span<const cplx> samples,
                                   std::span<const double> thetas) {
  const int m = static_cast<int>(samples.size());
  auto F = fft_forward(samples);
  std::vector<cplx> out(thetas.size());
  const double inv = 1.0 / m;
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    const double th = thetas[t];
    cplx acc = F[0];
    for (int j = 1; j < m / 2; ++j) {
      acc += F[j] * std::polar(1.0, j * th);
      acc += F[m - j] * std::polar(1.0, -j * th);
    }
    // split the Nyquist mode symmetrically
    acc += F[m / 2] * std::cos(m / 2 * th);
    out[t] = acc * inv;
  }
  return out;
}

}  // namespace rotpatch
