#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotpatch {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx iu{0.0, 1.0};

/// Precondition violations on domain objects (invalid parameters, degenerate
/// or self-intersecting curves, containment failures).
struct geometry_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failures of numerical procedures (non-convergence, singular Jacobians,
/// failed extrapolations).
struct numerics_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rotpatch
