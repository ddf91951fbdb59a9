#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rotpatch/geometry.hpp"
#include "rotpatch/types.hpp"

namespace rotpatch {

/// Dirichlet Green's function of the unit disk,
///   G(x,y) = -(1/2pi) log|x-y| + (1/2pi) log|1 - x conj(y)|.
/// (The image factor ||y|(x - y/|y|^2)| equals |1 - x conj(y)|, which also
/// covers y = 0.) Requires x != y, both strictly inside the disk.
double green_disk(cplx x, cplx y);

/// Regular (image/Robin) part h(x,y) = (1/2pi) log|1 - x conj(y)|.
/// Defined for x = y; h(x,x) = (1/2pi) log(1-|x|^2).
double robin_regular_part(cplx x, cplx y);

/// Complex gradients d/dx1 + i d/dx2 of h and G in the first argument.
cplx robin_gradient(cplx x, cplx y);
cplx green_gradient(cplx x, cplx y);

/// Vortex patch omega = strength * indicator(K), boundary given as a curve.
/// image_term toggles the disk-image integral (off = free-space velocity,
/// used by the Kirchhoff checks).
struct PatchSource {
  SampledCurve curve;
  double strength = 1.0;
  bool image_term = true;
};

/// Velocity induced by the patch at z (closed unit disk). When z is a node of
/// src.curve, pass its index so the removable singularity of the first kernel
/// is replaced by its tangent limit.
cplx patch_velocity(const PatchSource& src, cplx z,
                    std::optional<int> on_curve_index = std::nullopt);

/// conj(u) at every node of the source's own curve (diagonal limits applied).
std::vector<cplx> self_velocity_conj(const PatchSource& src);

/// conj(u) at targets away from the curve nodes.
std::vector<cplx> velocity_conj_at(const PatchSource& src, std::span<const cplx> targets);

/// max over m_bnd midpoints on |x| = 1 of |u . n|; quadrature-level for any
/// interior patch when the image term is on.
double tangency_check(const PatchSource& src, int m_bnd);

/// Circulation of u along |x| = radius (counterclockwise).
double circulation(const PatchSource& src, double radius, int m);

}  // namespace rotpatch
