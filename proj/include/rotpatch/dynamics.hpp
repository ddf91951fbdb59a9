#pragma once

#include <vector>

#include "rotpatch/kernels.hpp"

namespace rotpatch {

/// State of the contour-dynamics integrator: one or more patch boundaries
/// advected by the full induced velocity (all patches plus disk images).
struct PatchState {
  std::vector<PatchSource> patches;
  double time = 0.0;
};

/// Full velocity at every node of every curve (self terms use the removable
/// diagonal limit; cross terms are plain off-curve evaluations).
std::vector<std::vector<cplx>> boundary_velocity(const PatchState& state);

struct EvolveOptions {
  double omega_hint = 0.0;   // used for the CFL check dt <= 0.05/Omega
  bool redistribute = true;  // equal-arclength node redistribution each step
  int log_every = 1;
};

struct EvolutionLogRow {
  double time;
  double area_drift_rel;     // max over patches of |area - area0|/area0
  double perimeter;          // first patch
  double min_gap;            // min inter-curve distance (inf for one patch)
};

struct EvolutionLog {
  std::vector<EvolutionLogRow> rows;
  bool cfl_warning = false;
  bool collision_halt = false;
  int steps_taken = 0;
};

/// Classical RK4 on node positions with spectral re-derivation of the curve
/// each stage and equal-arclength resampling after each step.
/// Halts (collision_halt) if curves approach within 3 node spacings.
PatchState evolve(const PatchState& initial, double dt, double T,
                  EvolutionLog* log = nullptr, const EvolveOptions& opts = {});

/// Hausdorff distance between the evolved curve and the initial curve rotated
/// by Omega * t, normalized by the initial curve's diameter. Both curves are
/// spectrally upsampled before the distance computation.
double rigid_rotation_error(const SampledCurve& initial, const SampledCurve& evolved,
                            double Omega, double t, int upsample = 4);

}  // namespace rotpatch
