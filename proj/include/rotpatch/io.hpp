#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "rotpatch/geometry.hpp"
#include "rotpatch/solver.hpp"

namespace rotpatch {

using json = nlohmann::json;

/// CSV with header theta,x,y,nx,ny (12 significant digits). Optional velocity
/// samples append u_x,u_y columns.
void write_boundary_csv(const std::string& path, const SampledCurve& c,
                        const std::vector<cplx>* velocities = nullptr);

/// Reads the point columns of a boundary CSV back into a curve (derivatives
/// are rebuilt spectrally). Ignores the normal/velocity columns.
SampledCurve read_boundary_csv(const std::string& path);

/// Coefficient export {Q, eps, A, b1, B: [...]}.
json boundary_to_json(const FourierBoundary& b);
FourierBoundary boundary_from_json(const json& j);

json report_to_json(const SolveReport& r);

/// Round-trip-stable number formatting used in every file we write.
std::string format_sig(double v);

}  // namespace rotpatch
