#include "rotpatch/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rotpatch {

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_boundary_csv(const std::string& path, const SampledCurve& c,
                        const std::vector<cplx>* velocities) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "theta,x,y,nx,ny";
  if (velocities) out << ",u_x,u_y";
  out << "\n";
  for (int k = 0; k < c.m; ++k) {
    out << format_sig(c.thetas[k]) << ',' << format_sig(c.points[k].real()) << ','
        << format_sig(c.points[k].imag()) << ',' << format_sig(c.normals[k].real()) << ','
        << format_sig(c.normals[k].imag());
    if (velocities)
      out << ',' << format_sig((*velocities)[k].real()) << ','
          << format_sig((*velocities)[k].imag());
    out << "\n";
  }
}

SampledCurve read_boundary_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<cplx> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() < 3) throw std::runtime_error("malformed boundary CSV row");
    pts.emplace_back(row[1], row[2]);
  }
  return curve_from_points(std::move(pts));
}

json boundary_to_json(const FourierBoundary& b) {
  return json{{"Q", b.Q}, {"eps", b.eps}, {"A", b.A}, {"b1", b.b1}, {"B", b.coeffs}};
}

FourierBoundary boundary_from_json(const json& j) {
  FourierBoundary b;
  b.Q = j.at("Q").get<double>();
  b.eps = j.at("eps").get<double>();
  b.A = j.value("A", 1.0);
  b.b1 = j.value("b1", 0.0);
  b.coeffs = j.at("B").get<std::vector<double>>();
  return b;
}

json report_to_json(const SolveReport& r) {
  return json{{"converged", r.converged},
              {"iterations", r.iterations},
              {"residual_history", r.residual_history},
              {"final_residual", r.final_residual},
              {"condition_estimate", r.condition_estimate},
              {"error", r.error}};
}

}  // namespace rotpatch
