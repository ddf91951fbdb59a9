#include "rotpatch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotpatch/spectral.hpp"

namespace rotpatch {

namespace {

SampledCurve rebuild_curve(const std::vector<cplx>& points) {
  auto dp = spectral_derivative(points);
  CurveChecks checks;
  checks.simple = false;  // collision monitoring happens at the step level
  return make_curve(points, std::move(dp), checks);
}

std::vector<std::vector<cplx>> velocities_of(const std::vector<PatchSource>& patches) {
  std::vector<std::vector<cplx>> out(patches.size());
  for (std::size_t i = 0; i < patches.size(); ++i) {
    const auto& target = patches[i].curve;
    std::vector<cplx> acc(target.m, cplx{0.0, 0.0});
    for (std::size_t s = 0; s < patches.size(); ++s) {
      if (patches[s].strength == 0.0) continue;
      if (s == i) {
        const auto ub = self_velocity_conj(patches[s]);
        for (int k = 0; k < target.m; ++k) acc[k] += std::conj(ub[k]);
      } else {
        const auto ub = velocity_conj_at(patches[s], target.points);
        for (int k = 0; k < target.m; ++k) acc[k] += std::conj(ub[k]);
      }
    }
    out[i] = std::move(acc);
  }
  return out;
}

// Equal-arclength resampling via the spectral interpolant: find theta*_k with
// s(theta*_k) = k L / m by Newton on the Fourier representation of |z'|.
std::vector<cplx> redistribute_nodes(const SampledCurve& c) {
  const int m = c.m;
  std::vector<double> speed(m);
  for (int k = 0; k < m; ++k) speed[k] = std::abs(c.dpoints[k]);
  const auto sp = project_modes(speed, m / 2);
  const double L = pi * sp.a[0];  // total length = 2 pi * a0/2

  auto arclen = [&](double th) {
    double s = 0.5 * sp.a[0] * th;
    for (int n = 1; n <= m / 2; ++n) {
      s += sp.a[n] / n * std::sin(n * th);
      s += sp.b[n] / n * (1.0 - std::cos(n * th));
    }
    return s;
  };
  auto speed_at = [&](double th) {
    double v = 0.5 * sp.a[0];
    for (int n = 1; n <= m / 2; ++n)
      v += sp.a[n] * std::cos(n * th) + sp.b[n] * std::sin(n * th);
    return v;
  };

  std::vector<double> thetas(m);
  double th = 0.0;
  for (int k = 0; k < m; ++k) {
    const double target = L * k / m;
    for (int it = 0; it < 30; ++it) {
      const double f = arclen(th) - target;
      const double d = speed_at(th);
      const double step = f / d;
      th -= step;
      if (std::abs(step) < 1e-14) break;
    }
    thetas[k] = th;
    th += 2.0 * pi / m;  // predictor for the next node
  }
  return trig_interpolate(c.points, thetas);
}

double min_gap(const std::vector<PatchSource>& patches) {
  double v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < patches.size(); ++i)
    for (std::size_t j = i + 1; j < patches.size(); ++j)
      v = std::min(v, min_curve_distance(patches[i].curve, patches[j].curve));
  return v;
}

}  // namespace

std::vector<std::vector<cplx>> boundary_velocity(const PatchState& state) {
  return velocities_of(state.patches);
}

PatchState evolve(const PatchState& initial, double dt, double T, EvolutionLog* log,
                  const EvolveOptions& opts) {
  PatchState st = initial;
  EvolutionLog local;
  EvolutionLog& lg = log ? *log : local;
  if (opts.omega_hint != 0.0 && dt > 0.05 / std::abs(opts.omega_hint))
    lg.cfl_warning = true;

  std::vector<double> area0;
  for (const auto& p : st.patches) area0.push_back(enclosed_area(p.curve));

  const int nsteps = static_cast<int>(std::llround(T / dt));
  const int np = static_cast<int>(st.patches.size());

  for (int step = 0; step < nsteps; ++step) {
    // collision monitor
    if (np > 1) {
      double spacing = 0.0;
      for (const auto& p : st.patches)
        spacing = std::max(spacing, curve_perimeter(p.curve) / p.curve.m);
      if (min_gap(st.patches) < 3.0 * spacing) {
        lg.collision_halt = true;
        break;
      }
    }

    // RK4 on the stacked node positions
    auto positions = [&](const PatchState& s) {
      std::vector<std::vector<cplx>> x(np);
      for (int i = 0; i < np; ++i) x[i] = s.patches[i].curve.points;
      return x;
    };
    auto advanced = [&](const std::vector<std::vector<cplx>>& x0,
                        const std::vector<std::vector<cplx>>& k, double h) {
      PatchState s = st;
      for (int i = 0; i < np; ++i) {
        std::vector<cplx> p(x0[i].size());
        for (std::size_t q = 0; q < p.size(); ++q) p[q] = x0[i][q] + h * k[i][q];
        s.patches[i].curve = rebuild_curve(p);
      }
      return s;
    };

    const auto x0 = positions(st);
    const auto k1 = velocities_of(st.patches);
    const auto k2 = velocities_of(advanced(x0, k1, 0.5 * dt).patches);
    const auto k3 = velocities_of(advanced(x0, k2, 0.5 * dt).patches);
    const auto k4 = velocities_of(advanced(x0, k3, dt).patches);

    for (int i = 0; i < np; ++i) {
      std::vector<cplx> p(x0[i].size());
      for (std::size_t q = 0; q < p.size(); ++q)
        p[q] = x0[i][q] + dt / 6.0 * (k1[i][q] + 2.0 * k2[i][q] + 2.0 * k3[i][q] + k4[i][q]);
      SampledCurve c = rebuild_curve(p);
      if (opts.redistribute) c = rebuild_curve(redistribute_nodes(c));
      st.patches[i].curve = std::move(c);
    }
    st.time += dt;
    lg.steps_taken = step + 1;

    if ((step + 1) % std::max(1, opts.log_every) == 0) {
      EvolutionLogRow row;
      row.time = st.time;
      double drift = 0.0;
      for (int i = 0; i < np; ++i)
        drift = std::max(drift, std::abs(enclosed_area(st.patches[i].curve) - area0[i]) /
                                    std::abs(area0[i]));
      row.area_drift_rel = drift;
      row.perimeter = curve_perimeter(st.patches[0].curve);
      row.min_gap = np > 1 ? min_gap(st.patches) : std::numeric_limits<double>::infinity();
      lg.rows.push_back(row);
    }
  }
  return st;
}

namespace {

// Evaluates a curve and its first two theta-derivatives from its DFT modes.
struct SpectralCurve {
  std::vector<cplx> F;  // forward DFT of the node positions
  int m;

  explicit SpectralCurve(const std::vector<cplx>& points)
      : F(fft_forward(points)), m(static_cast<int>(points.size())) {}

  void eval(double th, cplx& g, cplx& dg, cplx& ddg) const {
    g = F[0];
    dg = ddg = cplx{0.0, 0.0};
    for (int j = 1; j < m / 2; ++j) {
      const cplx ep = std::polar(1.0, j * th), em = std::conj(ep);
      const cplx term = F[j] * ep + F[m - j] * em;
      const cplx dterm = iu * static_cast<double>(j) * (F[j] * ep - F[m - j] * em);
      g += term;
      dg += dterm;
      ddg += -static_cast<double>(j) * static_cast<double>(j) * term;
    }
    g += F[m / 2] * std::cos(m / 2 * th);
    const double inv = 1.0 / m;
    g *= inv;
    dg *= inv;
    ddg *= inv;
  }

  // distance from p to the curve: Newton on the normal-projection condition
  double distance(cplx p, double th0) const {
    double th = th0;
    for (int it = 0; it < 30; ++it) {
      cplx g, dg, ddg;
      eval(th, g, dg, ddg);
      const cplx d = g - p;
      const double f = std::real(std::conj(d) * dg);
      const double fp = std::norm(dg) + std::real(std::conj(d) * ddg);
      if (fp <= 0.0) break;
      const double step = f / fp;
      th -= step;
      if (std::abs(step) < 1e-15) break;
    }
    cplx g, dg, ddg;
    eval(th, g, dg, ddg);
    return std::abs(g - p);
  }
};

double one_sided_hausdorff(const std::vector<cplx>& from, const SampledCurve& to,
                           cplx to_rotation) {
  std::vector<cplx> rotated(to.points);
  for (auto& p : rotated) p *= to_rotation;
  SpectralCurve sc(rotated);
  double worst = 0.0;
  for (const auto& p : from) {
    // seed the projection at the nearest node
    int k0 = 0;
    double best = std::numeric_limits<double>::max();
    for (int k = 0; k < to.m; ++k) {
      const double d = std::abs(p - rotated[k]);
      if (d < best) {
        best = d;
        k0 = k;
      }
    }
    worst = std::max(worst, sc.distance(p, 2.0 * pi * k0 / to.m));
  }
  return worst;
}

}  // namespace

double rigid_rotation_error(const SampledCurve& initial, const SampledCurve& evolved,
                            double Omega, double t, int upsample) {
  if (initial.m != evolved.m)
    throw numerics_error("rigid_rotation_error: node counts differ");
  const int M = initial.m * upsample;
  std::vector<double> th(M);
  for (int k = 0; k < M; ++k) th[k] = 2.0 * pi * k / M;
  auto a = trig_interpolate(initial.points, th);  // initial, rotated below
  auto b = trig_interpolate(evolved.points, th);
  const cplx rot = std::polar(1.0, Omega * t);
  for (auto& p : a) p *= rot;

  const double h = std::max(one_sided_hausdorff(a, evolved, cplx{1.0, 0.0}),
                            one_sided_hausdorff(b, initial, rot));
  return h / initial.diameter();
}

}  // namespace rotpatch
