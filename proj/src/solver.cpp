#include "rotpatch/solver.hpp"

#include <algorithm>
#include <cmath>

#include "rotpatch/parallel.hpp"

namespace rotpatch {

namespace {

double weighted_norm(const Eigen::VectorXd& r, const Eigen::VectorXd& w) {
  if (w.size() == 0) return r.norm();
  return (w.array() * r.array()).matrix().norm();
}

}  // namespace

SolveReport newton_solve(const ResidualFn& fn, Eigen::VectorXd& x, const NewtonOptions& opts) {
  SolveReport rep;
  const int dim = static_cast<int>(x.size());
  Eigen::VectorXd r = fn(x);
  if (r.size() != dim)
    throw numerics_error("newton_solve: residual dimension does not match unknowns");
  double nr = weighted_norm(r, opts.row_weights);
  rep.residual_history.push_back(nr);

  for (int it = 0; it < opts.max_iter; ++it) {
    if (!std::isfinite(nr)) {
      rep.error = "non-finite residual";
      break;
    }
    if (nr <= opts.tol) {
      rep.converged = true;
      break;
    }

    Eigen::MatrixXd J(dim, dim);
    parallel_for(dim, [&](std::size_t j) {
      const double h = opts.fd_step_rel * std::max(1.0, std::abs(x(j)));
      Eigen::VectorXd xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      const Eigen::VectorXd rp = fn(xp);
      const Eigen::VectorXd rm = fn(xm);
      J.col(j) = (rp - rm) / (2.0 * h);
    });

    // two-sided equilibration: the blocks carry wildly different physical
    // units (satellite rows scale with the satellite vorticity), and a plain
    // LU on the raw matrix loses enough accuracy to stall below ~1e-9
    const Eigen::VectorXd rs =
        J.cwiseAbs().rowwise().maxCoeff().cwiseMax(1e-300);
    Eigen::MatrixXd Js = rs.cwiseInverse().asDiagonal() * J;
    const Eigen::VectorXd cs =
        Js.cwiseAbs().colwise().maxCoeff().transpose().cwiseMax(1e-300);
    Js = Js * cs.cwiseInverse().asDiagonal();

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(Js);
    const double jn = Js.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
    const Eigen::MatrixXd Jinv = lu.inverse();
    const double jin = Jinv.cwiseAbs().rowwise().sum().maxCoeff();
    rep.condition_estimate = std::max(rep.condition_estimate, jn * jin);
    if (!(jn * jin < opts.cond_limit)) {
      rep.error = "singular Jacobian (condition estimate above limit)";
      break;
    }

    const Eigen::VectorXd dx =
        cs.cwiseInverse().asDiagonal() * lu.solve(-(rs.cwiseInverse().asDiagonal() * r));
    // backtracking line search on the residual norm; Jacobian reused
    double step = 1.0;
    bool accepted = false;
    for (int half = 0; half <= opts.max_halvings; ++half) {
      Eigen::VectorXd xn = x + step * dx;
      Eigen::VectorXd rn;
      try {
        rn = fn(xn);
      } catch (const std::exception&) {
        step *= 0.5;
        continue;  // stepped outside the domain of validity
      }
      const double nn = weighted_norm(rn, opts.row_weights);
      if (std::isfinite(nn) && nn < nr) {
        x = std::move(xn);
        r = std::move(rn);
        nr = nn;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    rep.iterations = it + 1;
    if (!accepted) {
      rep.error = "line-search stall";
      break;
    }
    rep.residual_history.push_back(nr);
  }

  if (!rep.converged && rep.error.empty() && nr > opts.tol)
    rep.error = "max_iter exceeded";
  if (nr <= opts.tol) rep.converged = true;
  rep.final_residual = nr;
  return rep;
}

// ---------------------------------------------------------------- single patch

namespace {

Eigen::VectorXd pack_single(const FourierBoundary& b) {
  Eigen::VectorXd x(b.order());  // b1, B_2..B_N
  x(0) = b.b1;
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) x(i + 1) = b.coeffs[i];
  return x;
}

FourierBoundary unpack_single(const Eigen::VectorXd& x, double Q, double eps) {
  FourierBoundary b;
  b.Q = Q;
  b.eps = eps;
  b.b1 = x(0);
  b.coeffs.assign(x.data() + 1, x.data() + x.size());
  return b;
}

double perturbation_norm_of(const FourierBoundary& b) {
  double acc = b.b1 * b.b1;  // n = 1, weight n^2
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) {
    const double n = static_cast<double>(i + 2);
    acc += n * n * b.coeffs[i] * b.coeffs[i];
  }
  return b.eps * std::sqrt(acc);
}

}  // namespace

SingleSolveResult solve_single(double Q, double eps, int N, int m, double tol,
                               const FourierBoundary* start) {
  ResidualOptions ropts;
  ropts.m = m;
  ropts.nmodes = N + 1;

  double sin1 = 0.0;
  auto fn = [&](const Eigen::VectorXd& x) {
    const FourierBoundary b = unpack_single(x, Q, eps);
    const SineSpectrum s = residual_single(b, ropts);
    sin1 = s.coeff(1);
    Eigen::VectorXd r(N);  // rows sin 2 .. sin N+1
    for (int n = 2; n <= N + 1; ++n) r(n - 2) = s.coeff(n);
    return r;
  };

  NewtonOptions nopts;
  nopts.tol = tol;
  nopts.row_weights = Eigen::VectorXd(N);
  for (int n = 2; n <= N + 1; ++n) nopts.row_weights(n - 2) = n;  // s = 2 weights

  Eigen::VectorXd x;
  if (start) {
    FourierBoundary b0 = *start;
    b0.coeffs.resize(N - 1, 0.0);
    x = pack_single(b0);
  } else {
    x = Eigen::VectorXd::Zero(N);
  }

  SingleSolveResult res;
  if (eps == 0.0) {  // the trivial point: residual already zero at coeffs = 0
    res.boundary = unpack_single(Eigen::VectorXd::Zero(N), Q, eps);
    res.report.converged = true;
    res.report.final_residual = 0.0;
    res.report.residual_history = {0.0};
    return res;
  }

  res.report = newton_solve(fn, x, nopts);
  res.boundary = renormalize_scale(unpack_single(x, Q, eps));
  res.sin1_monitor = sin1;
  res.perturbation_norm = perturbation_norm_of(res.boundary);
  return res;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ContinuationResult continuation_single(double Q, std::vector<double> eps_schedule,
                                       int N, int m, double tol) {
  ContinuationResult out;
  out.all_converged = true;
  if (eps_schedule.empty()) return out;

  FourierBoundary prev;
  bool have_prev = false;
  for (double eps_target : eps_schedule) {
    // bisect the parameter step on failure
    double eps_from = have_prev ? prev.eps : eps_target;
    std::vector<double> stack{eps_target};
    int bisections = 0;
    SingleSolveResult res;
    while (!stack.empty()) {
      const double eps = stack.back();
      res = solve_single(Q, eps, N, m, tol, have_prev ? &prev : nullptr);
      if (res.report.converged) {
        stack.pop_back();
        prev = res.boundary;
        have_prev = true;
        eps_from = eps;
      } else {
        if (++bisections > 6)
          throw numerics_error("continuation_single: step failed after 6 bisections");
        stack.push_back(0.5 * (eps + eps_from));
      }
    }
    ContinuationStep step;
    step.parameter = eps_target;
    step.report = res.report;
    step.perturbation_norm = res.perturbation_norm;
    out.all_converged = out.all_converged && res.report.converged;
    out.steps.push_back(std::move(step));
    out.boundaries.push_back(prev);
  }

  std::vector<double> ps, ns;
  for (const auto& s : out.steps) {
    ps.push_back(s.parameter);
    ns.push_back(std::max(s.perturbation_norm, 1e-300));
  }
  if (ps.size() >= 2) out.slope = loglog_slope(ps, ns);
  return out;
}

// ---------------------------------------------------------------- 2+1 system

namespace {

struct MultiPacking {
  int N;
  int dim() const { return 2 + (N - 1) + 2 * (1 + (N - 2)); }

  Eigen::VectorXd pack(const MultiConfig& c) const {
    Eigen::VectorXd x(dim());
    int k = 0;
    x(k++) = c.t0;
    x(k++) = c.beta0.b1;
    for (double v : c.beta0.coeffs) x(k++) = v;
    x(k++) = c.Y[0];
    for (double v : c.beta1.coeffs) x(k++) = v;
    x(k++) = c.Y[1];
    for (double v : c.beta2.coeffs) x(k++) = v;
    return x;
  }

  MultiConfig unpack(const Eigen::VectorXd& x, const MultiConfig& proto) const {
    MultiConfig c = proto;
    int k = 0;
    c.t0 = x(k++);
    c.beta0.b1 = x(k++);
    for (auto& v : c.beta0.coeffs) v = x(k++);
    c.Y[0] = x(k++);
    for (auto& v : c.beta1.coeffs) v = x(k++);
    c.Y[1] = x(k++);
    for (auto& v : c.beta2.coeffs) v = x(k++);
    return c;
  }
};

}  // namespace

MultiSolveResult solve_multi(MultiConfig start, const MultiOptions& mopts, double tol,
                             int max_iter) {
  const int N = start.beta0.order();
  MultiPacking pk{N};
  const int rows = central_mode_count(N) + 2 * satellite_mode_count(N);
  if (rows != pk.dim())
    throw numerics_error("solve_multi: row/unknown count mismatch");

  auto fn = [&](const Eigen::VectorXd& x) {
    const MultiConfig c = pk.unpack(x, start);
    const MultiResidual r = residual_multi(c, mopts);
    Eigen::VectorXd v(rows);
    int k = 0;
    for (double b : r.F0.coeffs) v(k++) = b;
    for (double b : r.F1.coeffs) v(k++) = b;
    for (double b : r.F2.coeffs) v(k++) = b;
    return v;
  };

  NewtonOptions nopts;
  nopts.tol = tol;
  nopts.max_iter = max_iter;
  nopts.row_weights = Eigen::VectorXd(rows);
  {
    int k = 0;
    for (int n = 1; n <= central_mode_count(N); ++n) nopts.row_weights(k++) = n;
    for (int j = 0; j < 2; ++j)
      for (int n = 1; n <= satellite_mode_count(N); ++n) nopts.row_weights(k++) = n;
  }

  Eigen::VectorXd x = pk.pack(start);
  MultiSolveResult out;
  out.report = newton_solve(fn, x, nopts);
  out.config = pk.unpack(x, start);
  out.distances = boundary_distance(out.config);
  return out;
}

ContinuationResult continuation_multi(double Q, double mu, std::vector<double> r0_schedule,
                                      int N, const MultiOptions& mopts, double tol,
                                      CdVariant cd) {
  ContinuationResult out;
  out.all_converged = true;
  std::vector<double> dists;

  const MultiConfig* prev = nullptr;
  for (double r0 : r0_schedule) {
    MultiConfig c = make_multi_config(Q, mu, r0, r0 * r0 / 4.0, r0 * r0 / 4.0, N, cd);
    if (prev) {  // warm-start shapes; Y comes from the fresh leading balance
      c.beta0.b1 = prev->beta0.b1;
      c.beta0.coeffs = prev->beta0.coeffs;
      c.beta1.coeffs = prev->beta1.coeffs;
      c.beta2.coeffs = prev->beta2.coeffs;
    }
    MultiSolveResult res = solve_multi(c, mopts, tol);
    out.all_converged = out.all_converged && res.report.converged;
    ContinuationStep step;
    step.parameter = r0;
    step.report = res.report;
    step.extra = {res.distances[0], res.distances[1], res.config.Y[0], res.config.Y[1]};
    out.steps.push_back(std::move(step));
    out.configs.push_back(res.config);
    prev = &out.configs.back();
    dists.push_back(0.5 * (res.distances[0] + res.distances[1]));
  }
  if (dists.size() >= 2) out.slope = loglog_slope(r0_schedule, dists);
  return out;
}

}  // namespace rotpatch
