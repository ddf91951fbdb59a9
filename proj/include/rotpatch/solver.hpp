#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "rotpatch/multi.hpp"

namespace rotpatch {

/// Diagnostics of one Newton run. residual_history is strictly decreasing for
/// converged runs (the damped line search enforces monotone decrease or fails).
struct SolveReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;
  double final_residual = 0.0;
  double condition_estimate = 0.0;
  std::string error;
};

struct NewtonOptions {
  double tol = 1e-11;
  int max_iter = 30;
  double fd_step_rel = 1e-6;
  int max_halvings = 8;
  double cond_limit = 1e12;
  Eigen::VectorXd row_weights;  // empty -> unweighted
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Damped Newton with a central-difference Jacobian (columns evaluated in
/// parallel, reused across the line search). x is updated in place.
SolveReport newton_solve(const ResidualFn& fn, Eigen::VectorXd& x,
                         const NewtonOptions& opts = {});

// ---------------------------------------------------------------- single patch

struct SingleSolveResult {
  FourierBoundary boundary;   // solved, renormalized; b1 carries the aspect mode
  SolveReport report;
  double sin1_monitor = 0.0;  // residual's sin(theta) component (stays ~0)
  double perturbation_norm = 0.0;  // eps * sqrt(sum n^2 B_n^2), B_1 = b1
};

/// Solves the single-patch steady equation at fixed Q, eps. Unknowns are the
/// aspect mode b1 and B_2..B_N against the sin(2..N+1) rows; the sin(1) row
/// vanishes by symmetry and is monitored.
SingleSolveResult solve_single(double Q, double eps, int N, int m, double tol,
                               const FourierBoundary* start = nullptr);

struct ContinuationStep {
  double parameter = 0.0;
  SolveReport report;
  double perturbation_norm = 0.0;
  std::vector<double> extra;  // family-specific diagnostics (distances etc.)
};

struct ContinuationResult {
  std::vector<ContinuationStep> steps;
  double slope = 0.0;     // log-log slope of the norm diagnostic vs parameter
  bool all_converged = false;
  std::vector<FourierBoundary> boundaries;  // single-patch family
  std::vector<MultiConfig> configs;         // multi family
};

/// Continuation in eps with warm starts; failed steps trigger parameter-step
/// bisection (max 6 per step). Emits the slope of log ||eps phi(eps)|| vs
/// log eps over the requested schedule points.
ContinuationResult continuation_single(double Q, std::vector<double> eps_schedule,
                                       int N, int m, double tol);

// ---------------------------------------------------------------- 2+1 system

struct MultiSolveResult {
  MultiConfig config;   // solved
  SolveReport report;
  std::array<double, 2> distances{};
};

/// Solves the 2+1 system. Unknowns: t0, b1, B_2..B_N, (y_1, A^1_3..A^1_N),
/// (y_2, A^2_3..A^2_N) against rows F0: sin(1..N+1), F_j: sin(1..N-1).
MultiSolveResult solve_multi(MultiConfig start, const MultiOptions& mopts,
                             double tol, int max_iter = 30);

/// Continuation in r0 (r_j = r0^2/4); the slope field is the log-log slope of
/// the measured wall distance vs r0 (the Theorem-2 law).
ContinuationResult continuation_multi(double Q, double mu, std::vector<double> r0_schedule,
                                      int N, const MultiOptions& mopts, double tol,
                                      CdVariant cd = CdVariant::TwoMu);

/// Least-squares slope of log(y) vs log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rotpatch
