#include <doctest.h>

#include <cmath>

#include "rotpatch/solver.hpp"

using namespace rotpatch;

TEST_CASE("newton solver on a closed-form system") {
  // f(x, y) = (x^2 + y^2 - 4, x y - 1): roots known analytically
  auto fn = [](const Eigen::VectorXd& v) {
    Eigen::VectorXd r(2);
    r(0) = v(0) * v(0) + v(1) * v(1) - 4.0;
    r(1) = v(0) * v(1) - 1.0;
    return r;
  };
  Eigen::VectorXd x(2);
  x << 2.0, 0.3;
  NewtonOptions opts;
  opts.tol = 1e-13;
  const auto rep = newton_solve(fn, x, opts);
  CHECK(rep.converged);
  CHECK(rep.final_residual < 1e-13);
  // residual history decreases strictly
  for (std::size_t i = 1; i < rep.residual_history.size(); ++i)
    CHECK(rep.residual_history[i] < rep.residual_history[i - 1]);
  // x^2 stays the larger root of t^2 - 4 t + 1
  CHECK(x(0) * x(0) == doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-10));

  SUBCASE("singular Jacobian is reported") {
    auto degenerate = [](const Eigen::VectorXd& v) {
      Eigen::VectorXd r(2);
      r(0) = v(0) + v(1);
      r(1) = 2.0 * (v(0) + v(1)) - 1.0;
      return r;
    };
    Eigen::VectorXd y(2);
    y << 0.1, 0.1;
    const auto bad = newton_solve(degenerate, y, opts);
    CHECK_FALSE(bad.converged);
    CHECK_FALSE(bad.error.empty());
  }
}

TEST_CASE("single-patch solve") {
  const double Q = 0.3, eps = 0.01;
  const auto res = solve_single(Q, eps, 16, 256, 1e-11);
  CHECK(res.report.converged);
  CHECK(res.report.iterations <= 5);
  CHECK(res.report.final_residual < 1e-11);
  CHECK(std::abs(res.sin1_monitor) < 1e-12);
  // the perturbation is far below the eps^2 closeness bound
  CHECK(res.perturbation_norm < 10.0 * eps * eps);
  // solved coefficients decay: the aspect mode dominates the tail
  double tail = 0.0;
  for (double c : res.boundary.coeffs) tail = std::max(tail, std::abs(c));
  CHECK(tail < std::abs(res.boundary.b1) + 1e-14);

  SUBCASE("eps = 0 returns the trivial solution immediately") {
    const auto triv = solve_single(Q, 0.0, 16, 256, 1e-11);
    CHECK(triv.report.converged);
    CHECK(triv.boundary.b1 == 0.0);
    for (double c : triv.boundary.coeffs) CHECK(c == 0.0);
  }
}

TEST_CASE("conditioning grows as Q approaches the margin endpoint") {
  const auto mid = solve_single(0.3, 0.01, 12, 128, 1e-10);
  const auto edge = solve_single(0.499, 0.01, 12, 128, 1e-10);
  CHECK(mid.report.converged);
  CHECK(edge.report.converged);
  CHECK(edge.report.condition_estimate > mid.report.condition_estimate);
}

TEST_CASE("continuation in eps") {
  SUBCASE("empty schedule") {
    const auto out = continuation_single(0.3, {}, 12, 128, 1e-11);
    CHECK(out.steps.empty());
  }
  SUBCASE("schedule converges; perturbation scales like eps^4") {
    // the forcing at zero coefficients is O(eps^3) (image of the patch
    // quadrupole), so ||eps phi(eps)|| runs as eps^4 — well inside the O(eps^2)
    // closeness bound of the underlying family
    const auto out = continuation_single(0.3, {0.02, 0.015, 0.01, 0.0075, 0.005}, 12, 128, 1e-11);
    CHECK(out.all_converged);
    for (const auto& st : out.steps) CHECK(st.report.final_residual < 1e-11);
    CHECK(out.slope == doctest::Approx(4.0).epsilon(0.08));
  }
}

TEST_CASE("truncation robustness: N and 2N agree in shared coefficients") {
  const double Q = 0.3, eps = 0.02;
  const auto a = solve_single(Q, eps, 12, 256, 1e-12);
  FourierBoundary warm = a.boundary;
  const auto b = solve_single(Q, eps, 24, 256, 1e-12, &warm);
  CHECK(a.report.converged);
  CHECK(b.report.converged);
  CHECK(std::abs(a.boundary.b1 - b.boundary.b1) < 1e-9);
  for (std::size_t i = 0; i < a.boundary.coeffs.size(); ++i)
    CHECK(std::abs(a.boundary.coeffs[i] - b.boundary.coeffs[i]) < 1e-9);
}

TEST_CASE("multi solve at r0 = 0.05") {
  MultiOptions mopts;
  mopts.m0 = 128;
  mopts.ms = 64;
  mopts.satellites_by_area = false;  // fast path; route equality tested elsewhere
  MultiConfig c0 = make_multi_config(0.3, 1.0, 0.05, 0.000625, 0.000625, 8);
  const auto res = solve_multi(c0, mopts, 1e-9);
  CHECK(res.report.converged);
  CHECK(res.report.final_residual < 1e-9);
  CHECK(res.config.Y[0] == doctest::Approx(res.config.Y[1]).epsilon(1e-9));
  CHECK(std::abs(res.config.t0) < 1e-10);
  CHECK(std::isfinite(res.config.Y[0]));
  CHECK(res.distances[0] == doctest::Approx(res.distances[1]).epsilon(1e-9));
  CHECK(res.distances[0] > 0.0);

  SUBCASE("quadratic convergence of the damped iteration") {
    const auto& h = res.report.residual_history;
    REQUIRE(h.size() >= 3);
    // successive contraction sharpens: geometric at worst, quadratic in the tail
    const double q1 = h[1] / h[0];
    const double q2 = h[2] / h[1];
    CHECK(q2 < q1);
  }
}

TEST_CASE("loglog slope helper") {
  std::vector<double> x{1.0, 2.0, 4.0}, y{3.0, 12.0, 48.0};  // slope 2
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
}
