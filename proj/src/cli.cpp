#include "rotpatch/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "rotpatch/dynamics.hpp"
#include "rotpatch/io.hpp"
#include "rotpatch/parallel.hpp"

namespace rotpatch::cli {

namespace {

namespace fs = std::filesystem;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

void emit(const json& j, const std::string& out_path = {}) {
  const std::string text = j.dump(2);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    f << text << "\n";
  }
  std::cout << text << "\n";
}

std::vector<double> parse_schedule(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int cmd_solve_single(double Q, double eps, int N, int m, double tol,
                     const std::string& out_dir, const std::string& schedule) {
  Timer timer;
  if (!out_dir.empty()) fs::create_directories(out_dir);
  json rep;
  rep["schema"] = 1;
  rep["command"] = "solve-single";
  rep["params"] = {{"Q", Q}, {"eps", eps}, {"N", N}, {"m", m}, {"tol", tol}};

  bool ok = true;
  if (!schedule.empty()) {
    auto eps_list = parse_schedule(schedule);
    auto cont = continuation_single(Q, eps_list, N, m, tol);
    json steps = json::array();
    for (std::size_t i = 0; i < cont.steps.size(); ++i) {
      const auto& st = cont.steps[i];
      steps.push_back({{"eps", st.parameter},
                       {"report", report_to_json(st.report)},
                       {"perturbation_norm", st.perturbation_norm},
                       {"coeffs", boundary_to_json(cont.boundaries[i])}});
      if (!out_dir.empty()) {
        const auto curve = eval_outer_map(renormalize_scale(cont.boundaries[i]), m);
        write_boundary_csv(out_dir + "/boundary_" + std::to_string(i) + ".csv", curve);
      }
    }
    rep["continuation"] = {{"steps", steps},
                           {"perturbation_slope", cont.slope},
                           {"all_converged", cont.all_converged}};
    ok = cont.all_converged;
  } else {
    auto res = solve_single(Q, eps, N, m, tol);
    rep["report"] = report_to_json(res.report);
    rep["coeffs"] = boundary_to_json(res.boundary);
    rep["A_closed_form"] = scale_closed_form(res.boundary);
    rep["perturbation_norm"] = res.perturbation_norm;
    rep["sin1_monitor"] = res.sin1_monitor;
    rep["Omega"] = (1.0 - Q * Q) / (4.0 * pi * eps * eps);
    if (!out_dir.empty()) {
      const auto curve = eval_outer_map(renormalize_scale(res.boundary), m);
      write_boundary_csv(out_dir + "/boundary.csv", curve);
      std::ofstream(out_dir + "/coeffs.json") << boundary_to_json(res.boundary).dump(2) << "\n";
    }
    ok = res.report.converged;
  }
  rep["timing_seconds"] = timer.seconds();
  emit(rep, out_dir.empty() ? "" : out_dir + "/report.json");
  return ok ? 0 : 1;
}

int cmd_solve_multi(const std::string& config_path, const std::string& out_dir,
                    const std::string& cd_name) {
  Timer timer;
  std::ifstream cf(config_path);
  if (!cf) throw std::runtime_error("cannot open config: " + config_path);
  json cfg = json::parse(cf);

  const double Q = cfg.at("Q").get<double>();
  const double mu = cfg.at("mu").get<double>();
  const int N = cfg.value("N", 16);
  const double tol = cfg.value("tol", 1e-9);
  MultiOptions mopts;
  mopts.m0 = cfg.value("m", 256);
  mopts.ms = cfg.value("ms", 128);
  mopts.npolar = cfg.value("npolar", 64);

  CdVariant cd = CdVariant::TwoMu;
  std::string cds = cd_name.empty() ? cfg.value("cd", std::string("twomu")) : cd_name;
  if (cds == "twomupi") cd = CdVariant::TwoMuPi;
  else if (cds == "balance") cd = CdVariant::Balance;
  else if (cds != "twomu") throw std::runtime_error("unknown cd variant: " + cds);

  if (!out_dir.empty()) fs::create_directories(out_dir);
  json rep;
  rep["schema"] = 1;
  rep["command"] = "solve-multi";
  rep["params"] = cfg;

  bool ok = true;
  if (cfg.contains("r0_schedule")) {
    auto r0s = cfg.at("r0_schedule").get<std::vector<double>>();
    auto cont = continuation_multi(Q, mu, r0s, N, mopts, tol, cd);
    json steps = json::array();
    for (std::size_t i = 0; i < cont.steps.size(); ++i) {
      const auto& st = cont.steps[i];
      steps.push_back({{"r0", st.parameter},
                       {"report", report_to_json(st.report)},
                       {"d1", st.extra[0]},
                       {"d2", st.extra[1]},
                       {"y1", st.extra[2]},
                       {"y2", st.extra[3]},
                       {"Omega", cont.configs[i].Omega()}});
    }
    rep["continuation"] = {{"steps", steps},
                           {"distance_slope", cont.slope},
                           {"all_converged", cont.all_converged}};
    ok = cont.all_converged;
  } else {
    const double r0 = cfg.at("r0").get<double>();
    const double r1 = cfg.value("r1", r0 * r0 / 4.0);
    const double r2 = cfg.value("r2", r0 * r0 / 4.0);
    MultiConfig c = make_multi_config(Q, mu, r0, r1, r2, N, cd);
    auto res = solve_multi(c, mopts, tol);
    rep["report"] = report_to_json(res.report);
    rep["Omega"] = res.config.Omega();
    rep["Y"] = res.config.Y;
    rep["t0"] = res.config.t0;
    rep["cd"] = res.config.cd;
    rep["distances"] = res.distances;
    rep["centers"] = {res.config.center_abscissa(1), res.config.center_abscissa(2)};
    rep["central_coeffs"] = boundary_to_json(res.config.beta0);
    rep["satellite_coeffs"] = {res.config.beta1.coeffs, res.config.beta2.coeffs};
    if (!out_dir.empty()) {
      MultiConfig& cc = res.config;
      FourierBoundary b0 = renormalize_scale(cc.beta0);
      auto c0 = eval_outer_map(b0, mopts.m0);
      if (cc.t0 != 0.0)
        for (auto& p : c0.points) p += cc.t0;
      write_boundary_csv(out_dir + "/boundary_central.csv", c0);
      for (int j = 1; j <= 2; ++j) {
        NearDiskDomain d = (j == 1) ? cc.beta1 : cc.beta2;
        d.center = cplx(cc.center_abscissa(j), 0.0);
        write_boundary_csv(out_dir + "/boundary_sat" + std::to_string(j) + ".csv",
                           eval_near_disk_map(renormalize_scale(d), mopts.ms));
      }
    }
    ok = res.report.converged;
  }
  rep["timing_seconds"] = timer.seconds();
  emit(rep, out_dir.empty() ? "" : out_dir + "/report.json");
  return ok ? 0 : 1;
}

int cmd_spectrum(double Q, int N, double eps, int m, const std::string& out_path) {
  Timer timer;
  FourierBoundary b;
  b.Q = Q;
  b.eps = eps;
  b.coeffs.assign(N - 1, 0.0);
  ResidualOptions ropts;
  ropts.m = m;
  const Eigen::MatrixXd num = jacobian_numeric(b, ropts);
  const Eigen::MatrixXd ana = linearization_analytic(Q, N).matrix;
  const double diff = (num - ana).cwiseAbs().maxCoeff();

  auto to_rows = [](const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
      rows.push_back(row);
    }
    return rows;
  };

  json rep;
  rep["schema"] = 1;
  rep["command"] = "spectrum";
  rep["Q"] = Q;
  rep["N"] = N;
  rep["eps"] = eps;
  rep["m"] = m;
  rep["analytic"] = to_rows(ana);
  rep["numeric"] = to_rows(num);
  rep["max_abs_diff"] = diff;
  rep["invertibility_margin"] = invertibility_margin(Q, std::max(N, 64));
  rep["timing_seconds"] = timer.seconds();
  emit(rep, out_path);
  return 0;
}

int cmd_evolve(const std::string& in_path, double strength, double omega, double T,
               double dt, const std::string& out_dir, int frame_every) {
  Timer timer;
  SampledCurve c0 = read_boundary_csv(in_path);
  PatchState st;
  st.patches.push_back(PatchSource{c0, strength, true});

  EvolveOptions eopts;
  eopts.omega_hint = omega;
  EvolutionLog log;
  if (!out_dir.empty()) fs::create_directories(out_dir);

  const int total_steps = static_cast<int>(std::llround(T / dt));
  PatchState cur = st;
  int frame = 0;
  if (!out_dir.empty()) {
    char name[64];
    std::snprintf(name, sizeof(name), "/frame_%04d.csv", frame++);
    write_boundary_csv(out_dir + name, cur.patches[0].curve);
  }
  const int chunk = std::max(1, frame_every);
  int done = 0;
  while (done < total_steps && !log.collision_halt) {
    const int nsteps = std::min(chunk, total_steps - done);
    EvolutionLog part;
    cur = evolve(cur, dt, nsteps * dt, &part, eopts);
    log.cfl_warning = log.cfl_warning || part.cfl_warning;
    log.collision_halt = part.collision_halt;
    log.steps_taken += part.steps_taken;
    for (const auto& r : part.rows) log.rows.push_back(r);
    done += nsteps;
    if (!out_dir.empty()) {
      char name[64];
      std::snprintf(name, sizeof(name), "/frame_%04d.csv", frame++);
      write_boundary_csv(out_dir + name, cur.patches[0].curve);
    }
  }

  json rep;
  rep["schema"] = 1;
  rep["command"] = "evolve";
  rep["params"] = {{"in", in_path}, {"strength", strength}, {"omega", omega},
                   {"T", T},        {"dt", dt}};
  rep["steps"] = log.steps_taken;
  rep["cfl_warning"] = log.cfl_warning;
  rep["collision_halt"] = log.collision_halt;
  double drift = 0.0, gap = std::numeric_limits<double>::infinity();
  for (const auto& r : log.rows) {
    drift = std::max(drift, r.area_drift_rel);
    gap = std::min(gap, r.min_gap);
  }
  rep["area_drift_max"] = drift;
  rep["final_perimeter"] = curve_perimeter(cur.patches[0].curve);
  if (omega != 0.0)
    rep["rigid_rotation_error"] =
        rigid_rotation_error(c0, cur.patches[0].curve, omega, cur.time);
  rep["timing_seconds"] = timer.seconds();
  emit(rep, out_dir.empty() ? "" : out_dir + "/summary.json");
  return log.collision_halt ? 1 : 0;
}

int cmd_check(const std::string& out_path, unsigned seed) {
  Timer timer;
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, double value, double tol) {
    const bool pass = value < tol;
    all = all && pass;
    checks.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"pass", pass}});
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(-0.95, 0.95);
  auto rand_pt = [&] {
    cplx z;
    do {
      z = cplx(ur(rng), ur(rng));
    } while (std::abs(z) >= 0.95);
    return z;
  };

  // Green symmetry and boundary vanishing
  double asym = 0.0;
  for (int i = 0; i < 200; ++i) {
    const cplx x = rand_pt(), y = rand_pt();
    if (std::abs(x - y) < 1e-3) continue;
    asym = std::max(asym, std::abs(green_disk(x, y) - green_disk(y, x)));
  }
  record("green_symmetry", asym, 1e-12);
  double bnd = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cplx x = std::polar(1.0 - 1e-12, 2.0 * pi * i / 50.0);
    bnd = std::max(bnd, std::abs(green_disk(x, 0.3 * rand_pt())));
  }
  record("green_boundary_vanishing", bnd, 5e-12);

  // Robin diagonal identity
  double robin = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cplx x = rand_pt();
    robin = std::max(robin, std::abs(robin_regular_part(x, x) -
                                     std::log(1.0 - std::norm(x)) / (2.0 * pi)));
  }
  record("robin_diagonal", robin, 1e-14);

  // off-center patch: wall tangency and circulation recovery
  {
    NearDiskDomain d;
    d.center = cplx(0.3, 0.2);
    d.r = 0.15;
    d = renormalize_scale(d);
    PatchSource src{eval_near_disk_map(d, 256), 1.0, true};
    record("tangency_offcenter", tangency_check(src, 256), 1e-8);
    const double circ = circulation(src, 1.0 - 1e-6, 512);
    record("circulation_recovery", std::abs(circ - pi * d.r * d.r), 1e-8);
  }

  // Rankine edge speed and Kirchhoff rotating-frame residual
  {
    FourierBoundary b;
    b.Q = 0.0;
    b.eps = 0.1;
    b.coeffs.assign(7, 0.0);
    b = renormalize_scale(b);
    PatchSource src{eval_outer_map(b, 64), 1.0, true};
    const auto ub = self_velocity_conj(src);
    double worst = 0.0;
    for (int k = 0; k < src.curve.m; ++k)
      worst = std::max(worst, std::abs(std::conj(ub[k]) - 0.5 * iu * src.curve.points[k]));
    record("rankine_edge_speed", worst, 1e-12);
  }
  {
    FourierBoundary b;
    b.Q = 0.3;
    b.eps = 1.0;
    b.coeffs.assign(7, 0.0);
    b.A = 1.0;
    PatchSource src{eval_outer_map(b, 256), 1.0, false};
    const auto ub = self_velocity_conj(src);
    const double OmK = (1.0 - b.Q * b.Q) / 4.0;
    double worst = 0.0;
    for (int k = 0; k < src.curve.m; ++k) {
      const cplx urel_bar = ub[k] + iu * OmK * std::conj(src.curve.points[k]);
      worst = std::max(worst, std::abs(std::real(urel_bar * src.curve.normals[k])));
    }
    record("kirchhoff_normal_residual", worst, 1e-10);
  }

  // area normalization
  {
    FourierBoundary b;
    b.Q = 0.3;
    b.eps = 0.1;
    b.coeffs.assign(7, 0.0);
    b.coeffs[0] = 0.01;
    b = renormalize_scale(b);
    const double area = enclosed_area(eval_outer_map(b, 256));
    const double target = pi * b.eps * b.eps * (1.0 - b.Q * b.Q);
    record("area_normalization", std::abs(area - target) / target, 1e-12);
  }

  json rep;
  rep["schema"] = 1;
  rep["command"] = "check";
  rep["seed"] = seed;
  rep["checks"] = checks;
  rep["all_pass"] = all;
  rep["timing_seconds"] = timer.seconds();
  emit(rep, out_path);
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& argv) {
  CLI::App app{"rotating vortex-patch equilibria in the unit disk"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = auto/ROTPATCH_THREADS)");

  // solve-single
  auto* ss = app.add_subcommand("solve-single", "Newton solve of the single rotating patch");
  double ss_Q = 0.3, ss_eps = 0.01, ss_tol = 1e-11;
  int ss_N = 32, ss_m = 256;
  std::string ss_out, ss_schedule;
  ss->add_option("--Q", ss_Q, "ellipse aspect parameter, 0 < Q < 1/2")->required();
  ss->add_option("--eps", ss_eps, "concentration scale");
  ss->add_option("--N", ss_N, "truncation order");
  ss->add_option("--m", ss_m, "quadrature nodes");
  ss->add_option("--tol", ss_tol, "weighted residual tolerance");
  ss->add_option("--out", ss_out, "output directory");
  ss->add_option("--schedule", ss_schedule, "comma-separated eps list (continuation)");

  // solve-multi
  auto* sm = app.add_subcommand("solve-multi", "Newton solve of the 2+1 configuration");
  std::string sm_config, sm_out, sm_cd;
  sm->add_option("--config", sm_config, "JSON config {Q, mu, r0, r1, r2, N, m, tol}")
      ->required();
  sm->add_option("--out", sm_out, "output directory");
  sm->add_option("--cd-variant", sm_cd, "center ansatz coefficient: twomu|twomupi|balance");

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "FD Jacobian vs analytic linearization");
  double sp_Q = 0.3, sp_eps = 1e-3;
  int sp_N = 16, sp_m = 256;
  std::string sp_out;
  sp->add_option("--Q", sp_Q)->required();
  sp->add_option("--N", sp_N);
  sp->add_option("--eps", sp_eps);
  sp->add_option("--m", sp_m);
  sp->add_option("--out", sp_out, "output JSON path");

  // evolve
  auto* ev = app.add_subcommand("evolve", "contour-dynamics time integration");
  std::string ev_in, ev_out;
  double ev_strength = 1.0, ev_omega = 0.0, ev_T = 0.0, ev_dt = 0.0;
  int ev_frame_every = 8;
  ev->add_option("--in", ev_in, "boundary CSV")->required();
  ev->add_option("--strength", ev_strength, "vorticity amplitude");
  ev->add_option("--omega", ev_omega, "reference angular velocity");
  ev->add_option("--T", ev_T, "horizon")->required();
  ev->add_option("--dt", ev_dt, "time step")->required();
  ev->add_option("--out", ev_out, "frames directory");
  ev->add_option("--frame-every", ev_frame_every, "steps between frames");

  // check
  auto* ck = app.add_subcommand("check", "kernel/geometry invariant suite");
  std::string ck_out;
  unsigned ck_seed = 20240101;
  ck->add_option("--out", ck_out, "output JSON path");
  ck->add_option("--seed", ck_seed, "RNG seed for sampled checks");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help() << std::endl;
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help() << std::endl;
    return 2;
  }

  if (threads > 0) set_max_threads(threads);

  try {
    if (ss->parsed())
      return cmd_solve_single(ss_Q, ss_eps, ss_N, ss_m, ss_tol, ss_out, ss_schedule);
    if (sm->parsed()) return cmd_solve_multi(sm_config, sm_out, sm_cd);
    if (sp->parsed()) return cmd_spectrum(sp_Q, sp_N, sp_eps, sp_m, sp_out);
    if (ev->parsed())
      return cmd_evolve(ev_in, ev_strength, ev_omega, ev_T, ev_dt, ev_out, ev_frame_every);
    if (ck->parsed()) return cmd_check(ck_out, ck_seed);
  } catch (const std::exception& e) {
    json err;
    err["schema"] = 1;
    err["error"] = {{"type", "numerical_failure"}, {"message", e.what()}};
    std::cout << err.dump(2) << std::endl;
    return 1;
  }
  return 2;
}

}  // namespace rotpatch::cli
