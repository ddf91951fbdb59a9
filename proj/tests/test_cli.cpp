#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rotpatch/cli.hpp"
#include "rotpatch/io.hpp"

using namespace rotpatch;
namespace fs = std::filesystem;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

struct TempDir {
  fs::path path;
  TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(cli::run({}) == 2);
  CHECK(cli::run({"no-such-command"}) == 2);
}

TEST_CASE("spectrum subcommand emits the Jacobian comparison") {
  TempDir dir("rotpatch_cli_spectrum");
  const std::string out = dir.str() + "/spectrum.json";
  CHECK(cli::run({"spectrum", "--Q", "0.3", "--N", "16", "--out", out}) == 0);
  const json rep = load_json(out);
  CHECK(rep.at("schema") == 1);
  CHECK(rep.at("max_abs_diff").get<double>() < 1e-5);
  CHECK(rep.at("analytic").size() == 15);
  CHECK(rep.at("numeric").size() == 15);
}

TEST_CASE("solve-single writes a converged report and a valid boundary") {
  TempDir dir("rotpatch_cli_single");
  CHECK(cli::run({"solve-single", "--Q", "0.3", "--eps", "0.01", "--N", "12", "--m",
                  "128", "--out", dir.str()}) == 0);
  const json rep = load_json(dir.str() + "/report.json");
  CHECK(rep.at("report").at("converged").get<bool>());
  CHECK(rep.at("report").at("final_residual").get<double>() < 1e-11);
  CHECK(rep.contains("A_closed_form"));

  const auto curve = read_boundary_csv(dir.str() + "/boundary.csv");
  const double area = enclosed_area(curve);
  const double target = pi * 0.01 * 0.01 * 0.91;
  CHECK(std::abs(area - target) / target < 1e-9);
}

TEST_CASE("identical inputs give bit-identical reports apart from timing") {
  TempDir dir("rotpatch_cli_determinism");
  const std::string a = dir.str() + "/a.json", b = dir.str() + "/b.json";
  CHECK(cli::run({"spectrum", "--Q", "0.25", "--N", "10", "--out", a}) == 0);
  CHECK(cli::run({"spectrum", "--Q", "0.25", "--N", "10", "--out", b}) == 0);
  json ja = load_json(a), jb = load_json(b);
  ja.erase("timing_seconds");
  jb.erase("timing_seconds");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("check subcommand passes its invariant suite") {
  TempDir dir("rotpatch_cli_check");
  const std::string out = dir.str() + "/check.json";
  CHECK(cli::run({"check", "--out", out}) == 0);
  const json rep = load_json(out);
  CHECK(rep.at("all_pass").get<bool>());
}

TEST_CASE("evolve subcommand round-trips a solved boundary") {
  TempDir dir("rotpatch_cli_evolve");
  CHECK(cli::run({"solve-single", "--Q", "0.3", "--eps", "0.05", "--N", "12", "--m",
                  "128", "--out", dir.str()}) == 0);
  const double eps = 0.05, Q = 0.3;
  const double Om = (1.0 - Q * Q) / (4.0 * pi * eps * eps);
  const double lam = 1.0 / (pi * eps * eps);
  const double T = 0.1 / Om;
  char omega[32], strength[32], Ts[32], dts[32];
  std::snprintf(omega, sizeof(omega), "%.17g", Om);
  std::snprintf(strength, sizeof(strength), "%.17g", lam);
  std::snprintf(Ts, sizeof(Ts), "%.17g", T);
  std::snprintf(dts, sizeof(dts), "%.17g", T / 20.0);
  CHECK(cli::run({"evolve", "--in", dir.str() + "/boundary.csv", "--strength", strength,
                  "--omega", omega, "--T", Ts, "--dt", dts, "--out",
                  dir.str() + "/frames"}) == 0);
  const json rep = load_json(dir.str() + "/frames/summary.json");
  CHECK(rep.at("rigid_rotation_error").get<double>() < 1e-6);
  CHECK(rep.at("area_drift_max").get<double>() < 1e-9);
  CHECK(fs::exists(dir.str() + "/frames/frame_0000.csv"));
}

TEST_CASE("solve-multi runs from a config file") {
  TempDir dir("rotpatch_cli_multi");
  const std::string cfg_path = dir.str() + "/config.json";
  {
    json cfg;
    cfg["Q"] = 0.3;
    cfg["mu"] = 1.0;
    cfg["r0"] = 0.05;
    cfg["r1"] = 0.000625;
    cfg["r2"] = 0.000625;
    cfg["N"] = 8;
    cfg["m"] = 128;
    cfg["ms"] = 64;
    cfg["tol"] = 1e-9;
    std::ofstream(cfg_path) << cfg.dump(2);
  }
  CHECK(cli::run({"solve-multi", "--config", cfg_path, "--out", dir.str()}) == 0);
  const json rep = load_json(dir.str() + "/report.json");
  CHECK(rep.at("report").at("converged").get<bool>());
  CHECK(rep.at("Y").size() == 2);
  CHECK(fs::exists(dir.str() + "/boundary_central.csv"));
  CHECK(fs::exists(dir.str() + "/boundary_sat1.csv"));
  CHECK(fs::exists(dir.str() + "/boundary_sat2.csv"));
}
