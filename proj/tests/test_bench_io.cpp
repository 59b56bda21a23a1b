#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pfrec/bench.hpp"
#include "pfrec/io.hpp"

using namespace pfrec;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
  const auto dir = fs::temp_directory_path() / ("pfrec_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string &args) {
  const std::string cmd = std::string(PFREC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

PhaseGrid one_cell(Index successes) {
  PhaseGrid g;
  g.n = 512;
  g.omega_sizes = {64};
  g.ratio_bins = {0.125};
  g.trials_per_cell = 100;
  g.success_counts = {{successes}};
  return g;
}

} // namespace

TEST_CASE("CSV format") {
  CHECK(csv_string(one_cell(93)) == "omega_size,ratio,trials,successes,rate\n64,0.125,100,93,0.930000\n");
  PhaseGrid empty;
  CHECK(csv_string(empty) == "omega_size,ratio,trials,successes,rate\n");
  CHECK(format_ratio(1.0 / 3.0) == "0.333333");
  CHECK(format_ratio(0.5) == "0.5");
  CHECK(format_ratio(0.0625) == "0.0625");
  CHECK(format_rate(1.0) == "1.000000");

  const auto dir = scratch_dir("csv");
  write_csv(one_cell(7), (dir / "a.csv").string());
  CHECK(slurp(dir / "a.csv") == csv_string(one_cell(7)));
  CHECK_THROWS_AS(write_csv(one_cell(7), (dir / "missing" / "a.csv").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("PGM encoding") {
  const auto bytes = pgm_bytes(Image2D::Constant(4, 3, 2.5));
  const std::string header = "P5\n3 4\n255\n";
  REQUIRE(bytes.size() == header.size() + 12);
  CHECK(bytes.substr(0, header.size()) == header);
  for (std::size_t i = header.size(); i < bytes.size(); ++i) CHECK(bytes[i] == bytes[header.size()]);

  Image2D ramp(2, 2);
  ramp << -1.0, 0.0, 0.5, 1.0;
  double lo = 0, hi = 0;
  const auto rb = pgm_bytes(ramp, &lo, &hi);
  CHECK(lo == -1.0);
  CHECK(hi == 1.0);
  const auto px = rb.substr(rb.size() - 4);
  CHECK(static_cast<unsigned char>(px[0]) == 0);
  CHECK(static_cast<unsigned char>(px[3]) == 255);
  CHECK(static_cast<unsigned char>(px[1]) == 128);

  const auto dir = scratch_dir("pgm");
  write_pgm(ramp, (dir / "r.pgm").string());
  CHECK(slurp(dir / "r.pgm") == rb);
  CHECK(fs::exists(dir / "r.pgm.txt"));
  fs::remove_all(dir);
}

TEST_CASE("half_crossing") {
  CHECK(half_crossing({1, 2, 3}, {1.0, 0.6, 0.2}) == doctest::Approx(2.25));
  CHECK(half_crossing({1, 2}, {0.5, 0.1}) == doctest::Approx(1.0));
  CHECK(std::isnan(half_crossing({1, 2}, {0.9, 0.8})));
}

TEST_CASE("RunConfig validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.parallelism = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.ratio_bins = {-0.5};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("phase diagram at N=512, |Omega|=64") {
  RunConfig cfg;
  cfg.seed = 2024;
  cfg.parallelism = 2;
  cfg.omega_sizes = {64};
  cfg.ratio_bins = {1.0 / 8, 1.0 / 4};
  const auto grid = run_phase_diagram(cfg, PhaseKind::p1_recovery);
  REQUIRE(grid.support_size(0, 0) == 8);
  REQUIRE(grid.support_size(0, 1) == 16);
  MESSAGE("successes at |T|=8: " << grid.success_counts[0][0] << ", |T|=16: " << grid.success_counts[0][1]);
  CHECK(grid.success_counts[0][0] >= 90);
  CHECK(grid.success_counts[0][1] >= 50);

  cfg.ratio_bins = {0.1};
  const auto cert = run_phase_diagram(cfg, PhaseKind::certificate_sufficiency);
  REQUIRE(cert.support_size(0, 0) == 6);
  MESSAGE("certificate successes at |T|=6: " << cert.success_counts[0][0]);
  CHECK(cert.success_counts[0][0] >= 95);
}

TEST_CASE("phase diagram is independent of parallelism and monotone up to noise") {
  RunConfig cfg;
  cfg.seed = 77;
  cfg.n = 64;
  cfg.omega_sizes = {16};
  cfg.ratio_bins = {1.0 / 8, 1.0 / 4, 3.0 / 8, 1.0 / 2};
  cfg.trials_per_cell = 30;
  cfg.parallelism = 1;
  const auto a = run_phase_diagram(cfg, PhaseKind::p1_recovery);
  cfg.parallelism = 8;
  const auto b = run_phase_diagram(cfg, PhaseKind::p1_recovery);
  CHECK(csv_string(a) == csv_string(b));

  for (std::size_t o = 0; o < a.omega_sizes.size(); ++o) {
    for (std::size_t r = 1; r < a.ratio_bins.size(); ++r) {
      const double p = a.rate(o, r - 1);
      const double sigma = std::sqrt(std::max(p * (1 - p), 1.0 / 30) / 30.0);
      CAPTURE(o);
      CAPTURE(r);
      CHECK(a.rate(o, r) <= p + 3 * sigma);
    }
  }
  for (const auto &row : a.success_counts) {
    for (Index c : row) {
      CHECK(c >= 0);
      CHECK(c <= 30);
    }
  }
  // The certificate is sufficient, never necessary: it cannot beat l1 recovery.
  const auto c = run_phase_diagram(cfg, PhaseKind::certificate_sufficiency);
  for (std::size_t r = 0; r < c.ratio_bins.size(); ++r) CHECK(c.success_counts[0][r] <= a.success_counts[0][r]);
}

TEST_CASE("run_trial is a pure function of its seed") {
  for (std::uint64_t s : {1ULL, 99ULL, 12345ULL}) {
    CHECK(run_trial(PhaseKind::p1_recovery, 128, 24, 5, s, {}) == run_trial(PhaseKind::p1_recovery, 128, 24, 5, s, {}));
  }
}

TEST_CASE("run_phantom: Logan-Shepp, side 64, 22 lines" * doctest::should_fail()) {
  RunConfig cfg;
  const auto run = run_phantom(cfg, PhantomKind::logan_shepp, 64, 22);
  MESSAGE("tv error " << run.tv_error << ", min-energy error " << run.min_energy_error);
  CHECK(run.tv_error <= 1e-3);
  CHECK(run.min_energy_error >= 10 * run.tv_error);
}

TEST_CASE("run_phantom: random 10-ellipse phantom, side 64, 22 lines" * doctest::should_fail()) {
  RunConfig cfg;
  cfg.seed = 7;
  const auto run = run_phantom(cfg, PhantomKind::random_ellipses, 64, 22);
  MESSAGE("tv error " << run.tv_error << ", min-energy error " << run.min_energy_error);
  CHECK(run.tv_error <= 1e-2);
}

TEST_CASE("command-line interface") {
  const auto dir = scratch_dir("cli");
  CHECK(run_cli("params --M 1 --n 512 --tau 0.125") == 0);
  CHECK(run_cli("params --M 5 --n 64 --tau 0.05") == 2);
  CHECK(run_cli("params --M 1 --n 512") == 2);
  CHECK(run_cli("recover --n 128 --omega 32 --spikes 3 --seed 1 --trials 2") == 0);
  CHECK(run_cli("recover --n 128 --omega 200 --spikes 3 --seed 1") == 2);
  CHECK(run_cli("recover --n abc --omega 32 --spikes 3 --seed 1") == 2);
  CHECK(run_cli("certify --n 256 --omega 64 --spikes 4 --seed 3 --method neumann --terms 10") == 0);
  CHECK(run_cli("certify --n 256 --omega 64 --spikes 4 --seed 3 --method bogus") == 2);
  CHECK(run_cli("comb verify --max-n 8") == 0);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("phase-diagram --n 64 --omega-list 16 --ratios 1/8,1/4 --trials 3 --kind p1 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "phase_p1.csv"));
  CHECK(slurp(dir / "phase_p1.csv").rfind("omega_size,ratio,trials,successes,rate\n16,0.125,3,", 0) == 0);
  std::ofstream(dir / "plain_file") << "x";
  CHECK(run_cli("phase-diagram --n 64 --omega-list 16 --ratios 1/8 --trials 3 --kind p1 --out " +
                (dir / "plain_file" / "sub").string()) == 1);
  CHECK(run_cli("tv2d --phantom random --side 16 --lines 6 --seed 2 --out " + dir.string()) == 0);
  CHECK(run_cli("tv2d --phantom blob --side 16 --lines 6 --seed 2 --out " + dir.string()) == 2);
  fs::remove_all(dir);
}
