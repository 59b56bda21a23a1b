#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfrec/core.hpp"
#include "pfrec/generators.hpp"
#include "pfrec/l1_recover.hpp"
#include "pfrec/tv_recover.hpp"

namespace pfrec {

enum class PhaseKind { p1_recovery, certificate_sufficiency };

struct RunConfig {
  std::uint64_t seed = 1;
  int parallelism = 1;
  Index n = 512;
  std::vector<Index> omega_sizes{16, 32, 64, 128};
  /// |T| / |omega|; each cell uses |T| = round(ratio * |omega|).
  std::vector<double> ratio_bins{1.0 / 16, 1.0 / 8, 3.0 / 16, 1.0 / 4, 5.0 / 16, 3.0 / 8, 7.0 / 16, 1.0 / 2};
  Index trials_per_cell = 100;
  SolveConfig solve{};
  TvConfig tv{};
  std::string out_dir = ".";

  void validate() const;
};

/// Success counts indexed [omega index][ratio index].
struct PhaseGrid {
  Index n = 0;
  std::vector<Index> omega_sizes;
  std::vector<double> ratio_bins;
  Index trials_per_cell = 0;
  std::vector<std::vector<Index>> success_counts;
  PhaseKind kind = PhaseKind::p1_recovery;

  Index support_size(std::size_t omega_idx, std::size_t ratio_idx) const;
  double rate(std::size_t omega_idx, std::size_t ratio_idx) const;
};

/// One trial: sparse signal (support, then values), then a uniform omega, all
/// from Rng(trial_seed). Returns whether the trial succeeded for `kind`.
bool run_trial(PhaseKind kind, Index n, Index omega_size, Index support_size, std::uint64_t trial_seed,
               const SolveConfig &solve);

/// Trial i of cell c (row-major over omega x ratio) uses seed hash64(cfg.seed, c, i).
/// Runs on cfg.parallelism worker threads; counts do not depend on it.
PhaseGrid run_phase_diagram(const RunConfig &cfg, PhaseKind kind);

struct PhantomRun {
  Image2D truth;
  Image2D min_energy;
  Image2D tv;
  double min_energy_error = 0.0;
  double tv_error = 0.0;
  TvResult details;
  StarMask mask;
};

/// Random phantoms draw from Rng(cfg.seed) with 10 ellipses.
PhantomRun run_phantom(const RunConfig &cfg, PhantomKind kind, Index side, Index line_count);

/// Linear interpolation of the first 50% crossing of a decreasing success curve.
/// Returns NaN when the curve never crosses.
double half_crossing(const std::vector<double> &x, const std::vector<double> &rate);

} // namespace pfrec
