#include "pfrec/bench.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "pfrec/certificate.hpp"
#include "pfrec/rng.hpp"
#include "pfrec/sampling.hpp"
#include "pfrec/spectral.hpp"

namespace pfrec {

void RunConfig::validate() const {
  if (parallelism < 1) throw InvalidArgument("RunConfig: parallelism must be at least 1");
  if (n < 1) throw InvalidArgument("RunConfig: n must be positive");
  if (trials_per_cell < 0) throw InvalidArgument("RunConfig: trials_per_cell must be non-negative");
  for (Index w : omega_sizes) {
    if (w < 1 || w > n) throw InvalidArgument("RunConfig: omega sizes must lie in [1, n]");
  }
  for (double r : ratio_bins) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("RunConfig: ratios must be finite and non-negative");
  }
  solve.validate();
}

Index PhaseGrid::support_size(std::size_t omega_idx, std::size_t ratio_idx) const {
  return static_cast<Index>(std::llround(ratio_bins[ratio_idx] * static_cast<double>(omega_sizes[omega_idx])));
}

double PhaseGrid::rate(std::size_t omega_idx, std::size_t ratio_idx) const {
  if (trials_per_cell == 0) return 0.0;
  return static_cast<double>(success_counts[omega_idx][ratio_idx]) / static_cast<double>(trials_per_cell);
}

bool run_trial(PhaseKind kind, Index n, Index omega_size, Index support_size, std::uint64_t trial_seed,
               const SolveConfig &solve) {
  Rng rng(trial_seed);
  const SparseSignal s = gen_sparse_signal(n, support_size, rng);
  const IndexSet omega = uniform_omega(n, omega_size, rng);
  if (kind == PhaseKind::p1_recovery) {
    const PartialFourierOp op(n, omega);
    return solve_p1(op, observe(op, s.signal), solve, s.signal).exact;
  }
  if (s.support.empty()) return true;
  return build_certificate_direct(s.support, omega, sign_pattern(s.signal)).valid();
}

PhaseGrid run_phase_diagram(const RunConfig &cfg, PhaseKind kind) {
  cfg.validate();
  PhaseGrid grid;
  grid.n = cfg.n;
  grid.omega_sizes = cfg.omega_sizes;
  grid.ratio_bins = cfg.ratio_bins;
  grid.trials_per_cell = cfg.trials_per_cell;
  grid.kind = kind;
  const std::size_t n_omega = cfg.omega_sizes.size();
  const std::size_t n_ratio = cfg.ratio_bins.size();
  grid.success_counts.assign(n_omega, std::vector<Index>(n_ratio, 0));
  for (std::size_t i = 0; i < n_omega; ++i) {
    for (std::size_t j = 0; j < n_ratio; ++j) {
      if (grid.support_size(i, j) > cfg.n) throw InvalidArgument("run_phase_diagram: |T| exceeds n in some cell");
    }
  }

  const auto trials = static_cast<std::size_t>(cfg.trials_per_cell);
  const std::size_t total = n_omega * n_ratio * trials;
  std::vector<unsigned char> outcome(total, 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const std::size_t cell = job / trials;
      const std::size_t trial = job % trials;
      const std::size_t oi = cell / n_ratio;
      const std::size_t ri = cell % n_ratio;
      try {
        outcome[job] = run_trial(kind, cfg.n, cfg.omega_sizes[oi], grid.support_size(oi, ri),
                                 hash64(cfg.seed, cell, trial), cfg.solve)
                           ? 1
                           : 0;
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  const int workers = std::max(1, std::min<int>(cfg.parallelism, static_cast<int>(std::max<std::size_t>(total, 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t job = 0; job < total; ++job) {
    const std::size_t cell = job / trials;
    grid.success_counts[cell / n_ratio][cell % n_ratio] += outcome[job];
  }
  return grid;
}

PhantomRun run_phantom(const RunConfig &cfg, PhantomKind kind, Index side, Index line_count) {
  Rng rng(cfg.seed);
  PhantomRun run;
  run.truth = gen_phantom(kind, side, 10, rng);
  run.mask = star_mask(side, line_count);
  const CVector data = observe_2d(run.mask.indices, run.truth);
  run.min_energy = min_energy_image(side, run.mask.indices, data);
  TvConfig tv = cfg.tv;
  tv.real_valued = true;
  run.details = solve_tv_2d(run.mask, data, tv);
  run.tv = run.details.image;
  run.min_energy_error = relative_l2_error(run.min_energy, run.truth);
  run.tv_error = relative_l2_error(run.tv, run.truth);
  return run;
}

double half_crossing(const std::vector<double> &x, const std::vector<double> &rate) {
  if (x.size() != rate.size()) throw InvalidArgument("half_crossing: x and rate differ in length");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (rate[i] >= 0.5 && rate[i + 1] < 0.5) {
      const double w = (rate[i] - 0.5) / (rate[i] - rate[i + 1]);
      return x[i] + w * (x[i + 1] - x[i]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

} // namespace pfrec
