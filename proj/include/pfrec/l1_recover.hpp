#pragma once

#include <optional>

#include "pfrec/core.hpp"
#include "pfrec/spectral.hpp"

namespace pfrec {

struct SolveConfig {
  Index max_iters = 200000;
  /// Initial trial step; 0 means 0.2 / N. Later steps adapt by backtracking.
  double step_size = 0.0;
  double smoothing_eps_start = 1e-1;
  double smoothing_eps_end = 1e-8;
  double success_tol = 1e-4;
  Index eps_stages = 20;
  /// A stage ends once the projected gradient norm drops below this.
  double stage_grad_tol = 1e-2;
  /// Tighter projected gradient target for the last stage.
  double final_grad_tol = 1e-6;
  /// Stop after this many consecutive iterations with relative change below 1e-12.
  Index stall_window = 1000;
  /// Reproject onto the data every this many iterations.
  Index reproject_every = 100;
  /// Refit by least squares on the entries above kPolishRelThreshold * max|g|;
  /// the refit replaces g only when feasible and lower in l1.
  bool polish_support = true;

  void validate() const;
};

inline constexpr double kPolishRelThreshold = 1e-4;
inline constexpr double kPolishFeasTol = 1e-11;

struct RecoveryResult {
  Signal1D reconstruction;
  Index iterations_used = 0;
  /// Relative l2 error against the ground truth, NaN when none was given.
  double rel_l2_error = 0.0;
  bool exact = false;
  /// Every accepted step lowered the smoothed objective.
  bool objective_monotone = true;
  /// max |ghat(w) - data| over omega, relative to max(1, max |data|).
  double feasibility_residual = 0.0;
};

/// Smoothed l1 norm sum_t sqrt(|g(t)|^2 + eps^2).
double smoothed_l1(const Signal1D &g, double eps);

/// Minimizes ||g||_1 subject to ghat|omega = data. Projected gradient descent
/// on the smoothed l1 norm with geometric eps continuation, started from the
/// minimum-energy solution. Throws InvalidArgument on empty omega, length
/// mismatch or non-finite data.
RecoveryResult solve_p1(const PartialFourierOp &op, const CVector &data, const SolveConfig &cfg = {},
                        const std::optional<Signal1D> &truth = std::nullopt);

struct P0Result {
  Signal1D solution;
  /// -1 when nothing of size <= max_support fits the data.
  Index sparsity = -1;
  bool unique = false;
};

inline constexpr Index kP0MaxN = 24;
inline constexpr double kP0ResidualTol = 1e-8;

/// Exhaustive l0 minimization: supports enumerated by increasing size, each
/// fitted by least squares. Throws UnsupportedSize for n > 24.
P0Result solve_p0(const PartialFourierOp &op, const CVector &data, Index max_support);

/// Least squares on a known support via the normal equations. Throws
/// IllConditioned when the restricted matrix is not injective.
Signal1D least_squares_known_support(const IndexSet &t_set, const IndexSet &omega, const CVector &data);

} // namespace pfrec
