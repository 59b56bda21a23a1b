#pragma once

#include "pfrec/core.hpp"
#include "pfrec/l1_recover.hpp"
#include "pfrec/sampling.hpp"

namespace pfrec {

struct TvConfig : SolveConfig {
  /// Smoothing floor for the 2D gradient magnitude.
  double tv_eps = 1e-8;
  /// Keep iterates real. Valid when the mask is closed under negation.
  bool real_valued = false;

  TvConfig() {
    smoothing_eps_start = 1e-2;
    stage_grad_tol = 1e-3;
    final_grad_tol = 1e-7;
  }
  void validate() const;
};

/// Sum over pixels of sqrt(|D1 g|^2 + |D2 g|^2), periodic backward differences
/// D1 g = g(t1, t2) - g(t1 - 1, t2) and D2 g = g(t1, t2) - g(t1, t2 - 1).
double tv_norm_2d(const Image2D &img);

/// Smoothed variant with sqrt(|D1 g|^2 + |D2 g|^2 + eps^2).
double smoothed_tv_2d(const Image2D &img, double eps);

/// delta-hat on omega given ghat on omega, delta(t) = g(t) - g(t - 1):
/// deltahat(w) = (1 - exp(-2 pi i w / n)) ghat(w), zero at w = 0.
CVector tv_delta_data(const IndexSet &omega, const CVector &data);

/// g(t) = g(t - 1) + delta(t) with the constant fixed by sum g = dc_value.
Signal1D integrate_increments(const Signal1D &delta, std::complex<double> dc_value);

/// 1D total-variation recovery by reduction to l1 on the increments.
/// Throws MissingDc when 0 is not in omega.
Signal1D solve_tv_1d(const IndexSet &omega, const CVector &data, std::complex<double> dc_value,
                     const SolveConfig &cfg = {});

struct TvResult {
  Image2D image;
  Index iterations_used = 0;
  bool objective_monotone = true;
  /// max |ghat(w) - data| over the mask, relative to max(1, max |data|).
  double feasibility_residual = 0.0;
};

/// Minimum-energy image: data on the mask, zeros elsewhere, inverted.
Image2D min_energy_image(Index side, const IndexSet &mask, const CVector &data);

/// Observed 2D coefficients on a row-major mask over side x side.
CVector observe_2d(const IndexSet &mask, const Image2D &img);

/// Projected gradient on the smoothed TV norm, two 2D FFTs per iteration.
/// Throws InvalidArgument on an empty mask or mismatched sizes.
TvResult solve_tv_2d(Index side, const IndexSet &mask, const CVector &data, const TvConfig &cfg = {});
TvResult solve_tv_2d(const StarMask &mask, const CVector &data, const TvConfig &cfg = {});

} // namespace pfrec
