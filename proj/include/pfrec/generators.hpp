#pragma once

#include <vector>

#include "pfrec/core.hpp"
#include "pfrec/rng.hpp"

namespace pfrec {

struct SparseSignal {
  Signal1D signal;
  IndexSet support;
};

/// Support drawn without replacement; complex standard normal values on it.
SparseSignal gen_sparse_signal(Index n, Index support_size, Rng &rng);

/// Unit spikes at multiples of sqrt(n). n must be a perfect square.
Signal1D gen_dirac_comb(Index n);

/// Integer square root when n is a perfect square, otherwise -1.
Index exact_sqrt(Index n);

enum class PhantomKind { logan_shepp, random_ellipses };

/// Ellipse in unit coordinates [-1, 1]^2 (x to the right, y up).
struct Ellipse {
  double x0, y0;      // center
  double a, b;        // semi-axes along the rotated x and y directions
  double theta;       // counter-clockwise rotation, radians
  double amplitude;   // added to every covered pixel
};

/// Uniform ranges for random phantoms.
struct EllipseRanges {
  double center_lo = -0.8, center_hi = 0.8;
  double axis_lo = 0.05, axis_hi = 0.5;
  double angle_lo = 0.0, angle_hi = 3.14159265358979323846;
  double amplitude_lo = -1.0, amplitude_hi = 1.0;
};

/// The standard 10-ellipse head phantom parameters.
std::vector<Ellipse> logan_shepp_ellipses();

/// Draws x0, y0, a, b, theta, amplitude in that order for each ellipse.
std::vector<Ellipse> random_ellipses(Index count, Rng &rng, const EllipseRanges &ranges = {});

/// Sums ellipse amplitudes over pixels whose centers lie inside.
/// Column j maps to x = (2j + 1 - side) / side, row i to y = (side - 1 - 2i) / side.
Image2D rasterize_ellipses(Index side, const std::vector<Ellipse> &ellipses);

Image2D gen_phantom(PhantomKind kind, Index side, Index ellipse_count, Rng &rng,
                    const EllipseRanges &ranges = {});

} // namespace pfrec
