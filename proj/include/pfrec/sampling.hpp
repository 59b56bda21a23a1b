#pragma once

#include "pfrec/core.hpp"
#include "pfrec/rng.hpp"

namespace pfrec {

/// Each frequency kept independently with probability tau, 0 < tau < 1.
IndexSet bernoulli_omega(Index n, double tau, Rng &rng);

/// Exactly `size` distinct frequencies, uniformly at random.
IndexSet uniform_omega(Index n, Index size, Rng &rng);

/// Radial-line frequency mask on a side x side grid. Indices are row-major
/// (k1 * side + k2) in standard DFT ordering.
struct StarMask {
  Index side = 0;
  Index line_count = 0;
  IndexSet indices;
};

/// Line j has angle theta_j = j pi / line_count. Each line visits the radii
/// r = s - (side - 1) / 2 for s = 0 .. side - 1, i.e. side points symmetric
/// about the origin, at (x, y) = (r cos theta, r sin theta). Coordinates are
/// rounded half away from zero, x selects the column k2 and y the row k1, both
/// taken modulo side. Duplicates are dropped and DC is always present. Since
/// the radii are symmetric and rounding is odd, the mask is closed under
/// negation modulo side.
StarMask star_mask(Index side, Index line_count);

/// 0/1 image of the mask.
Image2D mask_image(const StarMask &mask);

} // namespace pfrec
