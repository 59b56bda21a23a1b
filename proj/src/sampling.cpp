#include "pfrec/sampling.hpp"

#include <cmath>
#include <numbers>

namespace pfrec {

IndexSet bernoulli_omega(Index n, double tau, Rng &rng) {
  if (n <= 0) throw InvalidArgument("bernoulli_omega: n must be positive");
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("bernoulli_omega: tau must lie in (0, 1)");
  std::vector<Index> idx;
  for (Index k = 0; k < n; ++k) {
    if (rng.uniform01() < tau) idx.push_back(k);
  }
  return IndexSet(n, std::move(idx));
}

IndexSet uniform_omega(Index n, Index size, Rng &rng) {
  if (n <= 0) throw InvalidArgument("uniform_omega: n must be positive");
  if (size < 0 || size > n) throw InvalidArgument("uniform_omega: size must lie in [0, n]");
  return IndexSet(n, rng.sample_without_replacement(n, size));
}

StarMask star_mask(Index side, Index line_count) {
  if (side < 8) throw InvalidArgument("star_mask: side must be at least 8");
  if (line_count < 1) throw InvalidArgument("star_mask: line_count must be at least 1");
  const auto wrap = [side](double v) {
    auto k = static_cast<Index>(std::round(v)) % side;
    return k < 0 ? k + side : k;
  };
  std::vector<Index> idx{0};
  const double half = (static_cast<double>(side) - 1.0) / 2.0;
  for (Index j = 0; j < line_count; ++j) {
    const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(line_count);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (Index step = 0; step < side; ++step) {
      const double r = static_cast<double>(step) - half;
      const Index k2 = wrap(r * c);
      const Index k1 = wrap(r * s);
      idx.push_back(k1 * side + k2);
    }
  }
  return {side, line_count, IndexSet::from_unsorted(side * side, std::move(idx))};
}

Image2D mask_image(const StarMask &mask) {
  Image2D img = Image2D::Zero(mask.side, mask.side);
  for (Index k : mask.indices) img(k / mask.side, k % mask.side) = 1.0;
  return img;
}

} // namespace pfrec
