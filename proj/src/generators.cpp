#include "pfrec/generators.hpp"

#include <cmath>
#include <numbers>

namespace pfrec {

SparseSignal gen_sparse_signal(Index n, Index support_size, Rng &rng) {
  if (n <= 0) throw InvalidArgument("gen_sparse_signal: n must be positive");
  if (support_size < 0 || support_size > n) {
    throw InvalidArgument("gen_sparse_signal: support_size must lie in [0, n]");
  }
  IndexSet support(n, rng.sample_without_replacement(n, support_size));
  Signal1D f = Signal1D::Zero(n);
  for (Index t : support) f(t) = rng.complex_normal();
  return {std::move(f), std::move(support)};
}

Index exact_sqrt(Index n) {
  if (n < 0) return -1;
  auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

Signal1D gen_dirac_comb(Index n) {
  const Index r = exact_sqrt(n);
  if (n <= 0 || r < 0) throw InvalidArgument("gen_dirac_comb: n must be a positive perfect square");
  Signal1D f = Signal1D::Zero(n);
  for (Index t = 0; t < n; t += r) f(t) = 1.0;
  return f;
}

std::vector<Ellipse> logan_shepp_ellipses() {
  constexpr double deg = std::numbers::pi / 180.0;
  return {
      {0.0, 0.0, 0.69, 0.92, 0.0, 2.0},
      {0.0, -0.0184, 0.6624, 0.874, 0.0, -0.98},
      {0.22, 0.0, 0.11, 0.31, -18.0 * deg, -0.02},
      {-0.22, 0.0, 0.16, 0.41, 18.0 * deg, -0.02},
      {0.0, 0.35, 0.21, 0.25, 0.0, 0.01},
      {0.0, 0.1, 0.046, 0.046, 0.0, 0.01},
      {0.0, -0.1, 0.046, 0.046, 0.0, 0.01},
      {-0.08, -0.605, 0.046, 0.023, 0.0, 0.01},
      {0.0, -0.605, 0.023, 0.023, 0.0, 0.01},
      {0.06, -0.605, 0.023, 0.046, 0.0, 0.01},
  };
}

std::vector<Ellipse> random_ellipses(Index count, Rng &rng, const EllipseRanges &r) {
  std::vector<Ellipse> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    Ellipse e{};
    e.x0 = rng.uniform(r.center_lo, r.center_hi);
    e.y0 = rng.uniform(r.center_lo, r.center_hi);
    e.a = rng.uniform(r.axis_lo, r.axis_hi);
    e.b = rng.uniform(r.axis_lo, r.axis_hi);
    e.theta = rng.uniform(r.angle_lo, r.angle_hi);
    e.amplitude = rng.uniform(r.amplitude_lo, r.amplitude_hi);
    out.push_back(e);
  }
  return out;
}

Image2D rasterize_ellipses(Index side, const std::vector<Ellipse> &ellipses) {
  Image2D img = Image2D::Zero(side, side);
  const double s = static_cast<double>(side);
  for (const Ellipse &e : ellipses) {
    const double c = std::cos(e.theta);
    const double sn = std::sin(e.theta);
    for (Index i = 0; i < side; ++i) {
      const double y = (s - 1.0 - 2.0 * static_cast<double>(i)) / s - e.y0;
      for (Index j = 0; j < side; ++j) {
        const double x = (2.0 * static_cast<double>(j) + 1.0 - s) / s - e.x0;
        const double u = (x * c + y * sn) / e.a;
        const double v = (-x * sn + y * c) / e.b;
        if (u * u + v * v <= 1.0) img(i, j) += e.amplitude;
      }
    }
  }
  return img;
}

Image2D gen_phantom(PhantomKind kind, Index side, Index ellipse_count, Rng &rng,
                    const EllipseRanges &ranges) {
  if (side < 8) throw InvalidArgument("gen_phantom: side must be at least 8");
  if (kind == PhantomKind::logan_shepp) return rasterize_ellipses(side, logan_shepp_ellipses());
  if (ellipse_count < 1) throw InvalidArgument("gen_phantom: ellipse_count must be at least 1");
  return rasterize_ellipses(side, random_ellipses(ellipse_count, rng, ranges));
}

} // namespace pfrec
