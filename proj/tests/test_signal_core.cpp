#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "pfrec/generators.hpp"
#include "pfrec/rng.hpp"

using namespace pfrec;

TEST_CASE("IndexSet validates and complements") {
  const IndexSet s(8, {1, 3, 6});
  CHECK(s.size() == 3);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
  CHECK(s.complement() == IndexSet(8, {0, 2, 4, 5, 7}));
  CHECK(IndexSet::from_unsorted(8, {6, 1, 3, 1}) == s);
  CHECK_THROWS_AS(IndexSet(8, {3, 1}), InvalidArgument);
  CHECK_THROWS_AS(IndexSet(8, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(IndexSet(8, {8}), InvalidArgument);
  CHECK_THROWS_AS(IndexSet(8, {-1}), InvalidArgument);
  CHECK(IndexSet::full(5).complement().empty());
}

TEST_CASE("Rng streams are reproducible") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    (void)c;
  }
  Rng d(42);
  std::mt19937_64 ref(42);
  CHECK(d.next_u64() == ref());
  CHECK(Rng(5).next_u64() != Rng(6).next_u64());
}

TEST_CASE("Rng variates have the documented ranges and moments") {
  Rng rng(1);
  double sum = 0, sumsq = 0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  CHECK(std::abs(sum / m) < 0.01);
  CHECK(std::abs(sumsq / m - 1.0) < 0.02);

  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[rng.below(7)];
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  CHECK_THROWS_AS(rng.below(0), InvalidArgument);

  const auto pick = rng.sample_without_replacement(20, 20);
  for (Index i = 0; i < 20; ++i) CHECK(pick[static_cast<std::size_t>(i)] == i);
  CHECK_THROWS_AS(rng.sample_without_replacement(3, 4), InvalidArgument);
}

TEST_CASE("hash64 separates cells and trials") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t c = 0; c < 50; ++c) {
    for (std::uint64_t t = 0; t < 50; ++t) seen.insert(hash64(9, c, t));
  }
  CHECK(seen.size() == 2500);
  CHECK(hash64(9, 1, 2) != hash64(9, 2, 1));
}

TEST_CASE("gen_sparse_signal") {
  SUBCASE("empty support") {
    Rng rng(3);
    const auto s = gen_sparse_signal(8, 0, rng);
    CHECK(s.signal.size() == 8);
    CHECK(s.signal.isZero(0.0));
    CHECK(s.support.empty());
  }
  SUBCASE("support size and consistency") {
    Rng rng(4);
    const auto s = gen_sparse_signal(512, 16, rng);
    CHECK(s.support.size() == 16);
    CHECK(support_of(s.signal) == s.support);
    CHECK(all_finite(s.signal));
  }
  SUBCASE("bit-identical for a fixed seed") {
    Rng r1(77), r2(77);
    const auto a = gen_sparse_signal(16, 3, r1);
    const auto b = gen_sparse_signal(16, 3, r2);
    CHECK(a.support == b.support);
    for (Index t = 0; t < 16; ++t) {
      CHECK(a.signal(t).real() == b.signal(t).real());
      CHECK(a.signal(t).imag() == b.signal(t).imag());
    }
  }
  SUBCASE("on-support values are unit-variance complex normals") {
    Rng rng(5);
    double re2 = 0, im2 = 0;
    int count = 0;
    for (int i = 0; i < 2000; ++i) {
      const auto s = gen_sparse_signal(64, 10, rng);
      for (Index t : s.support) {
        re2 += s.signal(t).real() * s.signal(t).real();
        im2 += s.signal(t).imag() * s.signal(t).imag();
        ++count;
      }
    }
    CHECK(std::abs(re2 / count - 1.0) < 0.05);
    CHECK(std::abs(im2 / count - 1.0) < 0.05);
  }
  SUBCASE("errors") {
    Rng rng(6);
    CHECK_THROWS_AS(gen_sparse_signal(4, 5, rng), InvalidArgument);
    CHECK_THROWS_AS(gen_sparse_signal(4, -1, rng), InvalidArgument);
  }
}

TEST_CASE("gen_dirac_comb") {
  const auto f = gen_dirac_comb(16);
  CHECK(support_of(f) == IndexSet(16, {0, 4, 8, 12}));
  for (Index t : {0, 4, 8, 12}) CHECK(f(t) == std::complex<double>(1.0, 0.0));

  // Oracle: direct summation of the transform.
  const auto fh = oracle::dft(f);
  for (Index k = 0; k < 16; ++k) {
    if (k % 4 == 0) {
      CHECK(std::abs(fh(k) - 4.0) < 1e-12);
    } else {
      CHECK(std::abs(fh(k)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(gen_dirac_comb(15), InvalidArgument);
  CHECK(exact_sqrt(15) == -1);
  CHECK(exact_sqrt(256) == 16);

  for (Index n : {4, 9, 25, 64, 100}) {
    const auto g = gen_dirac_comb(n);
    const auto gh = oracle::dft(g);
    const auto rt = exact_sqrt(n);
    CHECK(support_of(g).size() + support_of(gh, 1e-9).size() == 2 * rt);
  }
}

TEST_CASE("Logan-Shepp phantom") {
  Rng rng(0);
  const auto img = gen_phantom(PhantomKind::logan_shepp, 256, 10, rng);
  REQUIRE(img.rows() == 256);
  REQUIRE(img.cols() == 256);
  std::map<double, int> levels;
  double lo = 1e9, hi = -1e9;
  for (Index i = 0; i < img.size(); ++i) {
    CHECK(img.data()[i].imag() == 0.0);
    const double v = img.data()[i].real();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++levels[std::round(v * 1e9) / 1e9];
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 2.0 + 1e-12);
  // Piecewise constant: few distinct levels, and the two dominant ones (background
  // and brain tissue) cover most pixels.
  CHECK(levels.size() <= 12);
  std::vector<int> counts;
  for (auto &[v, c] : levels) counts.push_back(c);
  std::sort(counts.rbegin(), counts.rend());
  CHECK(counts[0] + counts[1] > 256 * 256 / 2);

  // The skull ring sits at 2.0 along the vertical axis near the top.
  CHECK(std::abs(img(14, 128).real() - 2.0) < 1e-12);
  CHECK(img(0, 0).real() == 0.0);
}

TEST_CASE("Random ellipse phantom") {
  Rng a(11), b(11);
  const auto p = gen_phantom(PhantomKind::random_ellipses, 64, 10, a);
  const auto q = gen_phantom(PhantomKind::random_ellipses, 64, 10, b);
  CHECK((p - q).norm() == 0.0);
  CHECK(p.norm() > 0.0);

  Rng c(12);
  EllipseRanges zero;
  zero.amplitude_lo = zero.amplitude_hi = 0.0;
  CHECK(gen_phantom(PhantomKind::random_ellipses, 16, 1, c, zero).isZero(0.0));

  Rng d(13);
  CHECK_THROWS_AS(gen_phantom(PhantomKind::logan_shepp, 7, 10, d), InvalidArgument);
  CHECK_THROWS_AS(gen_phantom(PhantomKind::random_ellipses, 16, 0, d), InvalidArgument);

  Rng e(14);
  const auto ell = random_ellipses(200, e);
  for (const auto &x : ell) {
    CHECK(x.x0 >= -0.8);
    CHECK(x.x0 <= 0.8);
    CHECK(x.a >= 0.05);
    CHECK(x.b <= 0.5);
    CHECK(x.theta >= 0.0);
    CHECK(x.theta < 3.15);
    CHECK(std::abs(x.amplitude) <= 1.0);
  }
}

TEST_CASE("Ellipse rasterization uses pixel centers") {
  // A centered disk of radius 0.5 on an 8x8 grid covers the centers (+-1/8, +-3/8)
  // combinations with x^2 + y^2 <= 0.25: 12 pixels.
  const auto img = rasterize_ellipses(8, {{0, 0, 0.5, 0.5, 0, 1.0}});
  int covered = 0;
  for (Index i = 0; i < img.size(); ++i) covered += img.data()[i].real() == 1.0;
  CHECK(covered == 12);
  // Shifting right only occupies columns on the right half.
  const auto right = rasterize_ellipses(8, {{0.5, 0, 0.2, 0.2, 0, 1.0}});
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 4; ++j) CHECK(right(i, j).real() == 0.0);
  }
  CHECK(right.real().sum() > 0.0);
  // y points up: an ellipse above the center lands in the top rows.
  const auto up = rasterize_ellipses(8, {{0, 0.5, 0.2, 0.2, 0, 1.0}});
  for (Index i = 4; i < 8; ++i) {
    for (Index j = 0; j < 8; ++j) CHECK(up(i, j).real() == 0.0);
  }
}
