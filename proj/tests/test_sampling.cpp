#include <doctest.h>

#include <cmath>
#include <set>

#include "pfrec/rng.hpp"
#include "pfrec/sampling.hpp"

using namespace pfrec;

TEST_CASE("bernoulli_omega cardinality follows Binomial(n, tau)") {
  Rng rng(200);
  const Index n = 512;
  const double tau = 0.125;
  const int draws = 10000;
  double sum = 0, sumsq = 0;
  for (int i = 0; i < draws; ++i) {
    const double s = static_cast<double>(bernoulli_omega(n, tau, rng).size());
    sum += s;
    sumsq += s * s;
  }
  const double mean = sum / draws;
  const double var = sumsq / draws - mean * mean;
  const double binom_var = n * tau * (1 - tau);
  // Standard error of the sample mean is sigma / sqrt(draws).
  CHECK(std::abs(mean - 64.0) < 3.0 * std::sqrt(binom_var / draws));
  // Sample variance: relative standard error about sqrt(2 / draws).
  CHECK(std::abs(var / binom_var - 1.0) < 3.0 * std::sqrt(2.0 / draws) + 0.01);
  // Loose form stated for a single draw.
  CHECK(std::abs(mean - 64.0) < 3.0 * std::sqrt(binom_var));
}

TEST_CASE("bernoulli_omega is deterministic per seed and validates tau") {
  Rng a(201), b(201);
  CHECK(bernoulli_omega(20, 0.5, a) == bernoulli_omega(20, 0.5, b));
  Rng c(202);
  CHECK_THROWS_AS(bernoulli_omega(20, 0.0, c), InvalidArgument);
  CHECK_THROWS_AS(bernoulli_omega(20, 1.0, c), InvalidArgument);
  CHECK_THROWS_AS(bernoulli_omega(20, -0.2, c), InvalidArgument);
}

TEST_CASE("bernoulli_omega lower tail is below N^-M") {
  Rng rng(203);
  const Index n = 512;
  const double tau = 0.25, m = 1.0;
  const double tn = tau * static_cast<double>(n);
  const double eps_m = std::sqrt(2.0 * m * std::log(static_cast<double>(n)) / tn);
  const double threshold = (1.0 - eps_m) * tn;
  const int draws = 20000;
  int below = 0;
  for (int i = 0; i < draws; ++i) below += static_cast<double>(bernoulli_omega(n, tau, rng).size()) < threshold;
  const double bound = std::pow(static_cast<double>(n), -m);
  CHECK(static_cast<double>(below) / draws <= bound);
}

TEST_CASE("uniform_omega") {
  Rng rng(204);
  CHECK(uniform_omega(10, 10, rng) == IndexSet::full(10));
  CHECK(uniform_omega(10, 0, rng).empty());
  std::set<std::vector<Index>> distinct;
  for (int i = 0; i < 200; ++i) {
    const auto s = uniform_omega(512, 64, rng);
    CHECK(s.size() == 64);
    distinct.insert({s.begin(), s.end()});
  }
  CHECK(distinct.size() == 200);
  CHECK_THROWS_AS(uniform_omega(10, 11, rng), InvalidArgument);
}

namespace {

bool negation_closed(const StarMask &m) {
  const Index s = m.side;
  for (Index idx : m.indices) {
    const Index k1 = idx / s, k2 = idx % s;
    const Index neg = ((s - k1) % s) * s + (s - k2) % s;
    if (!m.indices.contains(neg)) return false;
  }
  return true;
}

} // namespace

TEST_CASE("star_mask axis lines") {
  const auto one = star_mask(8, 1);
  std::vector<Index> row0;
  for (Index k2 = 0; k2 < 8; ++k2) row0.push_back(k2);
  CHECK(one.indices == IndexSet(64, row0));

  // Oracle: two lines at 0 and pi/2 are the union of row 0 and column 0.
  for (Index side : {8, 16, 33}) {
    std::vector<Index> axes;
    for (Index k = 0; k < side; ++k) {
      axes.push_back(k);
      axes.push_back(k * side);
    }
    CHECK(star_mask(side, 2).indices == IndexSet::from_unsorted(side * side, axes));
  }
}

TEST_CASE("star_mask coverage and symmetry") {
  const auto big = star_mask(512, 22);
  const double frac = static_cast<double>(big.indices.size()) / (512.0 * 512.0);
  CHECK(frac >= 0.02);
  CHECK(frac <= 0.05);
  CHECK(big.indices.size() <= 22 * 512);
  CHECK(big.indices.contains(0));

  for (Index lines : {1, 2, 4}) {
    for (Index side : {8, 15, 64}) CHECK(negation_closed(star_mask(side, lines)));
  }
  CHECK(negation_closed(big));

  const auto img = mask_image(star_mask(16, 4));
  CHECK(img.real().sum() == doctest::Approx(static_cast<double>(star_mask(16, 4).indices.size())));

  CHECK_THROWS_AS(star_mask(7, 3), InvalidArgument);
  CHECK_THROWS_AS(star_mask(16, 0), InvalidArgument);
}
