#pragma once
// Independent reference computations used by the tests. Nothing here calls
// into the library's transforms or enumerators.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "pfrec/core.hpp"

namespace oracle {

using pfrec::Index;
using C = std::complex<double>;

inline C unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Direct O(N^2) sum f_hat(k) = sum_t f(t) exp(-2 pi i k t / N), in long double.
inline pfrec::Signal1D dft(const pfrec::Signal1D &f) {
  const Index n = f.size();
  pfrec::Signal1D out(n);
  for (Index k = 0; k < n; ++k) {
    std::complex<long double> acc = 0.0L;
    for (Index t = 0; t < n; ++t) {
      const long double a = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>((k * t) % n) /
                            static_cast<long double>(n);
      acc += std::complex<long double>(f(t).real(), f(t).imag()) * std::complex<long double>(std::cos(a), std::sin(a));
    }
    out(k) = C(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return out;
}

/// Direct 2D sum over both axes.
inline pfrec::Image2D dft2(const pfrec::Image2D &img) {
  const Index r = img.rows(), c = img.cols();
  pfrec::Image2D out(r, c);
  for (Index k1 = 0; k1 < r; ++k1) {
    for (Index k2 = 0; k2 < c; ++k2) {
      C acc = 0.0;
      for (Index t1 = 0; t1 < r; ++t1) {
        for (Index t2 = 0; t2 < c; ++t2) {
          const double a = -2.0 * std::numbers::pi *
                           (static_cast<double>((k1 * t1) % r) / static_cast<double>(r) +
                            static_cast<double>((k2 * t2) % c) / static_cast<double>(c));
          acc += img(t1, t2) * unit(a);
        }
      }
      out(k1, k2) = acc;
    }
  }
  return out;
}

/// Number of set partitions of an n-set into k blocks, counting canonical
/// labelings among all n^n label assignments.
struct PartitionCounts {
  std::vector<std::vector<std::uint64_t>> all;          // [n][k]
  std::vector<std::vector<std::uint64_t>> no_singleton; // [n][k]
};

inline PartitionCounts brute_partition_counts(int max_n) {
  PartitionCounts pc;
  pc.all.assign(static_cast<std::size_t>(max_n + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(max_n + 1), 0));
  pc.no_singleton = pc.all;
  pc.all[0][0] = pc.no_singleton[0][0] = 1;
  for (int n = 1; n <= max_n; ++n) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(n);
    std::vector<int> lab(static_cast<std::size_t>(n));
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t r = code;
      for (int i = 0; i < n; ++i) {
        lab[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::uint64_t>(n));
        r /= static_cast<std::uint64_t>(n);
      }
      // Canonical iff each label is at most one above the running maximum.
      int mx = -1;
      bool canonical = true;
      for (int l : lab) {
        if (l > mx + 1) {
          canonical = false;
          break;
        }
        mx = std::max(mx, l);
      }
      if (!canonical) continue;
      const int k = mx + 1;
      std::vector<int> size(static_cast<std::size_t>(k), 0);
      for (int l : lab) ++size[static_cast<std::size_t>(l)];
      ++pc.all[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
      bool single = false;
      for (int s : size) single = single || s == 1;
      if (!single) ++pc.no_singleton[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
  }
  return pc;
}

/// All subsets of {0..n-1} of size k, as sorted index vectors.
inline std::vector<std::vector<Index>> subsets_of_size(Index n, Index k) {
  std::vector<std::vector<Index>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (__builtin_popcountll(m) != k) continue;
    std::vector<Index> s;
    for (Index i = 0; i < n; ++i) {
      if (m >> i & 1U) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// c(u) = sum_{w in omega} exp(2 pi i w u / N) by direct summation.
inline C kernel(const pfrec::IndexSet &omega, Index u) {
  C acc = 0.0;
  const double n = static_cast<double>(omega.ambient());
  for (Index w : omega) acc += unit(2.0 * std::numbers::pi * static_cast<double>((w * u) % omega.ambient()) / n);
  return acc;
}

/// TV by the definition with explicit modular indexing.
inline double tv(const pfrec::Image2D &g) {
  const Index s = g.rows();
  double total = 0.0;
  for (Index a = 0; a < s; ++a) {
    for (Index b = 0; b < s; ++b) {
      const C d1 = g(a, b) - g((a + s - 1) % s, b);
      const C d2 = g(a, b) - g(a, (b + s - 1) % s);
      total += std::sqrt(std::norm(d1) + std::norm(d2));
    }
  }
  return total;
}

} // namespace oracle
