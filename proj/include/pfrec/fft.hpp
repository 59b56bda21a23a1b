#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "pfrec/core.hpp"

namespace pfrec {

/// Precomputed length-n DFT, X(k) = sum_t x(t) exp(-2 pi i k t / n).
///
/// Powers of two run an iterative radix-2 Cooley-Tukey pass. Every other
/// length (primes included) goes through Bluestein's chirp-z identity
///   kt = (k^2 + t^2 - (k - t)^2) / 2
/// which turns the transform into a circular convolution of power-of-two
/// length m >= 2n - 1. Both paths are O(n log n). Plans are immutable after
/// construction and may be shared between threads.
template <typename Real>
class FftPlan {
public:
  using C = std::complex<Real>;

  explicit FftPlan(Index n) : n_(n) {
    if (n <= 0) throw InvalidArgument("FftPlan: length must be positive");
    pow2_ = (n & (n - 1)) == 0;
    if (pow2_) {
      init_radix2();
    } else {
      init_bluestein();
    }
  }

  Index size() const noexcept { return n_; }

  /// In-place forward transform of n contiguous values.
  void forward(C *data) const {
    if (pow2_) {
      radix2(data);
    } else {
      bluestein(data);
    }
  }

  /// In-place inverse transform without the 1/n factor.
  void backward_unscaled(C *data) const {
    for (Index i = 0; i < n_; ++i) data[i] = std::conj(data[i]);
    forward(data);
    for (Index i = 0; i < n_; ++i) data[i] = std::conj(data[i]);
  }

private:
  static C unit_root(long double turns) {
    // exp(-2 pi i * turns)
    const long double a = -2.0L * std::numbers::pi_v<long double> * turns;
    return C(static_cast<Real>(std::cos(a)), static_cast<Real>(std::sin(a)));
  }

  void init_radix2() {
    log2n_ = 0;
    while ((Index{1} << log2n_) < n_) ++log2n_;
    bitrev_.resize(static_cast<std::size_t>(n_));
    for (Index i = 0; i < n_; ++i) {
      Index r = 0;
      for (int b = 0; b < log2n_; ++b) {
        if (i & (Index{1} << b)) r |= Index{1} << (log2n_ - 1 - b);
      }
      bitrev_[static_cast<std::size_t>(i)] = r;
    }
    twiddles_.resize(static_cast<std::size_t>(n_ / 2 > 0 ? n_ / 2 : 1));
    for (Index k = 0; k < n_ / 2; ++k) {
      twiddles_[static_cast<std::size_t>(k)] =
          unit_root(static_cast<long double>(k) / static_cast<long double>(n_));
    }
  }

  void radix2(C *x) const {
    for (Index i = 0; i < n_; ++i) {
      const Index r = bitrev_[static_cast<std::size_t>(i)];
      if (i < r) std::swap(x[i], x[r]);
    }
    for (Index len = 2; len <= n_; len <<= 1) {
      const Index half = len >> 1;
      const Index stride = n_ / len;
      for (Index start = 0; start < n_; start += len) {
        for (Index j = 0; j < half; ++j) {
          const C w = twiddles_[static_cast<std::size_t>(j * stride)];
          const C u = x[start + j];
          const C v = x[start + j + half] * w;
          x[start + j] = u + v;
          x[start + j + half] = u - v;
        }
      }
    }
  }

  void init_bluestein() {
    m_ = 1;
    while (m_ < 2 * n_ - 1) m_ <<= 1;
    sub_ = std::make_unique<FftPlan<Real>>(m_);
    chirp_.resize(static_cast<std::size_t>(n_));
    const long double two_n = 2.0L * static_cast<long double>(n_);
    for (Index k = 0; k < n_; ++k) {
      // exp(-i pi k^2 / n); reduce k^2 mod 2n first to keep the angle small.
      const auto k2 = static_cast<long double>((k * k) % (2 * n_));
      chirp_[static_cast<std::size_t>(k)] = unit_root(k2 / two_n);
    }
    kernel_.assign(static_cast<std::size_t>(m_), C(0));
    kernel_[0] = std::conj(chirp_[0]);
    for (Index k = 1; k < n_; ++k) {
      const C c = std::conj(chirp_[static_cast<std::size_t>(k)]);
      kernel_[static_cast<std::size_t>(k)] = c;
      kernel_[static_cast<std::size_t>(m_ - k)] = c;
    }
    sub_->forward(kernel_.data());
  }

  void bluestein(C *x) const {
    std::vector<C> work(static_cast<std::size_t>(m_), C(0));
    for (Index k = 0; k < n_; ++k) work[static_cast<std::size_t>(k)] = x[k] * chirp_[static_cast<std::size_t>(k)];
    sub_->forward(work.data());
    for (Index k = 0; k < m_; ++k) work[static_cast<std::size_t>(k)] *= kernel_[static_cast<std::size_t>(k)];
    sub_->backward_unscaled(work.data());
    const Real inv_m = Real(1) / static_cast<Real>(m_);
    for (Index k = 0; k < n_; ++k) {
      x[k] = work[static_cast<std::size_t>(k)] * chirp_[static_cast<std::size_t>(k)] * inv_m;
    }
  }

  Index n_;
  bool pow2_ = false;
  int log2n_ = 0;
  std::vector<Index> bitrev_;
  std::vector<C> twiddles_;
  Index m_ = 0;
  std::unique_ptr<FftPlan<Real>> sub_;
  std::vector<C> chirp_;
  std::vector<C> kernel_;
};

/// Per-thread plan cache keyed on length.
template <typename Real>
const FftPlan<Real> &fft_plan(Index n) {
  thread_local std::unordered_map<Index, std::unique_ptr<FftPlan<Real>>> cache;
  auto &slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan<Real>>(n);
  return *slot;
}

template <typename Real>
SignalT<Real> dft(const SignalT<Real> &f) {
  SignalT<Real> out = f;
  if (out.size() > 0) fft_plan<Real>(out.size()).forward(out.data());
  return out;
}

template <typename Real>
SignalT<Real> idft(const SignalT<Real> &fhat) {
  SignalT<Real> out = fhat;
  if (out.size() > 0) {
    fft_plan<Real>(out.size()).backward_unscaled(out.data());
    out /= static_cast<Real>(out.size());
  }
  return out;
}

namespace detail {

template <typename Real, bool Forward>
void transform2(ImageT<Real> &img) {
  const Index rows = img.rows();
  const Index cols = img.cols();
  if (rows == 0 || cols == 0) return;
  const auto &row_plan = fft_plan<Real>(cols);
  for (Index r = 0; r < rows; ++r) {
    auto *p = img.data() + r * cols;
    if constexpr (Forward) {
      row_plan.forward(p);
    } else {
      row_plan.backward_unscaled(p);
    }
  }
  const auto &col_plan = fft_plan<Real>(rows);
  std::vector<std::complex<Real>> buf(static_cast<std::size_t>(rows));
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) buf[static_cast<std::size_t>(r)] = img(r, c);
    if constexpr (Forward) {
      col_plan.forward(buf.data());
    } else {
      col_plan.backward_unscaled(buf.data());
    }
    for (Index r = 0; r < rows; ++r) img(r, c) = buf[static_cast<std::size_t>(r)];
  }
}

} // namespace detail

/// Separable 2D DFT: fhat(k1, k2) = sum f(t1, t2) exp(-2 pi i (k1 t1 / rows + k2 t2 / cols)).
template <typename Real>
ImageT<Real> dft2(const ImageT<Real> &img) {
  ImageT<Real> out = img;
  detail::transform2<Real, true>(out);
  return out;
}

template <typename Real>
ImageT<Real> idft2(const ImageT<Real> &fhat) {
  ImageT<Real> out = fhat;
  detail::transform2<Real, false>(out);
  if (out.size() > 0) out /= static_cast<Real>(out.size());
  return out;
}

} // namespace pfrec
