#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace pfrec {

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;

/// Length-N complex signal on Z_N. Dense Eigen column vector.
template <typename Real>
using SignalT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// side x side complex image, row-major so that value(t1, t2) sits at t1 * side + t2.
template <typename Real>
using ImageT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>;

template <typename Real>
using CMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using Signal1D = SignalT<double>;
using Image2D = ImageT<double>;
using CMatrix = CMatrixT<double>;
using CVector = SignalT<double>;
using RVector = Eigen::VectorXd;

// Error taxonomy. Every operation throws one of these on a contract violation.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingDc : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct VacuousRegime : std::domain_error {
  using std::domain_error::domain_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sorted, duplicate-free subset of Z_n. Used both for supports T and frequency
/// sets Omega.
class IndexSet {
public:
  IndexSet() = default;
  /// Throws InvalidArgument unless `indices` is strictly increasing and inside [0, n).
  IndexSet(Index n, std::vector<Index> indices);

  /// Sorts and deduplicates before validating.
  static IndexSet from_unsorted(Index n, std::vector<Index> indices);
  static IndexSet full(Index n);
  static IndexSet empty(Index n);

  Index ambient() const noexcept { return n_; }
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  bool empty() const noexcept { return indices_.empty(); }
  std::span<const Index> indices() const noexcept { return indices_; }
  Index operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }
  bool contains(Index k) const;

  /// Z_n minus this set.
  IndexSet complement() const;
  /// 0/1 membership mask of length n.
  std::vector<bool> mask() const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const IndexSet &, const IndexSet &) = default;

private:
  Index n_ = 0;
  std::vector<Index> indices_;
};

/// Positions of entries with modulus above `threshold`.
template <typename Real>
IndexSet support_of(const SignalT<Real> &f, Real threshold = Real(0)) {
  std::vector<Index> idx;
  for (Index t = 0; t < f.size(); ++t) {
    if (std::abs(f(t)) > threshold) idx.push_back(t);
  }
  return IndexSet(f.size(), std::move(idx));
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived> &m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const auto v = m(i, j);
      if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
    }
  }
  return true;
}

/// ||a - b||_2 / ||b||_2, or ||a||_2 when b vanishes.
template <typename DerivedA, typename DerivedB>
double relative_l2_error(const Eigen::MatrixBase<DerivedA> &a,
                         const Eigen::MatrixBase<DerivedB> &b) {
  const double denom = b.norm();
  const double diff = (a - b).norm();
  return denom > 0.0 ? diff / denom : diff;
}

} // namespace pfrec
