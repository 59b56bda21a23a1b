#pragma once

#include <vector>

#include "pfrec/core.hpp"
#include "pfrec/fft.hpp"

namespace pfrec {

/// Partial Fourier observation operator: signal length n and observed frequencies.
struct PartialFourierOp {
  PartialFourierOp(Index n_, IndexSet omega_);

  Index n;
  IndexSet omega;
};

/// Observed coefficients (fhat(w)) for w in omega, increasing w.
CVector observe(const PartialFourierOp &op, const Signal1D &f);

/// Euclidean projection of g onto {h : hhat|omega = data}.
Signal1D project_onto_data(const PartialFourierOp &op, const Signal1D &g, const CVector &data);

/// Orthogonal projection onto {h : hhat|omega = 0}.
Signal1D project_null(const PartialFourierOp &op, const Signal1D &v);

/// Spectrum equal to `data` on omega and zero elsewhere, inverted.
Signal1D min_energy_solution(const PartialFourierOp &op, const CVector &data);

/// Dense |omega| x |T| matrix with entry (k, t) = exp(-2 pi i omega_k t / n).
using RestrictedMatrix = CMatrix;

RestrictedMatrix restricted_matrix(const IndexSet &t_set, const IndexSet &omega);

/// Singular values in decreasing order, via one-sided (Hestenes) Jacobi.
/// Returns min(rows, cols) values padded to cols with zeros when rows < cols.
RVector jacobi_singular_values(const CMatrix &m);

struct InjectivityReport {
  bool is_injective = false;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

inline constexpr double kInjectivityThreshold = 1e-10;

/// Throws InvalidArgument when m has no columns.
InjectivityReport injectivity_report(const RestrictedMatrix &m);

} // namespace pfrec
