#pragma once

#include <optional>

#include "pfrec/core.hpp"

namespace pfrec {

/// H0(t, t') = -c(t - t') for t != t' in T, zero diagonal, where
/// c(u) = sum_{w in omega} exp(2 pi i w u / N).
struct HOperator {
  IndexSet t_set;
  IndexSet omega;
  CMatrix h0;
  /// c(u) for u in Z_N.
  Signal1D kernel;
};

/// Throws InvalidArgument for empty T or mismatched ambient sizes.
HOperator build_h(const IndexSet &t_set, const IndexSet &omega);

/// (H x)(t) for every t in Z_N, x given on T.
Signal1D apply_h(const HOperator &h, const CVector &x);

/// Largest singular value of H0 (max |eigenvalue|, H0 is Hermitian).
double spectral_norm_h0(const HOperator &h);

/// f / |f| on the support of f, zero elsewhere.
Signal1D sign_pattern(const Signal1D &f);

enum class CertMethod { direct, neumann };

struct NeumannParts {
  Index n_terms = 0;
  /// Truncated series part and remainder part. On T^c, P = p0 + p1.
  Signal1D p0;
  Signal1D p1;
  double p0_off_support_max = 0.0;
  double p1_off_support_max = 0.0;
  /// ||(I - M^n)^{-1} - I||_F with M = H0 / |omega|.
  double remainder_frobenius = 0.0;
};

inline constexpr double kCertEigenCutoff = 1e-10;
inline constexpr double kCertSignTol = 1e-8;

struct CertificateReport {
  CertMethod method = CertMethod::direct;
  bool invertible = false;
  /// Smallest eigenvalue of I - H0 / |omega|.
  double sigma_min_normalized = 0.0;
  /// Remaining fields are only meaningful when invertible.
  Signal1D p_values;
  double sign_match_residual = 0.0;
  double off_support_max = 0.0;
  /// max_{w not in omega} |Phat(w)| / max_w |Phat(w)|.
  double spectrum_leak = 0.0;
  std::optional<NeumannParts> neumann;

  bool valid() const {
    return invertible && sign_match_residual <= kCertSignTol && off_support_max < 1.0;
  }
};

/// Solves (I - H0/|omega|) x = sgn|T by a dense Hermitian eigensolve and sets
/// P = (iota - H/|omega|) x. `sign_vector` has length N, unit modulus on T and
/// zeros elsewhere.
CertificateReport build_certificate_direct(const IndexSet &t_set, const IndexSet &omega,
                                           const Signal1D &sign_vector);

/// Same polynomial through (I - M)^{-1} = (I + R) sum_{m < n} M^m with
/// R = (I - M^n)^{-1} - I, and the split of P on T^c into the truncated
/// series and remainder contributions.
CertificateReport build_certificate_neumann(const IndexSet &t_set, const IndexSet &omega,
                                            const Signal1D &sign_vector, Index n_terms);

} // namespace pfrec
