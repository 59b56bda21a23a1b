#include "pfrec/certificate.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "pfrec/fft.hpp"

namespace pfrec {

namespace {

void check_sets(const IndexSet &t_set, const IndexSet &omega) {
  if (t_set.empty()) throw InvalidArgument("certificate: T is empty");
  if (t_set.ambient() != omega.ambient()) throw InvalidArgument("certificate: T and omega differ in ambient size");
}

CVector restrict_signs(const IndexSet &t_set, const Signal1D &sgn) {
  const Index n = t_set.ambient();
  if (sgn.size() != n) throw InvalidArgument("certificate: sign vector has the wrong length");
  const auto in_t = t_set.mask();
  for (Index t = 0; t < n; ++t) {
    const double m = std::abs(sgn(t));
    if (in_t[static_cast<std::size_t>(t)] ? std::abs(m - 1.0) > 1e-12 : m != 0.0) {
      throw InvalidArgument("certificate: sign vector must be unimodular on T and zero elsewhere");
    }
  }
  CVector s(t_set.size());
  for (Index i = 0; i < t_set.size(); ++i) s(i) = sgn(t_set[i]);
  return s;
}

// P = (iota - H/|omega|) x = (N/|omega|) idft(1_omega dft(iota x)).
Signal1D evaluate_polynomial(const IndexSet &t_set, const IndexSet &omega, const CVector &x) {
  const Index n = omega.ambient();
  Signal1D v = Signal1D::Zero(n);
  for (Index i = 0; i < t_set.size(); ++i) v(t_set[i]) = x(i);
  const Signal1D vhat = dft(v);
  Signal1D masked = Signal1D::Zero(n);
  for (Index k : omega) masked(k) = vhat(k);
  return idft(masked) * (static_cast<double>(n) / static_cast<double>(omega.size()));
}

void fill_diagnostics(CertificateReport &r, const IndexSet &t_set, const IndexSet &omega, const CVector &s) {
  const auto in_t = t_set.mask();
  r.sign_match_residual = 0.0;
  for (Index i = 0; i < t_set.size(); ++i) {
    r.sign_match_residual = std::max(r.sign_match_residual, std::abs(r.p_values(t_set[i]) - s(i)));
  }
  r.off_support_max = 0.0;
  for (Index t = 0; t < r.p_values.size(); ++t) {
    if (!in_t[static_cast<std::size_t>(t)]) r.off_support_max = std::max(r.off_support_max, std::abs(r.p_values(t)));
  }
  const Signal1D phat = dft(r.p_values);
  const auto in_omega = omega.mask();
  double leak = 0.0, peak = 0.0;
  for (Index k = 0; k < phat.size(); ++k) {
    peak = std::max(peak, std::abs(phat(k)));
    if (!in_omega[static_cast<std::size_t>(k)]) leak = std::max(leak, std::abs(phat(k)));
  }
  r.spectrum_leak = peak > 0.0 ? leak / peak : 0.0;
}

double off_support_max(const IndexSet &t_set, const Signal1D &p) {
  const auto in_t = t_set.mask();
  double m = 0.0;
  for (Index t = 0; t < p.size(); ++t) {
    if (!in_t[static_cast<std::size_t>(t)]) m = std::max(m, std::abs(p(t)));
  }
  return m;
}

} // namespace

HOperator build_h(const IndexSet &t_set, const IndexSet &omega) {
  check_sets(t_set, omega);
  const Index n = omega.ambient();
  Signal1D ind = Signal1D::Zero(n);
  for (Index k : omega) ind(k) = 1.0;
  // c(u) = sum_w exp(+2 pi i w u / N) = N * idft(1_omega)(u).
  Signal1D c = idft(ind) * static_cast<double>(n);
  HOperator h{t_set, omega, CMatrix::Zero(t_set.size(), t_set.size()), std::move(c)};
  for (Index i = 0; i < t_set.size(); ++i) {
    for (Index j = 0; j < t_set.size(); ++j) {
      if (i == j) continue;
      const Index u = ((t_set[i] - t_set[j]) % n + n) % n;
      h.h0(i, j) = -h.kernel(u);
    }
  }
  return h;
}

Signal1D apply_h(const HOperator &h, const CVector &x) {
  if (x.size() != h.t_set.size()) throw InvalidArgument("apply_h: input length differs from |T|");
  const Index n = h.omega.ambient();
  Signal1D v = Signal1D::Zero(n);
  for (Index i = 0; i < h.t_set.size(); ++i) v(h.t_set[i]) = x(i);
  // H v = -(c * v) + c(0) v, with c * v = N idft(1_omega vhat).
  const Signal1D vhat = dft(v);
  Signal1D masked = Signal1D::Zero(n);
  for (Index k : h.omega) masked(k) = vhat(k);
  const Signal1D conv = idft(masked) * static_cast<double>(n);
  return -conv + static_cast<double>(h.omega.size()) * v;
}

double spectral_norm_h0(const HOperator &h) {
  if (h.h0.size() == 0) return 0.0;
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(h.h0, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Signal1D sign_pattern(const Signal1D &f) {
  Signal1D s = Signal1D::Zero(f.size());
  for (Index t = 0; t < f.size(); ++t) {
    const double m = std::abs(f(t));
    if (m > 0.0) s(t) = f(t) / m;
  }
  return s;
}

CertificateReport build_certificate_direct(const IndexSet &t_set, const IndexSet &omega,
                                           const Signal1D &sign_vector) {
  check_sets(t_set, omega);
  const CVector s = restrict_signs(t_set, sign_vector);
  CertificateReport r;
  r.method = CertMethod::direct;
  if (omega.empty()) return r;
  const HOperator h = build_h(t_set, omega);
  const Index k = t_set.size();
  const CMatrix a = CMatrix::Identity(k, k) - h.h0 / static_cast<double>(omega.size());
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  r.sigma_min_normalized = es.eigenvalues().minCoeff();
  r.invertible = r.sigma_min_normalized > kCertEigenCutoff;
  if (!r.invertible) return r;
  const CMatrix &v = es.eigenvectors();
  const CVector x = v * ((v.adjoint() * s).array() / es.eigenvalues().array().cast<std::complex<double>>()).matrix();
  r.p_values = evaluate_polynomial(t_set, omega, x);
  fill_diagnostics(r, t_set, omega, s);
  return r;
}

CertificateReport build_certificate_neumann(const IndexSet &t_set, const IndexSet &omega,
                                            const Signal1D &sign_vector, Index n_terms) {
  check_sets(t_set, omega);
  if (n_terms < 1) throw InvalidArgument("build_certificate_neumann: n_terms must be at least 1");
  const CVector s = restrict_signs(t_set, sign_vector);
  CertificateReport r;
  r.method = CertMethod::neumann;
  if (omega.empty()) return r;
  const HOperator h = build_h(t_set, omega);
  const Index k = t_set.size();
  const double w = static_cast<double>(omega.size());
  const CMatrix m = h.h0 / w;
  const CMatrix id = CMatrix::Identity(k, k);

  const Eigen::SelfAdjointEigenSolver<CMatrix> es_a(id - m, Eigen::EigenvaluesOnly);
  r.sigma_min_normalized = es_a.eigenvalues().minCoeff();

  CMatrix mn = id;
  for (Index i = 0; i < n_terms; ++i) mn = mn * m;
  const CMatrix b = id - mn;
  const Eigen::SelfAdjointEigenSolver<CMatrix> es_b(0.5 * (b + b.adjoint()));
  if (es_b.eigenvalues().cwiseAbs().minCoeff() <= kCertEigenCutoff) return r;
  r.invertible = r.sigma_min_normalized > kCertEigenCutoff;
  if (!r.invertible) return r;

  const CMatrix &v = es_b.eigenvectors();
  const Eigen::VectorXd inv_eval = es_b.eigenvalues().cwiseInverse();
  const CMatrix rem = v * inv_eval.cast<std::complex<double>>().asDiagonal() * v.adjoint() - id;

  // y = sum_{m < n} M^m s.
  CVector y = CVector::Zero(k);
  CVector term = s;
  for (Index i = 0; i < n_terms; ++i) {
    y += term;
    term = m * term;
  }
  const CVector x = y + rem * y;
  r.p_values = evaluate_polynomial(t_set, omega, x);
  fill_diagnostics(r, t_set, omega, s);

  // On T^c, P = -(1/|omega|) H x = -(1/|omega|) H y - (1/|omega|) H R y.
  NeumannParts parts;
  parts.n_terms = n_terms;
  parts.p0 = apply_h(h, y) * (-1.0 / w);
  parts.p1 = apply_h(h, rem * y) * (-1.0 / w);
  const auto in_t = t_set.mask();
  for (Index t = 0; t < parts.p0.size(); ++t) {
    if (in_t[static_cast<std::size_t>(t)]) {
      parts.p0(t) = 0.0;
      parts.p1(t) = 0.0;
    }
  }
  parts.p0_off_support_max = off_support_max(t_set, parts.p0);
  parts.p1_off_support_max = off_support_max(t_set, parts.p1);
  parts.remainder_frobenius = rem.norm();
  r.neumann = std::move(parts);
  return r;
}

} // namespace pfrec
