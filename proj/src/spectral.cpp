#include "pfrec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pfrec {

PartialFourierOp::PartialFourierOp(Index n_, IndexSet omega_) : n(n_), omega(std::move(omega_)) {
  if (n <= 0) throw InvalidArgument("PartialFourierOp: n must be positive");
  if (omega.ambient() != n) throw InvalidArgument("PartialFourierOp: omega ambient size differs from n");
}

CVector observe(const PartialFourierOp &op, const Signal1D &f) {
  if (f.size() != op.n) throw InvalidArgument("observe: signal length differs from operator length");
  const Signal1D fhat = dft(f);
  CVector out(op.omega.size());
  for (Index i = 0; i < op.omega.size(); ++i) out(i) = fhat(op.omega[i]);
  return out;
}

Signal1D project_onto_data(const PartialFourierOp &op, const Signal1D &g, const CVector &data) {
  if (g.size() != op.n) throw InvalidArgument("project_onto_data: signal length differs from operator length");
  if (data.size() != op.omega.size()) throw InvalidArgument("project_onto_data: data length differs from |omega|");
  Signal1D ghat = dft(g);
  for (Index i = 0; i < op.omega.size(); ++i) ghat(op.omega[i]) = data(i);
  return idft(ghat);
}

Signal1D project_null(const PartialFourierOp &op, const Signal1D &v) {
  if (v.size() != op.n) throw InvalidArgument("project_null: signal length differs from operator length");
  Signal1D vhat = dft(v);
  for (Index k : op.omega) vhat(k) = 0.0;
  return idft(vhat);
}

Signal1D min_energy_solution(const PartialFourierOp &op, const CVector &data) {
  return project_onto_data(op, Signal1D::Zero(op.n), data);
}

RestrictedMatrix restricted_matrix(const IndexSet &t_set, const IndexSet &omega) {
  if (t_set.ambient() != omega.ambient()) {
    throw InvalidArgument("restricted_matrix: T and omega live in different ambient sizes");
  }
  const Index n = omega.ambient();
  RestrictedMatrix m(omega.size(), t_set.size());
  for (Index c = 0; c < t_set.size(); ++c) {
    for (Index r = 0; r < omega.size(); ++r) {
      // Reduce k*t mod n before forming the angle.
      const Index kt = (omega[r] * t_set[c]) % n;
      const double a = -2.0 * std::numbers::pi * static_cast<double>(kt) / static_cast<double>(n);
      m(r, c) = {std::cos(a), std::sin(a)};
    }
  }
  return m;
}

RVector jacobi_singular_values(const CMatrix &m) {
  CMatrix a = m;
  const Index cols = a.cols();
  const double eps = 1e-15;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (Index i = 0; i + 1 < cols; ++i) {
      for (Index j = i + 1; j < cols; ++j) {
        const double alpha = a.col(i).squaredNorm();
        const double beta = a.col(j).squaredNorm();
        const std::complex<double> gamma = a.col(i).dot(a.col(j));
        const double g = std::abs(gamma);
        if (g <= eps * std::sqrt(alpha * beta) || g == 0.0) continue;
        rotated = true;
        const std::complex<double> phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        // Rotate a_i against a_j * conj(phase), whose inner product with a_i is real.
        const CVector ai = a.col(i);
        const CVector aj = a.col(j) * std::conj(phase);
        a.col(i) = c * ai - s * aj;
        a.col(j) = (s * ai + c * aj) * phase;
      }
    }
    if (!rotated) break;
  }
  RVector sv(cols);
  for (Index j = 0; j < cols; ++j) sv(j) = a.col(j).norm();
  std::sort(sv.data(), sv.data() + cols, std::greater<>());
  if (a.rows() < cols) {
    for (Index j = a.rows(); j < cols; ++j) sv(j) = 0.0;
  }
  return sv;
}

InjectivityReport injectivity_report(const RestrictedMatrix &m) {
  if (m.cols() == 0) throw InvalidArgument("injectivity_report: matrix has no columns");
  const RVector sv = jacobi_singular_values(m);
  InjectivityReport r;
  r.sigma_max = sv(0);
  r.sigma_min = sv(sv.size() - 1);
  r.is_injective = r.sigma_min > kInjectivityThreshold * r.sigma_max;
  return r;
}

} // namespace pfrec
