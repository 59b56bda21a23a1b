#include "pfrec/l1_recover.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace pfrec {

void SolveConfig::validate() const {
  if (max_iters <= 0) throw InvalidArgument("SolveConfig: max_iters must be positive");
  if (step_size < 0.0) throw InvalidArgument("SolveConfig: step_size must be non-negative");
  if (!(smoothing_eps_start > 0.0) || !(smoothing_eps_end > 0.0)) {
    throw InvalidArgument("SolveConfig: smoothing eps must be positive");
  }
  if (!(smoothing_eps_end < smoothing_eps_start)) {
    throw InvalidArgument("SolveConfig: smoothing_eps_end must be below smoothing_eps_start");
  }
  if (!(success_tol > 0.0)) throw InvalidArgument("SolveConfig: success_tol must be positive");
  if (eps_stages < 1) throw InvalidArgument("SolveConfig: eps_stages must be at least 1");
  if (!(stage_grad_tol > 0.0) || !(final_grad_tol > 0.0)) {
    throw InvalidArgument("SolveConfig: gradient tolerances must be positive");
  }
  if (stall_window < 1 || reproject_every < 1) {
    throw InvalidArgument("SolveConfig: stall_window and reproject_every must be positive");
  }
}

double smoothed_l1(const Signal1D &g, double eps) {
  double s = 0.0;
  for (Index t = 0; t < g.size(); ++t) s += std::sqrt(std::norm(g(t)) + eps * eps);
  return s;
}

namespace {

double data_scale(const CVector &data) {
  double m = 1.0;
  for (Index i = 0; i < data.size(); ++i) m = std::max(m, std::abs(data(i)));
  return m;
}

double feasibility(const PartialFourierOp &op, const Signal1D &g, const CVector &data) {
  const CVector got = observe(op, g);
  double r = 0.0;
  for (Index i = 0; i < data.size(); ++i) r = std::max(r, std::abs(got(i) - data(i)));
  return r / data_scale(data);
}

} // namespace

namespace {

// Refits on the detected support and keeps the refit only if it is feasible
// and strictly smaller in l1.
void polish(const PartialFourierOp &op, const CVector &data, Signal1D &g) {
  const double peak = g.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) return;
  const IndexSet s = support_of(g, kPolishRelThreshold * peak);
  if (s.empty() || s.size() > op.omega.size()) return;
  Signal1D cand;
  try {
    cand = least_squares_known_support(s, op.omega, data);
  } catch (const IllConditioned &) {
    return;
  }
  if (!all_finite(cand) || feasibility(op, cand, data) > kPolishFeasTol) return;
  if (cand.cwiseAbs().sum() < g.cwiseAbs().sum()) g = std::move(cand);
}

} // namespace

RecoveryResult solve_p1(const PartialFourierOp &op, const CVector &data, const SolveConfig &cfg,
                        const std::optional<Signal1D> &truth) {
  cfg.validate();
  if (op.omega.empty()) throw InvalidArgument("solve_p1: omega is empty");
  if (data.size() != op.omega.size()) throw InvalidArgument("solve_p1: data length differs from |omega|");
  if (!all_finite(data)) throw InvalidArgument("solve_p1: data contains non-finite values");
  if (truth && truth->size() != op.n) throw InvalidArgument("solve_p1: ground truth has the wrong length");

  const Index n = op.n;
  const Index stages = cfg.eps_stages;
  const Index budget = std::max<Index>(1, cfg.max_iters / stages);
  double step = cfg.step_size > 0.0 ? cfg.step_size : 0.2 / static_cast<double>(n);

  RecoveryResult res;
  Signal1D g = min_energy_solution(op, data);
  Signal1D grad(n), trial(n);
  RVector w(n);
  Index iters = 0;
  Index stall = 0;
  bool stop = false;

  for (Index stage = 0; stage < stages && !stop; ++stage) {
    const double frac = stages == 1 ? 1.0 : static_cast<double>(stage) / static_cast<double>(stages - 1);
    const double eps = cfg.smoothing_eps_start * std::pow(cfg.smoothing_eps_end / cfg.smoothing_eps_start, frac);
    const double eps2 = eps * eps;
    const double tol = stage + 1 == stages ? cfg.final_grad_tol : cfg.stage_grad_tol;

    for (Index it = 0; it < budget; ++it) {
      if (iters >= cfg.max_iters) {
        stop = true;
        break;
      }
      for (Index t = 0; t < n; ++t) {
        w(t) = std::sqrt(std::norm(g(t)) + eps2);
        grad(t) = g(t) / w(t);
      }
      const Signal1D d = project_null(op, grad);
      const double dn2 = d.squaredNorm();
      if (std::sqrt(dn2) <= tol) break;

      // Armijo backtracking; the objective change is summed termwise so it
      // stays accurate when eps is tiny.
      double eta = 2.0 * step;
      double delta = 0.0;
      bool accepted = false;
      while (eta > 1e-300) {
        delta = 0.0;
        for (Index t = 0; t < n; ++t) {
          trial(t) = g(t) - eta * d(t);
          const double nt = std::norm(trial(t));
          const double wt = std::sqrt(nt + eps2);
          delta += (nt - std::norm(g(t))) / (wt + w(t));
        }
        if (delta <= -1e-4 * eta * dn2) {
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) break;
      if (delta > 0.0) res.objective_monotone = false;

      const double gnorm = g.norm();
      const double change = eta * std::sqrt(dn2) / (gnorm > 0.0 ? gnorm : 1.0);
      g.swap(trial);
      step = eta;
      ++iters;
      if (iters % cfg.reproject_every == 0) g = project_onto_data(op, g, data);

      stall = change < 1e-12 ? stall + 1 : 0;
      if (stall >= cfg.stall_window) {
        stop = true;
        break;
      }
    }
  }

  g = project_onto_data(op, g, data);
  if (cfg.polish_support) polish(op, data, g);
  res.reconstruction = std::move(g);
  res.iterations_used = iters;
  res.feasibility_residual = feasibility(op, res.reconstruction, data);
  if (truth) {
    res.rel_l2_error = relative_l2_error(res.reconstruction, *truth);
    res.exact = res.rel_l2_error <= cfg.success_tol;
  } else {
    res.rel_l2_error = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

P0Result solve_p0(const PartialFourierOp &op, const CVector &data, Index max_support) {
  const Index n = op.n;
  if (n > kP0MaxN) throw UnsupportedSize("solve_p0: n must be at most 24");
  if (data.size() != op.omega.size()) throw InvalidArgument("solve_p0: data length differs from |omega|");
  if (max_support < 0 || max_support > n) throw InvalidArgument("solve_p0: max_support must lie in [0, n]");

  const double tol = kP0ResidualTol * std::max(1.0, data.norm());
  P0Result out;
  if (data.norm() <= tol) {
    out.solution = Signal1D::Zero(n);
    out.sparsity = 0;
    out.unique = true;
    return out;
  }

  for (Index s = 1; s <= max_support; ++s) {
    std::vector<Signal1D> found;
    bool degenerate = false;
    std::vector<Index> comb(static_cast<std::size_t>(s));
    for (Index i = 0; i < s; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
      const IndexSet t_set(n, comb);
      const CMatrix a = restricted_matrix(t_set, op.omega);
      const Eigen::ColPivHouseholderQR<CMatrix> qr(a);
      const CVector x = qr.solve(data);
      if ((a * x - data).norm() < tol) {
        if (qr.rank() < s) degenerate = true;
        Signal1D sol = Signal1D::Zero(n);
        for (Index i = 0; i < s; ++i) sol(t_set[i]) = x(i);
        bool seen = false;
        for (const auto &f : found) {
          if ((f - sol).norm() <= 1e-8 * std::max(1.0, f.norm())) seen = true;
        }
        if (!seen) found.push_back(std::move(sol));
      }
      // Next combination in lexicographic order.
      Index i = s - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - s + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (Index j = i + 1; j < s; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (!found.empty()) {
      out.solution = found.front();
      out.sparsity = s;
      out.unique = found.size() == 1 && !degenerate;
      return out;
    }
  }
  out.solution = Signal1D::Zero(n);
  return out;
}

Signal1D least_squares_known_support(const IndexSet &t_set, const IndexSet &omega, const CVector &data) {
  if (t_set.empty()) throw InvalidArgument("least_squares_known_support: T is empty");
  if (omega.size() < t_set.size()) throw InvalidArgument("least_squares_known_support: need |omega| >= |T|");
  if (data.size() != omega.size()) throw InvalidArgument("least_squares_known_support: data length differs from |omega|");
  const CMatrix f = restricted_matrix(t_set, omega);
  if (!injectivity_report(f).is_injective) {
    throw IllConditioned("least_squares_known_support: restricted Fourier matrix is not injective");
  }
  const CMatrix gram = f.adjoint() * f;
  const CVector x = gram.llt().solve(f.adjoint() * data);
  Signal1D out = Signal1D::Zero(omega.ambient());
  for (Index i = 0; i < t_set.size(); ++i) out(t_set[i]) = x(i);
  return out;
}

} // namespace pfrec
