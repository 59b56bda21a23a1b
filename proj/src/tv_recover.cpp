#include "pfrec/tv_recover.hpp"

#include <cmath>
#include <numbers>

#include "pfrec/fft.hpp"

namespace pfrec {

void TvConfig::validate() const {
  SolveConfig::validate();
  if (!(tv_eps > 0.0)) throw InvalidArgument("TvConfig: tv_eps must be positive");
  if (!(tv_eps <= smoothing_eps_start)) throw InvalidArgument("TvConfig: tv_eps must not exceed smoothing_eps_start");
}

namespace {

// Periodic backward differences along rows (d1) and columns (d2).
void differences(const Image2D &g, Image2D &d1, Image2D &d2) {
  const Index s = g.rows();
  d1.resize(s, s);
  d2.resize(s, s);
  for (Index i = 0; i < s; ++i) {
    const Index ip = i == 0 ? s - 1 : i - 1;
    for (Index j = 0; j < s; ++j) {
      const Index jp = j == 0 ? s - 1 : j - 1;
      d1(i, j) = g(i, j) - g(ip, j);
      d2(i, j) = g(i, j) - g(i, jp);
    }
  }
}

// Adjoint of differences applied to (u1, u2).
Image2D differences_adjoint(const Image2D &u1, const Image2D &u2) {
  const Index s = u1.rows();
  Image2D out(s, s);
  for (Index i = 0; i < s; ++i) {
    const Index in = i + 1 == s ? 0 : i + 1;
    for (Index j = 0; j < s; ++j) {
      const Index jn = j + 1 == s ? 0 : j + 1;
      out(i, j) = u1(i, j) - u1(in, j) + u2(i, j) - u2(i, jn);
    }
  }
  return out;
}

Image2D project_null_2d(const IndexSet &mask, const Image2D &v) {
  Image2D vhat = dft2(v);
  const Index s = v.cols();
  for (Index k : mask) vhat(k / s, k % s) = 0.0;
  return idft2(vhat);
}

Image2D project_data_2d(const IndexSet &mask, const Image2D &g, const CVector &data) {
  Image2D ghat = dft2(g);
  const Index s = g.cols();
  for (Index i = 0; i < mask.size(); ++i) ghat(mask[i] / s, mask[i] % s) = data(i);
  return idft2(ghat);
}

double data_scale(const CVector &data) {
  double m = 1.0;
  for (Index i = 0; i < data.size(); ++i) m = std::max(m, std::abs(data(i)));
  return m;
}

} // namespace

double smoothed_tv_2d(const Image2D &img, double eps) {
  Image2D d1, d2;
  differences(img, d1, d2);
  double s = 0.0;
  for (Index k = 0; k < img.size(); ++k) {
    s += std::sqrt(std::norm(d1.data()[k]) + std::norm(d2.data()[k]) + eps * eps);
  }
  return s;
}

double tv_norm_2d(const Image2D &img) {
  if (img.rows() != img.cols()) throw InvalidArgument("tv_norm_2d: image must be square");
  return smoothed_tv_2d(img, 0.0);
}

CVector tv_delta_data(const IndexSet &omega, const CVector &data) {
  if (data.size() != omega.size()) throw InvalidArgument("tv_delta_data: data length differs from |omega|");
  const double n = static_cast<double>(omega.ambient());
  CVector out(data.size());
  for (Index i = 0; i < omega.size(); ++i) {
    const double a = -2.0 * std::numbers::pi * static_cast<double>(omega[i]) / n;
    out(i) = omega[i] == 0 ? std::complex<double>(0.0) : (1.0 - std::polar(1.0, a)) * data(i);
  }
  return out;
}

Signal1D integrate_increments(const Signal1D &delta, std::complex<double> dc_value) {
  const Index n = delta.size();
  Signal1D g(n);
  std::complex<double> acc = 0.0;
  for (Index t = 0; t < n; ++t) {
    if (t > 0) acc += delta(t);
    g(t) = acc;
  }
  const std::complex<double> shift = (dc_value - g.sum()) / static_cast<double>(n);
  g.array() += shift;
  return g;
}

Signal1D solve_tv_1d(const IndexSet &omega, const CVector &data, std::complex<double> dc_value,
                     const SolveConfig &cfg) {
  if (!omega.contains(0)) throw MissingDc("solve_tv_1d: frequency 0 must be observed");
  if (data.size() != omega.size()) throw InvalidArgument("solve_tv_1d: data length differs from |omega|");
  const PartialFourierOp op(omega.ambient(), omega);
  const RecoveryResult r = solve_p1(op, tv_delta_data(omega, data), cfg);
  return integrate_increments(r.reconstruction, dc_value);
}

Image2D min_energy_image(Index side, const IndexSet &mask, const CVector &data) {
  if (mask.ambient() != side * side) throw InvalidArgument("min_energy_image: mask size differs from side^2");
  if (data.size() != mask.size()) throw InvalidArgument("min_energy_image: data length differs from mask size");
  return project_data_2d(mask, Image2D::Zero(side, side), data);
}

CVector observe_2d(const IndexSet &mask, const Image2D &img) {
  const Index s = img.cols();
  if (img.rows() != s || mask.ambient() != s * s) throw InvalidArgument("observe_2d: mask size differs from image size");
  const Image2D fhat = dft2(img);
  CVector out(mask.size());
  for (Index i = 0; i < mask.size(); ++i) out(i) = fhat(mask[i] / s, mask[i] % s);
  return out;
}

TvResult solve_tv_2d(Index side, const IndexSet &mask, const CVector &data, const TvConfig &cfg) {
  cfg.validate();
  if (side < 1) throw InvalidArgument("solve_tv_2d: side must be positive");
  if (mask.empty()) throw InvalidArgument("solve_tv_2d: mask is empty");
  if (mask.ambient() != side * side) throw InvalidArgument("solve_tv_2d: mask size differs from side^2");
  if (data.size() != mask.size()) throw InvalidArgument("solve_tv_2d: data length differs from mask size");
  if (!all_finite(data)) throw InvalidArgument("solve_tv_2d: data contains non-finite values");

  const Index npix = side * side;
  const Index stages = cfg.eps_stages;
  const Index budget = std::max<Index>(1, cfg.max_iters / stages);
  double step = cfg.step_size > 0.0 ? cfg.step_size : 0.2 / static_cast<double>(npix);

  TvResult res;
  Image2D g = min_energy_image(side, mask, data);
  if (cfg.real_valued) g = g.real().cast<std::complex<double>>();
  Image2D d1, d2, e1, e2;
  Eigen::ArrayXd w(npix);
  Index iters = 0;
  Index stall = 0;
  bool stop = false;

  for (Index stage = 0; stage < stages && !stop; ++stage) {
    const double frac = stages == 1 ? 1.0 : static_cast<double>(stage) / static_cast<double>(stages - 1);
    const double eps = cfg.smoothing_eps_start * std::pow(cfg.tv_eps / cfg.smoothing_eps_start, frac);
    const double eps2 = eps * eps;
    const double tol = stage + 1 == stages ? cfg.final_grad_tol : cfg.stage_grad_tol;

    for (Index it = 0; it < budget; ++it) {
      if (iters >= cfg.max_iters) {
        stop = true;
        break;
      }
      differences(g, d1, d2);
      Image2D u1(side, side), u2(side, side);
      for (Index k = 0; k < npix; ++k) {
        w(k) = std::sqrt(std::norm(d1.data()[k]) + std::norm(d2.data()[k]) + eps2);
        u1.data()[k] = d1.data()[k] / w(k);
        u2.data()[k] = d2.data()[k] / w(k);
      }
      Image2D dir = project_null_2d(mask, differences_adjoint(u1, u2));
      if (cfg.real_valued) dir = dir.real().cast<std::complex<double>>();
      const double dn2 = dir.squaredNorm();
      if (std::sqrt(dn2) <= tol) break;
      differences(dir, e1, e2);

      double eta = 2.0 * step;
      double delta = 0.0;
      bool accepted = false;
      while (eta > 1e-300) {
        delta = 0.0;
        for (Index k = 0; k < npix; ++k) {
          const double nt = std::norm(d1.data()[k] - eta * e1.data()[k]) + std::norm(d2.data()[k] - eta * e2.data()[k]);
          const double n0 = std::norm(d1.data()[k]) + std::norm(d2.data()[k]);
          delta += (nt - n0) / (std::sqrt(nt + eps2) + w(k));
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
      g -= eta * dir;
      step = eta;
      ++iters;
      if (iters % cfg.reproject_every == 0) {
        g = project_data_2d(mask, g, data);
        if (cfg.real_valued) g = g.real().cast<std::complex<double>>();
      }
      stall = change < 1e-12 ? stall + 1 : 0;
      if (stall >= cfg.stall_window) {
        stop = true;
        break;
      }
    }
  }

  g = project_data_2d(mask, g, data);
  if (cfg.real_valued) g = g.real().cast<std::complex<double>>();
  const CVector got = observe_2d(mask, g);
  res.feasibility_residual = (got - data).cwiseAbs().maxCoeff() / data_scale(data);
  res.image = std::move(g);
  res.iterations_used = iters;
  return res;
}

TvResult solve_tv_2d(const StarMask &mask, const CVector &data, const TvConfig &cfg) {
  return solve_tv_2d(mask.side, mask.indices, data, cfg);
}

} // namespace pfrec
