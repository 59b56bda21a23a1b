#include "pfrec/combinatorics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "pfrec/rng.hpp"

namespace pfrec {

PartitionTables::PartitionTables(int max_n) : max_n_(max_n) {
  if (max_n < 0) throw InvalidArgument("PartitionTables: max_n must be non-negative");
  const auto rows = static_cast<std::size_t>(max_n + 1);
  s_.assign(rows, std::vector<BigInt>(rows, BigInt(0)));
  p_.assign(rows, std::vector<BigInt>(rows, BigInt(0)));
  s_[0][0] = 1;
  p_[0][0] = 1;
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 1; k <= n; ++k) {
      s_[n][k] = s_[n - 1][k - 1] + BigInt(k) * s_[n - 1][k];
    }
    for (int k = 0; k <= n; ++k) {
      BigInt v = BigInt(k) * p_[n - 1][k];
      if (n >= 2 && k >= 1) v += BigInt(n - 1) * p_[n - 2][k - 1];
      p_[n][k] = v;
    }
  }
}

void PartitionTables::check(int n, int k) const {
  if (n < 0 || k < 0 || k > n || n > max_n_) {
    throw InvalidArgument("PartitionTables: need 0 <= k <= n <= max_n");
  }
}

const BigInt &PartitionTables::stirling(int n, int k) const {
  check(n, k);
  return s_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

const BigInt &PartitionTables::no_singleton(int n, int k) const {
  check(n, k);
  return p_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

BigInt PartitionTables::bell(int n) const {
  BigInt b = 0;
  for (int k = 0; k <= n; ++k) b += stirling(n, k);
  return b;
}

BigInt stirling(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InvalidArgument("stirling: need 0 <= k <= n");
  return PartitionTables(n).stirling(n, k);
}

BigInt no_singleton_count(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InvalidArgument("no_singleton_count: need 0 <= k <= n");
  return PartitionTables(n).no_singleton(n, k);
}

int block_count(const SetPartition &p) {
  int m = 0;
  for (int l : p) m = std::max(m, l + 1);
  return m;
}

std::vector<int> block_sizes(const SetPartition &p) {
  std::vector<int> sizes(static_cast<std::size_t>(block_count(p)), 0);
  for (int l : p) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

namespace {

void partitions_rec(SetPartition &cur, int pos, int used, const std::function<void(const SetPartition &)> &fn) {
  if (pos == static_cast<int>(cur.size())) {
    fn(cur);
    return;
  }
  for (int l = 0; l <= used; ++l) {
    cur[static_cast<std::size_t>(pos)] = l;
    partitions_rec(cur, pos + 1, l == used ? used + 1 : used, fn);
  }
}

std::int64_t factorial(int m) {
  std::int64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// Every block of `fine` lies inside one block of `coarse`.
bool refines(const SetPartition &fine, const SetPartition &coarse) {
  std::vector<int> image(static_cast<std::size_t>(block_count(fine)), -1);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    int &img = image[static_cast<std::size_t>(fine[i])];
    if (img < 0) {
      img = coarse[i];
    } else if (img != coarse[i]) {
      return false;
    }
  }
  return true;
}

void check_tau(double tau, const char *who) {
  if (!(tau >= 0.0 && tau < 0.5)) throw InvalidArgument(std::string(who) + ": tau must lie in [0, 1/2)");
}

} // namespace

void for_each_set_partition(int n, const std::function<void(const SetPartition &)> &fn) {
  if (n < 0) throw InvalidArgument("for_each_set_partition: n must be non-negative");
  SetPartition cur(static_cast<std::size_t>(n), 0);
  if (n == 0) {
    fn(cur);
    return;
  }
  partitions_rec(cur, 1, 1, fn);
}

double f_tau(int n, double tau) {
  if (n < 1) throw InvalidArgument("f_tau: n must be at least 1");
  check_tau(tau, "f_tau");
  const PartitionTables tables(n);
  long double sum = 0.0L;
  long double fact = 1.0L; // (k-1)!
  for (int k = 1; k <= n; ++k) {
    if (k > 1) fact *= static_cast<long double>(k - 1);
    const long double s = tables.stirling(n, k).convert_to<long double>();
    const long double sign = ((n - k) % 2 == 0) ? 1.0L : -1.0L;
    sum += sign * fact * s * std::pow(static_cast<long double>(tau), k);
  }
  return static_cast<double>(sum);
}

long double f_tau_series(int n, double tau, int terms) {
  if (n < 1) throw InvalidArgument("f_tau_series: n must be at least 1");
  check_tau(tau, "f_tau_series");
  const long double u = static_cast<long double>(tau) / (1.0L - static_cast<long double>(tau));
  long double sum = 0.0L;
  long double uk = 1.0L;
  for (int k = 1; k <= terms; ++k) {
    uk *= u;
    const long double sign = ((n + k) % 2 == 0) ? 1.0L : -1.0L;
    sum += sign * uk * std::pow(static_cast<long double>(k), n - 1);
  }
  return sum;
}

double g_bound(double u, int n) {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("g_bound: u must lie in (0, 1)");
  if (n < 1) throw InvalidArgument("g_bound: n must be at least 1");
  if (std::log(u) <= 1.0 - n) return u;
  const double m = static_cast<double>(n - 1);
  return std::exp(m * (std::log(m) - std::log(std::log(1.0 / u)) - 1.0));
}

double f_tau_bound(int n, double tau) {
  check_tau(tau, "f_tau_bound");
  if (!(tau > 0.0)) throw InvalidArgument("f_tau_bound: tau must be positive");
  return g_bound(tau / (1.0 - tau), n);
}

std::vector<IeTerm> inclusion_exclusion_terms(const SetPartition &sim) {
  const int n = static_cast<int>(sim.size());
  const int k = block_count(sim);
  std::vector<IeTerm> out;
  for_each_set_partition(n, [&](const SetPartition &sim1) {
    if (!refines(sim, sim1)) return;
    const int k1 = block_count(sim1);
    // |A'/sim| for each block A' of sim1.
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(k1), std::vector<bool>(static_cast<std::size_t>(k), false));
    std::vector<int> inner(static_cast<std::size_t>(k1), 0);
    for (int i = 0; i < n; ++i) {
      auto b1 = static_cast<std::size_t>(sim1[static_cast<std::size_t>(i)]);
      auto b = static_cast<std::size_t>(sim[static_cast<std::size_t>(i)]);
      if (!seen[b1][b]) {
        seen[b1][b] = true;
        ++inner[b1];
      }
    }
    std::int64_t coef = ((k - k1) % 2 == 0) ? 1 : -1;
    for (int c : inner) coef *= factorial(c - 1);
    out.push_back({sim1, coef});
  });
  return out;
}

double inclusion_exclusion_discrepancy(int set_size, int ground_size, std::uint64_t seed) {
  if (set_size < 1 || ground_size < 1) throw InvalidArgument("inclusion_exclusion: sizes must be positive");
  if (set_size > 4 || ground_size > 4) throw UnsupportedSize("inclusion_exclusion: sizes are limited to 4");
  Rng rng(seed);
  Index tuples = 1;
  for (int i = 0; i < set_size; ++i) tuples *= ground_size;
  std::vector<std::complex<double>> f(static_cast<std::size_t>(tuples));
  for (auto &v : f) v = rng.complex_normal();

  // Coincidence pattern of every tuple, as a restricted growth string.
  std::vector<SetPartition> pattern(static_cast<std::size_t>(tuples));
  std::vector<std::vector<int>> digits(static_cast<std::size_t>(tuples));
  for (Index idx = 0; idx < tuples; ++idx) {
    std::vector<int> w(static_cast<std::size_t>(set_size));
    Index r = idx;
    for (int i = 0; i < set_size; ++i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(r % ground_size);
      r /= ground_size;
    }
    SetPartition p(static_cast<std::size_t>(set_size));
    std::vector<int> relabel(static_cast<std::size_t>(ground_size), -1);
    int next = 0;
    for (int i = 0; i < set_size; ++i) {
      int &lab = relabel[static_cast<std::size_t>(w[static_cast<std::size_t>(i)])];
      if (lab < 0) lab = next++;
      p[static_cast<std::size_t>(i)] = lab;
    }
    pattern[static_cast<std::size_t>(idx)] = std::move(p);
    digits[static_cast<std::size_t>(idx)] = std::move(w);
  }

  const auto sum_exact = [&](const SetPartition &sim) {
    std::complex<double> s = 0.0;
    for (Index idx = 0; idx < tuples; ++idx) {
      if (pattern[static_cast<std::size_t>(idx)] == sim) s += f[static_cast<std::size_t>(idx)];
    }
    return s;
  };
  // Tuples whose coincidence pattern is coarser than or equal to sim1.
  const auto sum_at_least = [&](const SetPartition &sim1) {
    std::complex<double> s = 0.0;
    for (Index idx = 0; idx < tuples; ++idx) {
      if (refines(sim1, pattern[static_cast<std::size_t>(idx)])) s += f[static_cast<std::size_t>(idx)];
    }
    return s;
  };

  double worst = 0.0;
  for_each_set_partition(set_size, [&](const SetPartition &sim) {
    const std::complex<double> lhs = sum_exact(sim);
    std::complex<double> rhs = 0.0;
    for (const IeTerm &term : inclusion_exclusion_terms(sim)) {
      rhs += static_cast<double>(term.coefficient) * sum_at_least(term.coarser);
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  });
  return worst;
}

bool inclusion_exclusion_check(int set_size, int ground_size, std::uint64_t seed) {
  return inclusion_exclusion_discrepancy(set_size, ground_size, seed) < 1e-9;
}

double expected_trace_formula(Index n_ambient, const IndexSet &t_set, double tau, int n,
                              SignConvention convention) {
  if (n_ambient < 1 || t_set.ambient() != n_ambient) throw InvalidArgument("expected_trace_formula: T must live in Z_N");
  if (t_set.size() > 8 || n < 1 || n > 3) throw UnsupportedSize("expected_trace_formula: needs |T| <= 8 and 1 <= n <= 3");
  check_tau(tau, "expected_trace_formula");
  const int len = 2 * n;
  std::vector<double> phi(static_cast<std::size_t>(len + 1), 0.0);
  for (int m = 1; m <= len; ++m) {
    const double fm = f_tau(m, tau);
    phi[static_cast<std::size_t>(m)] =
        convention == SignConvention::uncorrected ? fm : (m % 2 == 1 ? fm : -fm);
  }

  std::vector<SetPartition> parts;
  for_each_set_partition(len, [&](const SetPartition &p) {
    for (int s : block_sizes(p)) {
      if (s == 1) return;
    }
    parts.push_back(p);
  });

  const Index k = t_set.size();
  if (k < 2) return 0.0;
  const auto nn = static_cast<double>(n_ambient);
  double total = 0.0;
  std::vector<Index> idx(static_cast<std::size_t>(len), 0);
  std::vector<Index> t(static_cast<std::size_t>(len));
  std::vector<Index> disp(static_cast<std::size_t>(len));
  while (true) {
    bool ok = true;
    for (int j = 0; j < len; ++j) t[static_cast<std::size_t>(j)] = t_set[idx[static_cast<std::size_t>(j)]];
    for (int j = 0; j < len && ok; ++j) {
      const Index a = t[static_cast<std::size_t>(j)];
      const Index b = t[static_cast<std::size_t>((j + 1) % len)];
      if (a == b) ok = false;
      disp[static_cast<std::size_t>(j)] = a - b;
    }
    if (ok) {
      for (const SetPartition &p : parts) {
        const int kb = block_count(p);
        std::vector<Index> sums(static_cast<std::size_t>(kb), 0);
        for (int j = 0; j < len; ++j) sums[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += disp[static_cast<std::size_t>(j)];
        double term = 1.0;
        for (Index s : sums) {
          if (s % n_ambient != 0) {
            term = 0.0;
            break;
          }
        }
        if (term == 0.0) continue;
        for (int s : block_sizes(p)) term *= nn * phi[static_cast<std::size_t>(s)];
        total += term;
      }
    }
    int pos = 0;
    while (pos < len && ++idx[static_cast<std::size_t>(pos)] == k) {
      idx[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == len) break;
  }
  return total;
}

double expected_trace_enumeration(Index n_ambient, const IndexSet &t_set, double tau, int n) {
  if (n_ambient < 1 || t_set.ambient() != n_ambient) throw InvalidArgument("expected_trace_enumeration: T must live in Z_N");
  if (n_ambient > 14) throw UnsupportedSize("expected_trace_enumeration: N must be at most 14");
  if (n < 1) throw InvalidArgument("expected_trace_enumeration: n must be at least 1");
  if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidArgument("expected_trace_enumeration: tau must lie in [0, 1]");
  const Index k = t_set.size();
  if (k == 0) return 0.0;
  const double two_pi = 2.0 * std::numbers::pi;
  // e^{2 pi i w u / N} for all w, u.
  CMatrix roots(n_ambient, n_ambient);
  for (Index w = 0; w < n_ambient; ++w) {
    for (Index u = 0; u < n_ambient; ++u) {
      const double a = two_pi * static_cast<double>((w * u) % n_ambient) / static_cast<double>(n_ambient);
      roots(w, u) = {std::cos(a), std::sin(a)};
    }
  }
  long double total = 0.0L;
  const std::uint64_t subsets = std::uint64_t{1} << n_ambient;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    const int size = __builtin_popcountll(mask);
    const long double weight = std::pow(static_cast<long double>(tau), size) *
                               std::pow(1.0L - static_cast<long double>(tau), static_cast<int>(n_ambient) - size);
    if (weight == 0.0L) continue;
    CMatrix h0 = CMatrix::Zero(k, k);
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < k; ++j) {
        if (i == j) continue;
        const Index u = ((t_set[i] - t_set[j]) % n_ambient + n_ambient) % n_ambient;
        std::complex<double> c = 0.0;
        for (Index w = 0; w < n_ambient; ++w) {
          if (mask >> w & 1U) c += roots(w, u);
        }
        h0(i, j) = -c;
      }
    }
    const CMatrix h2 = h0 * h0;
    CMatrix p = CMatrix::Identity(k, k);
    for (int i = 0; i < n; ++i) p = p * h2;
    total += weight * static_cast<long double>(p.trace().real());
  }
  return static_cast<double>(total);
}

double MomentBoundInputs::c_tau() const { return std::numbers::e * std::log((1.0 - tau) / tau); }

double MomentBoundInputs::gamma2() const { return 2.0 * kGoldenRatio * kGoldenRatio / (1.0 - tau); }

MomentBound moment_bound(const MomentBoundInputs &in) {
  if (!(in.tau > 0.0 && in.tau < 0.5)) throw InvalidArgument("moment_bound: tau must lie in (0, 1/2)");
  if (in.n < 1 || in.t_size < 1 || in.n_ambient < 1) throw InvalidArgument("moment_bound: n, |T| and N must be positive");
  const double n = in.n;
  const double logn_amb = std::log(static_cast<double>(in.n_ambient));
  const double logt = std::log(static_cast<double>(in.t_size));
  const double logu = std::log(in.tau / (1.0 - in.tau));
  MomentBound r;
  r.log_a_n = 2.0 * n * std::log(2.0 * n - 1.0) - (2.0 * n - 1.0) * std::log(in.c_tau()) + logn_amb + 2.0 * n * logt;
  // log((2n)! / (n! 2^n))
  const double log_double_fact = std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0) - n * std::log(2.0);
  r.log_b_n = log_double_fact + n * logu + n * logn_amb + (n + 1.0) * logt;
  r.log_bound = std::log(n) + 2.0 * n * std::log(kGoldenRatio) + std::max(r.log_a_n, r.log_b_n);
  r.a_n = std::exp(r.log_a_n);
  r.b_n = std::exp(r.log_b_n);
  r.bound = std::exp(r.log_bound);
  const double log_gate = (n + 1.0) * std::log(2.0) - n + n * std::log(n) + n * logu + n * logn_amb + n * logt;
  r.n_small_holds = r.log_a_n <= log_gate;
  if (r.n_small_holds) {
    const double tau_n = in.tau * static_cast<double>(in.n_ambient);
    r.simplified = std::exp(std::log(2.0) - n + n * std::log(in.gamma2()) + (n + 1.0) * std::log(n) +
                            n * std::log(tau_n) + (n + 1.0) * logt);
  }
  return r;
}

LogInequality log_inequality(double tau, int n, double alpha) {
  if (!(tau > 0.0 && tau < 0.5)) throw InvalidArgument("log_inequality: tau must lie in (0, 1/2)");
  if (n < 1 || !(alpha > 0.0)) throw InvalidArgument("log_inequality: need n >= 1 and alpha > 0");
  const double phi2 = kGoldenRatio * kGoldenRatio;
  const double l = std::log((1.0 - tau) / tau);
  const double r = std::pow(1.0 - tau, 3) / (std::numbers::e * alpha * alpha * phi2 * l * l);
  const double s = tau / (1.0 - tau) * std::numbers::e * l;
  LogInequality out;
  out.lhs = (n - 1) * std::log(r) + std::log(static_cast<double>(n)) + 1.0 / (2.0 * n);
  out.rhs = std::log(s);
  out.holds = out.lhs <= out.rhs;
  return out;
}

TheoremParams theorem_params(double m, Index n_ambient, double tau) {
  if (!(m > 0.0)) throw InvalidArgument("theorem_params: M must be positive");
  if (n_ambient < 2) throw InvalidArgument("theorem_params: N must be at least 2");
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("theorem_params: tau must lie in (0, 1)");
  const double logn = std::log(static_cast<double>(n_ambient));
  const double tau_n = tau * static_cast<double>(n_ambient);
  if (tau_n <= m * logn) throw VacuousRegime("theorem_params: tau N <= M log N, the guarantee is vacuous");
  TheoremParams p;
  p.eps_m = std::sqrt(2.0 * m * logn / tau_n);
  p.n_iter = static_cast<Index>(std::llround((m + 1.0) * logn));
  p.alpha_m = 1.0 / (29.6 * (m + 1.0));
  p.support_cap = static_cast<Index>(std::floor(p.alpha_m * tau_n / logn));
  return p;
}

double binomial_tail_bound(double m, Index n_ambient) {
  return std::pow(static_cast<double>(n_ambient), -m);
}

namespace {

// f(k) for k = 0..n; f(0) continues the same formula.
std::vector<long double> f_k_extended(int n, const MomentBoundInputs &in) {
  if (n < 1 || n > 30) throw InvalidArgument("f_k: n must lie in [1, 30]");
  if (!(in.tau > 0.0 && in.tau < 0.5)) throw InvalidArgument("f_k: tau must lie in (0, 1/2)");
  const double u = in.tau / (1.0 - in.tau);
  const auto big_n = static_cast<long double>(in.n_ambient);
  const auto t = static_cast<long double>(in.t_size);
  const long double g2 = g_bound(u, 2);
  std::vector<long double> f(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    long double prod = 1.0L;
    for (int j = 0; j < k; ++j) prod *= static_cast<long double>(2 * n - 1 - 2 * j);
    f[static_cast<std::size_t>(k)] = std::pow(big_n, k) * std::pow(t, 2 * n - k) * prod *
                                     std::pow(g2, k - 1) * static_cast<long double>(g_bound(u, 2 * n - 2 * k + 2));
  }
  return f;
}

} // namespace

std::vector<long double> f_k_values(int n, const MomentBoundInputs &in) {
  auto f = f_k_extended(n, in);
  f.erase(f.begin());
  return f;
}

bool convexity_check_f_k(int n, const MomentBoundInputs &in) {
  const auto f = f_k_extended(n, in);
  for (int k = 1; k <= n - 1; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (f[i + 1] - f[i] < f[i] - f[i - 1]) return false;
  }
  return true;
}

} // namespace pfrec
