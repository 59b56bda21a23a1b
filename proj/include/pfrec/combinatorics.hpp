#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pfrec/core.hpp"

namespace pfrec {

using BigInt = boost::multiprecision::cpp_int;

/// Exact tables of Stirling numbers of the second kind S(n, k) and of
/// no-singleton partition counts P(n, k) for 0 <= k <= n <= max_n.
class PartitionTables {
public:
  explicit PartitionTables(int max_n);

  int max_n() const noexcept { return max_n_; }
  /// Throws InvalidArgument unless 0 <= k <= n <= max_n.
  const BigInt &stirling(int n, int k) const;
  const BigInt &no_singleton(int n, int k) const;
  BigInt bell(int n) const;

private:
  void check(int n, int k) const;

  int max_n_;
  std::vector<std::vector<BigInt>> s_;
  std::vector<std::vector<BigInt>> p_;
};

/// S(n+1, k) = S(n, k-1) + k S(n, k), S(0, 0) = 1.
BigInt stirling(int n, int k);
/// P(n, k) = k P(n-1, k) + (n-1) P(n-2, k-1), P(0, 0) = 1.
BigInt no_singleton_count(int n, int k);

/// A set partition of {0, .., n-1} as a restricted growth string: labels[0] = 0
/// and labels[i] <= 1 + max(labels[0..i-1]).
using SetPartition = std::vector<int>;

int block_count(const SetPartition &p);
std::vector<int> block_sizes(const SetPartition &p);

/// Calls `fn` on every set partition of an n-set (n = 0 gives one empty partition).
void for_each_set_partition(int n, const std::function<void(const SetPartition &)> &fn);

/// F_n(tau) = sum_{k=1}^n (k-1)! S(n, k) (-1)^{n-k} tau^k. Requires n >= 1 and
/// 0 <= tau < 1/2.
double f_tau(int n, double tau);

/// Series form sum_{k=1}^{terms} (-1)^{n+k} tau^k k^{n-1} / (1 - tau)^k.
long double f_tau_series(int n, double tau, int terms = 200);

/// G_u(n) with u = tau / (1 - tau).
double f_tau_bound(int n, double tau);

/// G_u(n) for a given u in (0, 1).
double g_bound(double u, int n);

/// One term of the inclusion-exclusion expansion of a sum over exact
/// coincidence pattern `sim` into sums over coarser patterns.
struct IeTerm {
  SetPartition coarser;
  std::int64_t coefficient = 0;
};

/// Coarser partitions sim1 >= sim with coefficient
/// (-1)^{|A/sim| - |A/sim1|} prod_{A' in A/sim1} (|A'/sim| - 1)!.
std::vector<IeTerm> inclusion_exclusion_terms(const SetPartition &sim);

/// Largest |LHS - RHS| of the inclusion-exclusion identity over all
/// partitions of A, for a random complex function on G^|A| drawn from `seed`.
/// Throws UnsupportedSize when either size exceeds 4.
double inclusion_exclusion_discrepancy(int set_size, int ground_size, std::uint64_t seed = 1);

/// True iff the discrepancy is below 1e-9.
bool inclusion_exclusion_check(int set_size, int ground_size, std::uint64_t seed = 1);

enum class SignConvention { uncorrected, corrected };

/// E[Tr(H0^{2n})] summed over no-singleton partitions of the 2n positions and
/// T-tuples with t_j != t_{j+1} (cyclically). A class contributes
/// N Phi_{|A'|}(tau) when its displacement sum vanishes modulo N, else 0.
/// Phi_m = F_m (uncorrected) or (-1)^{m+1} F_m (corrected). Requires |T| <= 8,
/// 1 <= n <= 3 and 0 <= tau < 1/2; throws UnsupportedSize beyond that.
double expected_trace_formula(Index n_ambient, const IndexSet &t_set, double tau, int n,
                              SignConvention convention = SignConvention::corrected);

/// Exact E[Tr(H0^{2n})] by summing over all 2^N frequency subsets with
/// Bernoulli(tau) weights. Requires N <= 14.
double expected_trace_enumeration(Index n_ambient, const IndexSet &t_set, double tau, int n);

struct MomentBoundInputs {
  int n = 1;
  double tau = 0.1;
  Index t_size = 1;
  Index n_ambient = 1;

  /// e log((1 - tau) / tau)
  double c_tau() const;
  /// 2 phi^2 / (1 - tau)
  double gamma2() const;
};

inline constexpr double kGoldenRatio = 1.6180339887498948482;

struct MomentBound {
  double log_a_n = 0.0;
  double log_b_n = 0.0;
  double log_bound = 0.0;
  double a_n = 0.0;
  double b_n = 0.0;
  double bound = 0.0;
  /// a_n <= 2^{n+1} e^{-n} n^n (tau/(1-tau))^n N^n |T|^n
  bool n_small_holds = false;
  /// 2 e^{-n} gamma^{2n} n^{n+1} (tau N)^n |T|^{n+1}, set when n_small_holds.
  std::optional<double> simplified;
};

/// n phi^{2n} max(a_n, b_n) with both terms formed in log space.
MomentBound moment_bound(const MomentBoundInputs &in);

struct LogInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// (n - 1) log r + log n + 1/(2n) <= log s with
/// r = (1-tau)^3 / (e alpha^2 phi^2 log((1-tau)/tau)^2), s = tau c_tau / (1 - tau).
LogInequality log_inequality(double tau, int n, double alpha = 1.0);

struct TheoremParams {
  double alpha_m = 0.0;
  double eps_m = 0.0;
  Index n_iter = 0;
  Index support_cap = 0;
};

/// Throws VacuousRegime when tau N <= M ln N, InvalidArgument on bad inputs.
TheoremParams theorem_params(double m, Index n_ambient, double tau);

/// Chernoff-type bound N^{-M} on P(|omega| < (1 - eps_M) tau N).
double binomial_tail_bound(double m, Index n_ambient);

/// f(k) = N^k |T|^{2n-k} (2n-1)(2n-3)...(2n-2k+1) G(2)^{k-1} G(2n-2k+2), k = 1..n,
/// with G = G_{tau/(1-tau)}. Element k-1 holds f(k).
std::vector<long double> f_k_values(int n, const MomentBoundInputs &in);

/// Discrete convexity f(k+1) - f(k) >= f(k) - f(k-1) for 2 <= k <= n-1.
bool convexity_check_f_k(int n, const MomentBoundInputs &in);

} // namespace pfrec
