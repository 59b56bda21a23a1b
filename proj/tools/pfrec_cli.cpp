// Command-line front end. Exit codes: 0 success, 2 invalid arguments, 1 internal failure.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfrec/bench.hpp"
#include "pfrec/certificate.hpp"
#include "pfrec/combinatorics.hpp"
#include "pfrec/io.hpp"
#include "pfrec/rng.hpp"
#include "pfrec/sampling.hpp"

namespace {

using namespace pfrec;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string &msg) {
  if (!ok) throw Usage(msg);
}

std::filesystem::path prepare_dir(const std::string &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  return dir;
}

int cmd_recover(Index n, Index omega, Index spikes, std::uint64_t seed, Index trials) {
  require(n >= 1, "--n must be positive");
  require(omega >= 1 && omega <= n, "--omega must lie in [1, n]");
  require(spikes >= 0 && spikes <= n, "--spikes must lie in [0, n]");
  require(trials >= 1, "--trials must be positive");
  Index successes = 0;
  for (Index i = 0; i < trials; ++i) {
    Rng rng(hash64(seed, 0, static_cast<std::uint64_t>(i)));
    const SparseSignal s = gen_sparse_signal(n, spikes, rng);
    const IndexSet om = uniform_omega(n, omega, rng);
    const PartialFourierOp op(n, om);
    const RecoveryResult r = solve_p1(op, observe(op, s.signal), {}, s.signal);
    successes += r.exact ? 1 : 0;
    std::printf("trial %lld rel_error %.3e iterations %lld %s\n", static_cast<long long>(i), r.rel_l2_error,
                static_cast<long long>(r.iterations_used), r.exact ? "exact" : "inexact");
  }
  std::printf("successes %lld/%lld\n", static_cast<long long>(successes), static_cast<long long>(trials));
  return 0;
}

std::vector<Index> parse_ints(const std::string &s) {
  std::vector<Index> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception &) {
      throw Usage("not an integer: '" + tok + "'");
    }
    require(used == tok.size(), "not an integer: '" + tok + "'");
    out.push_back(static_cast<Index>(v));
  }
  require(!out.empty(), "empty integer list");
  return out;
}

std::vector<double> parse_reals(const std::string &s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double v = 0.0;
    const auto slash = tok.find('/');
    try {
      std::size_t used = 0;
      if (slash != std::string::npos) {
        const double num = std::stod(tok.substr(0, slash), &used);
        require(used == slash, "not a number: '" + tok + "'");
        const std::string den_s = tok.substr(slash + 1);
        const double den = std::stod(den_s, &used);
        require(used == den_s.size() && den != 0.0, "not a number: '" + tok + "'");
        v = num / den;
      } else {
        v = std::stod(tok, &used);
        require(used == tok.size(), "not a number: '" + tok + "'");
      }
    } catch (const std::logic_error &) {
      throw Usage("not a number: '" + tok + "'");
    }
    out.push_back(v);
  }
  require(!out.empty(), "empty number list");
  return out;
}

int cmd_phase(const RunConfig &cfg, const std::string &kind) {
  require(kind == "p1" || kind == "cert", "--kind must be p1 or cert");
  const PhaseKind k = kind == "p1" ? PhaseKind::p1_recovery : PhaseKind::certificate_sufficiency;
  try {
    cfg.validate();
  } catch (const InvalidArgument &e) {
    throw Usage(e.what());
  }
  const PhaseGrid grid = run_phase_diagram(cfg, k);
  const auto dir = prepare_dir(cfg.out_dir);
  const auto csv = dir / ("phase_" + kind + ".csv");
  write_csv(grid, csv.string());
  Image2D heat(static_cast<Index>(grid.omega_sizes.size()), static_cast<Index>(grid.ratio_bins.size()));
  for (std::size_t i = 0; i < grid.omega_sizes.size(); ++i) {
    for (std::size_t j = 0; j < grid.ratio_bins.size(); ++j) heat(static_cast<Index>(i), static_cast<Index>(j)) = grid.rate(i, j);
  }
  write_pgm(heat, (dir / ("phase_" + kind + ".pgm")).string());
  std::fputs(csv_string(grid).c_str(), stdout);
  std::printf("wrote %s\n", csv.string().c_str());
  return 0;
}

int cmd_tv2d(const std::string &phantom, Index side, Index lines, std::uint64_t seed, const std::string &out) {
  require(phantom == "logan" || phantom == "random", "--phantom must be logan or random");
  require(side >= 8, "--side must be at least 8");
  require(lines >= 1, "--lines must be at least 1");
  RunConfig cfg;
  cfg.seed = seed;
  const PhantomRun run = run_phantom(cfg, phantom == "logan" ? PhantomKind::logan_shepp : PhantomKind::random_ellipses,
                                     side, lines);
  const auto dir = prepare_dir(out);
  write_pgm(run.truth, (dir / "truth.pgm").string());
  write_pgm(run.min_energy, (dir / "min_energy.pgm").string());
  write_pgm(run.tv, (dir / "tv.pgm").string());
  write_pgm(mask_image(run.mask), (dir / "mask.pgm").string());
  std::printf("mask_size %lld of %lld\n", static_cast<long long>(run.mask.indices.size()),
              static_cast<long long>(side * side));
  std::printf("min_energy_error %.6e\ntv_error %.6e\niterations %lld\n", run.min_energy_error, run.tv_error,
              static_cast<long long>(run.details.iterations_used));
  return 0;
}

int cmd_certify(Index n, Index omega, Index spikes, std::uint64_t seed, const std::string &method, Index terms) {
  require(n >= 1, "--n must be positive");
  require(omega >= 1 && omega <= n, "--omega must lie in [1, n]");
  require(spikes >= 1 && spikes <= n, "--spikes must lie in [1, n]");
  require(method == "direct" || method == "neumann", "--method must be direct or neumann");
  require(terms >= 1, "--terms must be positive");
  Rng rng(seed);
  const SparseSignal s = gen_sparse_signal(n, spikes, rng);
  const IndexSet om = uniform_omega(n, omega, rng);
  const Signal1D sgn = sign_pattern(s.signal);
  const CertificateReport r = method == "direct" ? build_certificate_direct(s.support, om, sgn)
                                                 : build_certificate_neumann(s.support, om, sgn, terms);
  std::printf("method %s\ninvertible %s\nsigma_min_normalized %.6e\n", method.c_str(), r.invertible ? "true" : "false",
              r.sigma_min_normalized);
  if (r.invertible) {
    std::printf("sign_match_residual %.3e\noff_support_max %.6f\nspectrum_leak %.3e\n", r.sign_match_residual,
                r.off_support_max, r.spectrum_leak);
    if (r.neumann) {
      std::printf("p0_off_support_max %.6f\np1_off_support_max %.6f\nremainder_frobenius %.3e\n",
                  r.neumann->p0_off_support_max, r.neumann->p1_off_support_max, r.neumann->remainder_frobenius);
    }
  }
  std::printf("certificate_valid %s\n", r.valid() ? "true" : "false");
  return 0;
}

int cmd_comb_verify(int max_n) {
  require(max_n >= 1 && max_n <= 12, "--max-n must lie in [1, 12]");
  bool all = true;
  const auto row = [&](const std::string &name, bool ok) {
    all = all && ok;
    std::printf("%-40s %s\n", name.c_str(), ok ? "PASS" : "FAIL");
  };
  const PartitionTables tables(max_n);
  for (int n = 0; n <= max_n; ++n) {
    std::vector<BigInt> s_count(static_cast<std::size_t>(n + 1), 0), p_count(static_cast<std::size_t>(n + 1), 0);
    for_each_set_partition(n, [&](const SetPartition &p) {
      const auto sizes = block_sizes(p);
      s_count[sizes.size()] += 1;
      if (std::none_of(sizes.begin(), sizes.end(), [](int z) { return z == 1; })) p_count[sizes.size()] += 1;
    });
    bool s_ok = true, p_ok = true;
    for (int k = 0; k <= n; ++k) {
      s_ok = s_ok && tables.stirling(n, k) == s_count[static_cast<std::size_t>(k)];
      p_ok = p_ok && tables.no_singleton(n, k) == p_count[static_cast<std::size_t>(k)];
    }
    row("stirling n=" + std::to_string(n), s_ok);
    row("no_singleton n=" + std::to_string(n), p_ok);
  }
  for (double tau : {0.1, 0.25, 0.4}) {
    bool ok = true;
    for (int n = 1; n <= std::min(max_n, 8); ++n) {
      ok = ok && std::abs(static_cast<long double>(f_tau(n, tau)) - f_tau_series(n, tau)) <= 1e-10L;
    }
    row("poly/series tau=" + format_ratio(tau), ok);
  }
  for (int a = 1; a <= 4; ++a) {
    for (int g = 1; g <= 4; ++g) {
      row("inclusion-exclusion |A|=" + std::to_string(a) + " |G|=" + std::to_string(g),
          inclusion_exclusion_check(a, g));
    }
  }
  for (double tau : {0.1, 0.3}) {
    bool ok = true;
    for (Index big_n = 2; big_n <= 8; ++big_n) {
      for (int n = 1; n <= 2; ++n) {
        const IndexSet t(big_n, {0, 1});
        const double exact = expected_trace_enumeration(big_n, t, tau, n);
        const double formula = expected_trace_formula(big_n, t, tau, n);
        ok = ok && std::abs(exact - formula) <= 1e-9 * std::max(1.0, std::abs(exact));
      }
    }
    row("trace formula tau=" + format_ratio(tau), ok);
  }
  bool ineq = true;
  for (double tau : {0.05, 0.1, 0.2, 0.3, 0.4, 0.44}) {
    for (int n = 4; n <= 40; ++n) ineq = ineq && log_inequality(tau, n).holds;
  }
  row("log inequality tau<=0.44 n>=4", ineq);
  return all ? 0 : 1;
}

int cmd_params(double m, Index n, double tau) {
  require(m > 0.0, "--M must be positive");
  require(n >= 2, "--n must be at least 2");
  require(tau > 0.0 && tau < 1.0, "--tau must lie in (0, 1)");
  const TheoremParams p = theorem_params(m, n, tau);
  std::printf("alpha_M %.6f\neps_M %.6f\nn_iter %lld\nsupport_cap %lld\n", p.alpha_m, p.eps_m,
              static_cast<long long>(p.n_iter), static_cast<long long>(p.support_cap));
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sparse and piecewise-constant recovery from partial Fourier data"};
  app.require_subcommand(1);

  Index n = 512, omega = 64, spikes = 8, trials = 1, side = 64, lines = 22, terms = 20;
  std::uint64_t seed = 1;
  int parallelism = 1, max_n = 8;
  double m_param = 1.0, tau = 0.125;
  std::string omega_list = "16,32,64,128", ratios = "1/16,1/8,3/16,1/4,5/16,3/8,7/16,1/2";
  std::string kind = "p1", out = ".", phantom = "logan", method = "direct";

  auto *recover = app.add_subcommand("recover", "Recover random sparse signals by l1 minimization");
  recover->add_option("--n", n, "Signal length")->required();
  recover->add_option("--omega", omega, "Number of observed frequencies")->required();
  recover->add_option("--spikes", spikes, "Support size")->required();
  recover->add_option("--seed", seed, "Random seed")->required();
  recover->add_option("--trials", trials, "Number of trials");

  auto *phase = app.add_subcommand("phase-diagram", "Monte-Carlo success rates over a grid");
  phase->add_option("--n", n, "Signal length")->required();
  phase->add_option("--omega-list", omega_list, "Comma-separated |omega| values")->required();
  phase->add_option("--ratios", ratios, "Comma-separated |T|/|omega| values (a/b allowed)")->required();
  phase->add_option("--trials", trials, "Trials per cell")->required();
  phase->add_option("--kind", kind, "p1 or cert")->required();
  phase->add_option("--out", out, "Output directory")->required();
  phase->add_option("--seed", seed, "Random seed");
  phase->add_option("--parallelism", parallelism, "Worker threads");

  auto *tv2d = app.add_subcommand("tv2d", "Total-variation phantom reconstruction");
  tv2d->add_option("--phantom", phantom, "logan or random")->required();
  tv2d->add_option("--side", side, "Image side")->required();
  tv2d->add_option("--lines", lines, "Radial lines in the mask")->required();
  tv2d->add_option("--seed", seed, "Random seed")->required();
  tv2d->add_option("--out", out, "Output directory")->required();

  auto *certify = app.add_subcommand("certify", "Build and check a dual certificate");
  certify->add_option("--n", n, "Signal length")->required();
  certify->add_option("--omega", omega, "Number of observed frequencies")->required();
  certify->add_option("--spikes", spikes, "Support size")->required();
  certify->add_option("--seed", seed, "Random seed")->required();
  certify->add_option("--method", method, "direct or neumann");
  certify->add_option("--terms", terms, "Neumann terms");

  auto *comb = app.add_subcommand("comb", "Combinatorial identity checks");
  auto *verify = comb->add_subcommand("verify", "Print a pass/fail matrix");
  comb->require_subcommand(1);
  verify->add_option("--max-n", max_n, "Largest n for partition tables");

  auto *params = app.add_subcommand("params", "Theorem parameter calculator");
  params->add_option("--M", m_param, "Failure exponent M")->required();
  params->add_option("--n", n, "Signal length")->required();
  params->add_option("--tau", tau, "Sampling density")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*recover) return cmd_recover(n, omega, spikes, seed, trials);
    if (*phase) {
      RunConfig cfg;
      cfg.n = n;
      cfg.omega_sizes = parse_ints(omega_list);
      cfg.ratio_bins = parse_reals(ratios);
      require(trials >= 0, "--trials must be non-negative");
      cfg.trials_per_cell = trials;
      cfg.seed = seed;
      cfg.parallelism = parallelism;
      cfg.out_dir = out;
      return cmd_phase(cfg, kind);
    }
    if (*tv2d) return cmd_tv2d(phantom, side, lines, seed, out);
    if (*certify) return cmd_certify(n, omega, spikes, seed, method, terms);
    if (*verify) return cmd_comb_verify(max_n);
    if (*params) return cmd_params(m_param, n, tau);
  } catch (const Usage &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const VacuousRegime &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 1;
}
