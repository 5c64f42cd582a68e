#include "tmsv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tmsv/joint.hpp"
#include "tmsv/oracle.hpp"
#include "tmsv/rng.hpp"
#include "tmsv/state.hpp"
#include "tmsv/total.hpp"

namespace tmsv {

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

CheckResult closed_vs_convolution(const VerifyOptions& opt) {
  const bool full = opt.level == VerifyOptions::Level::kFull;
  const int grid = full ? 10 : 5;
  const long kmax = full ? 200 : 60;
  double worst = 0.0;
  for (int i = 1; i <= grid; ++i)
    for (int j = 1; j <= grid; ++j) {
      const SValue s1(0.99 * i / grid), s2(0.99 * j / grid);
      for (long k = 0; k <= kmax; ++k) {
        const double closed =
            total_pmf_closed(s1, s2, k) * (1.0 + opt.norm_perturbation);
        const double conv = total_pmf_convolution(s1, s2, 2 * k);
        const double rel =
            std::abs(closed - conv) / std::max(conv, 1e-300);
        worst = std::max(worst, rel);
      }
    }
  return {"closed-vs-convolution", worst <= 1e-10,
          "max rel dev " + fmt(worst) + " (tol 1e-10)"};
}

CheckResult parity(const VerifyOptions& opt) {
  Rng rng(opt.seed ^ 0xb10cULL);
  double worst = 0.0;
  bool exact_zero = true;
  for (int t = 0; t < 4; ++t) {
    const SValue s1(rng.uniform(0.0, 0.99)), s2(rng.uniform(0.0, 0.99));
    for (long n = 1; n <= 31; n += 2) {
      if (total_pmf_convolution(s1, s2, n) != 0.0) exact_zero = false;
      if (single_mode_pmf(s1, n) != 0.0) exact_zero = false;
    }
    SqueezeParams p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                    rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI), 0.0};
    const GaussianForm f = gaussian_form(p);
    for (long n1 = 0; n1 <= 9; ++n1)
      for (long n2 = (n1 + 1) & 1; n2 <= 9; n2 += 2)
        worst = std::max(worst, joint_pmf(f, n1, n2));
  }
  return {"parity", exact_zero && worst == 0.0,
          "odd-total closed-form mass " + fmt(worst)};
}

CheckResult rotation_invariance(const VerifyOptions& opt) {
  const bool full = opt.level == VerifyOptions::Level::kFull;
  const int grid = full ? 5 : 3;
  const int nmax = full ? 40 : 24;
  const SValue s1 = s_of_r(0.8), s2 = s_of_r(1.1);
  double worst = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      SqueezeParams p{0.8, 1.1, M_PI * i / grid, M_PI * j / grid, 0.0};
      const Pmf2D table = joint_pmf_table(p, nmax, nmax);
      for (int n = 0; n <= nmax; n += 2)
        worst = std::max(worst, std::abs(total_from_joint(table, n) -
                                         total_pmf_closed(s1, s2, n / 2)));
    }
  return {"rotation-invariance", worst <= 1e-9,
          "max |diagonal sum - closed| " + fmt(worst) + " (tol 1e-9)"};
}

CheckResult factorization(const VerifyOptions& opt) {
  Rng rng(opt.seed ^ 0xfac7ULL);
  const bool full = opt.level == VerifyOptions::Level::kFull;
  const int sets = full ? 10 : 4;
  const int nmax = full ? 40 : 24;
  double worst = 0.0;
  for (int t = 0; t < sets; ++t) {
    SqueezeParams p{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), 0.0,
                    rng.uniform(0.0, M_PI), 0.0};
    const GaussianForm f = gaussian_form(p);
    const SValue s1 = s_of_r(p.r1), s2 = s_of_r(p.r2);
    for (long n1 = 0; n1 <= nmax; n1 += 2)
      for (long n2 = 0; n2 <= nmax; n2 += 2)
        worst = std::max(worst,
                         std::abs(joint_pmf(f, n1, n2) -
                                  single_mode_pmf(s1, n1) * single_mode_pmf(s2, n2)));
  }
  return {"factorization-at-phi0", worst <= 1e-10,
          "max |joint - product| " + fmt(worst) + " (tol 1e-10)"};
}

CheckResult closed_vs_oracle(const VerifyOptions& opt) {
  Rng rng(opt.seed ^ 0x0a1eULL);
  const bool full = opt.level == VerifyOptions::Level::kFull;
  const int sets = full ? 6 : 2;
  const int cutoff = full ? 60 : 36;
  const double rmax = full ? 1.2 : 0.8;
  const int nwin = full ? 60 : 26;
  double worst = 0.0, worst_parity = 0.0;
  for (int t = 0; t < sets; ++t) {
    SqueezeParams p{rng.uniform(-rmax, rmax), rng.uniform(-rmax, rmax),
                    rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI),
                    rng.uniform(0.0, 2.0 * M_PI)};
    const FockAmplitudes amps = build_state_operator(p, cutoff, 12, 1e-4);
    const GaussianForm f = gaussian_form(p);
    for (int n1 = 0; n1 <= cutoff; ++n1)
      for (int n2 = 0; n2 <= cutoff; ++n2) {
        if (n1 + n2 > nwin) continue;
        const double wo = std::norm(amps.amplitudes(n1, n2));
        if ((n1 + n2) & 1)
          worst_parity = std::max(worst_parity, wo);
        else
          worst = std::max(worst, std::abs(wo - joint_pmf(f, n1, n2)));
      }
  }
  const bool pass = worst <= 1e-8 && worst_parity <= 1e-10;
  return {"closed-vs-oracle", pass,
          "max |joint - |amp|^2| " + fmt(worst) + " (tol 1e-8), odd-total " +
              fmt(worst_parity) + " (tol 1e-10)"};
}

CheckResult normalization(const VerifyOptions& opt) {
  Rng rng(opt.seed ^ 0x2014ULL);
  double worst_low = 0.0, worst_high = 0.0, worst_mean = 0.0;
  for (int t = 0; t < 4; ++t) {
    const double r1 = rng.uniform(-1.2, 1.2), r2 = rng.uniform(-1.2, 1.2);
    const Pmf1D table = total_pmf_table(s_of_r(r1), s_of_r(r2), 400);
    const double sum = table.sum();
    worst_low = std::max(worst_low, 1.0 - (sum + table.tail_bound));
    worst_high = std::max(worst_high, sum - 1.0);
    double mean = 0.0;
    for (int n = 0; n <= table.n_max; ++n) mean += n * table.values[n];
    const double expect = std::pow(std::sinh(r1), 2) + std::pow(std::sinh(r2), 2);
    worst_mean = std::max(worst_mean, std::abs(mean - expect));
  }
  const bool pass = worst_low <= 1e-12 && worst_high <= 1e-12 && worst_mean <= 1e-8;
  return {"normalization-and-mean", pass,
          "1-(sum+tail) " + fmt(worst_low) + ", sum-1 " + fmt(worst_high) +
              ", |mean - sinh^2 r1 - sinh^2 r2| " + fmt(worst_mean)};
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  report.checks.push_back(closed_vs_convolution(options));
  report.checks.push_back(parity(options));
  report.checks.push_back(rotation_invariance(options));
  report.checks.push_back(factorization(options));
  report.checks.push_back(closed_vs_oracle(options));
  report.checks.push_back(normalization(options));
  return report;
}

}  // namespace tmsv
