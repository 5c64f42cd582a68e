// tmsv: photon statistics of a two-mode squeezed vacuum.
//
// Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 I/O error.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tmsv/emit.hpp"
#include "tmsv/joint.hpp"
#include "tmsv/state.hpp"
#include "tmsv/total.hpp"
#include "tmsv/verify.hpp"

namespace {

constexpr int kOk = 0, kInvariantFailure = 1, kUsageError = 2, kIoError = 3;

struct TotalArgs {
  std::optional<double> s1, s2, r1, r2;
  int n_max = 100;
  std::string format = "csv";
  std::string out;
};

int run_total(const TotalArgs& a) {
  const bool have_s = a.s1.has_value() || a.s2.has_value();
  const bool have_r = a.r1.has_value() || a.r2.has_value();
  if (have_s == have_r) {
    std::cerr << "total: give exactly one of (--s1, --s2) or (--r1, --r2)\n";
    return kUsageError;
  }
  if (have_s && (!a.s1 || !a.s2)) {
    std::cerr << "total: both --s1 and --s2 are required\n";
    return kUsageError;
  }
  if (have_r && (!a.r1 || !a.r2)) {
    std::cerr << "total: both --r1 and --r2 are required\n";
    return kUsageError;
  }
  const tmsv::SValue s1 = have_s ? tmsv::SValue(*a.s1) : tmsv::s_of_r(*a.r1);
  const tmsv::SValue s2 = have_s ? tmsv::SValue(*a.s2) : tmsv::s_of_r(*a.r2);
  tmsv::TotalSeries series;
  series.label = "";
  series.s1 = s1.value();
  series.s2 = s2.value();
  series.table = tmsv::total_pmf_table(s1, s2, a.n_max);
  tmsv::write_total_file(a.out, tmsv::parse_format(a.format), {series});
  return kOk;
}

struct JointArgs {
  double r1 = 0.0, r2 = 0.0, phi = 0.0, gamma = 0.0, rho = 0.0;
  int n1_max = 40, n2_max = 40;
  int stride = 1;
  int threads = 0;
  std::string format = "csv";
  std::string out;
};

int run_joint(const JointArgs& a) {
  const tmsv::SqueezeParams params{a.r1, a.r2, a.phi, a.gamma, a.rho};
  const tmsv::OutputFormat fmt = tmsv::parse_format(a.format);
  const long cells =
      static_cast<long>(a.n1_max + 1) * static_cast<long>(a.n2_max + 1);
  if (a.stride == 1 && cells <= 4'000'000) {
    tmsv::write_joint_file(a.out, fmt, tmsv::joint_pmf_table(params, a.n1_max, a.n2_max));
    return kOk;
  }
  if (a.stride == 1) {
    std::cerr << "joint: table of " << cells
              << " cells is too large to emit densely; pass --stride\n";
    return kUsageError;
  }
  tmsv::WindowScanOptions opt;
  opt.stride = a.stride;
  opt.block_grid = fmt == tmsv::OutputFormat::kSvg ? 160 : 0;
  opt.threads = a.threads;
  tmsv::write_joint_window_file(
      a.out, fmt, tmsv::joint_window_scan(params, a.n1_max, a.n2_max, opt));
  return kOk;
}

int run_figure1(const std::string& out, const std::string& format) {
  tmsv::write_total_file(out, tmsv::parse_format(format), tmsv::figure1_series());
  return kOk;
}

int run_figure2(const std::string& out, const std::string& format, int threads) {
  const tmsv::Figure2Result fig = tmsv::figure2_scan(threads);
  tmsv::write_joint_window_file(out, tmsv::parse_format(format), fig.scan);
  return kOk;
}

int run_verify(uint64_t seed, const std::string& level, double perturbation) {
  tmsv::VerifyOptions opt;
  opt.seed = seed;
  opt.norm_perturbation = perturbation;
  if (level == "quick") {
    opt.level = tmsv::VerifyOptions::Level::kQuick;
  } else if (level == "full") {
    opt.level = tmsv::VerifyOptions::Level::kFull;
  } else {
    std::cerr << "verify: --level must be quick or full\n";
    return kUsageError;
  }
  const tmsv::VerifyReport report = tmsv::run_verify(opt);
  for (const auto& c : report.checks)
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " — "
              << c.detail << "\n";
  std::cout << (report.all_pass() ? "verify: all checks passed"
                                  : "verify: FAILURES present")
            << "\n";
  return report.all_pass() ? kOk : kInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photon statistics of a two-mode squeezed vacuum"};
  app.require_subcommand(1);

  TotalArgs ta;
  CLI::App* total = app.add_subcommand(
      "total", "total-photon distribution W_n (closed hypergeometric form)");
  double s1v = 0, s2v = 0, r1v = 0, r2v = 0;
  total->add_option("--s1", s1v, "s parameter of mode 1, in [0,1)");
  total->add_option("--s2", s2v, "s parameter of mode 2, in [0,1)");
  total->add_option("--r1", r1v, "squeezing of mode 1 (s = tanh^2 r)");
  total->add_option("--r2", r2v, "squeezing of mode 2 (s = tanh^2 r)");
  total->add_option("--nmax", ta.n_max, "largest tabulated n")->check(CLI::PositiveNumber);
  total->add_option("--format", ta.format, "csv|json|svg");
  total->add_option("--out", ta.out, "output path")->required();

  JointArgs ja;
  CLI::App* joint = app.add_subcommand(
      "joint", "joint distribution W(n1,n2) (associated-Legendre form)");
  joint->add_option("--r1", ja.r1, "squeezing of mode 1")->required();
  joint->add_option("--r2", ja.r2, "squeezing of mode 2")->required();
  joint->add_option("--phi", ja.phi, "coordinate rotation angle")->required();
  joint->add_option("--gamma", ja.gamma, "half the mutual phase shift")->required();
  joint->add_option("--rho", ja.rho, "global phase (inert)");
  joint->add_option("--n1max", ja.n1_max, "window bound for n1")->check(CLI::PositiveNumber);
  joint->add_option("--n2max", ja.n2_max, "window bound for n2")->check(CLI::PositiveNumber);
  joint->add_option("--stride", ja.stride, "emit every stride-th cell (windowed scan)")
      ->check(CLI::PositiveNumber);
  joint->add_option("--threads", ja.threads, "worker threads (0 = auto)");
  joint->add_option("--format", ja.format, "csv|json|svg");
  joint->add_option("--out", ja.out, "output path")->required();

  std::string f1_out, f1_format = "csv";
  CLI::App* fig1 = app.add_subcommand("figure1", "the three total-photon series");
  fig1->add_option("--out", f1_out, "output path")->required();
  fig1->add_option("--format", f1_format, "csv|json|svg");

  std::string f2_out, f2_format = "csv";
  int f2_threads = 0;
  CLI::App* fig2 = app.add_subcommand(
      "figure2", "joint distribution at r1=3 r2=5 phi=pi/5 gamma=2pi/9");
  fig2->add_option("--out", f2_out, "output path")->required();
  fig2->add_option("--format", f2_format, "csv|json|svg");
  fig2->add_option("--threads", f2_threads, "worker threads (0 = auto)");

  uint64_t seed = 20250810;
  std::string level = "quick";
  double perturbation = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
  verify->add_option("--seed", seed, "RNG seed for parameter sampling");
  verify->add_option("--level", level, "quick|full");
  verify->add_option("--inject-norm-perturbation", perturbation,
                     "test hook: perturb the closed-form normalization")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (total->parsed()) {
      if (total->count("--s1")) ta.s1 = s1v;
      if (total->count("--s2")) ta.s2 = s2v;
      if (total->count("--r1")) ta.r1 = r1v;
      if (total->count("--r2")) ta.r2 = r2v;
      return run_total(ta);
    }
    if (joint->parsed()) return run_joint(ja);
    if (fig1->parsed()) return run_figure1(f1_out, f1_format);
    if (fig2->parsed()) return run_figure2(f2_out, f2_format, f2_threads);
    if (verify->parsed()) return run_verify(seed, level, perturbation);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariantFailure;
  }
  return kUsageError;
}
