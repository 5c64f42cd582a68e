#include "tmsv/joint.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <thread>

#include "tmsv/specfun.hpp"
#include "tmsv/total.hpp"

namespace tmsv {

namespace {

// exp underflows to zero below this; a cell that far down is exactly 0
constexpr double kLogFloor = -746.0;
// |C| below this (relative to max(|A|,|B|)) switches to the exact factorized limit
constexpr double kFactorizedCutoff = 1e-12;
// any |E..| below this (relative to the natural term scale) marks the
// singular manifold handled by perturb-and-extrapolate
constexpr double kSingularCutoff = 1e-12;

struct Eq12Terms {
  cplx zeta;
  double log_pref = 0.0;  // ln 8 - ln|Epp| + (1/2) ln(a1 b1 - c1^2)
  double lr1 = 0.0;       // ln|Epm / Emp|
  double lr2 = 0.0;       // ln|Emm / Epp|
};

enum class FormClass { kRegular, kFactorized, kSingular };

FormClass classify(const GaussianForm& f, Eq12Terms* t) {
  const cplx A = f.A, B = f.B, C = f.C;
  if (std::abs(C) < kFactorizedCutoff * std::max(std::abs(A), std::abs(B)))
    return FormClass::kFactorized;
  const cplx ap = 2.0 * A + 1.0, am = 2.0 * A - 1.0;
  const cplx bp = 2.0 * B + 1.0, bm = 2.0 * B - 1.0;
  const cplx c2 = 4.0 * C * C;
  const cplx epp = ap * bp - c2;
  const cplx emm = am * bm - c2;
  const cplx epm = am * bp - c2;
  const cplx emp = ap * bm - c2;
  const double scale = std::abs(ap) * std::abs(bp) + std::abs(c2);
  const double smallest =
      std::min(std::min(std::abs(epp), std::abs(emm)),
               std::min(std::abs(epm), std::abs(emp)));
  if (smallest < kSingularCutoff * scale) return FormClass::kSingular;
  t->zeta = -4.0 * C / (std::sqrt(epp) * std::sqrt(-emm));
  t->log_pref = std::log(8.0) - std::log(std::abs(epp)) +
                0.5 * std::log(f.det_real());
  t->lr1 = std::log(std::abs(epm)) - std::log(std::abs(emp));
  t->lr2 = std::log(std::abs(emm)) - std::log(std::abs(epp));
  return FormClass::kRegular;
}

// Walk one diagonal (fixed half-difference d) of the window, emitting every
// cell with l in [l_emit_lo, l_hi] in ascending order.  Returns the emitted
// mass.  lf(i) must return log_factorial(i).
template <class LF, class Sink>
double eval_diagonal(const Eq12Terms& t, LF&& lf, long d, long l_emit_lo,
                     long l_hi, Sink&& sink) {
  const long m = std::labs(d);
  LegendreDegreeScan scan(m, t.zeta);
  const double d_lr1 = (d != 0) ? static_cast<double>(d) * t.lr1 : 0.0;
  double mass = 0.0;
  for (long l = m; l <= l_hi; ++l) {
    if (l >= l_emit_lo) {
      const long n1 = l + d, n2 = l - d;
      const double rest = t.log_pref - std::abs(lf(n1) - lf(n2)) + d_lr1 +
                          (l != 0 ? static_cast<double>(l) * t.lr2 : 0.0) +
                          2.0 * scan.log_scale();
      const double w = (rest > kLogFloor) ? std::exp(rest) * scan.mag2() : 0.0;
      mass += w;
      sink(n1, n2, w);
    }
    if (l < l_hi) scan.advance();
  }
  return mass;
}

double eval_regular_cell(const Eq12Terms& t, long n1, long n2) {
  const long l = (n1 + n2) / 2, d = (n1 - n2) / 2;
  double out = 0.0;
  eval_diagonal(
      t, [](long i) { return log_factorial(i); }, d, l, l,
      [&](long, long, double w) { out = w; });
  return out;
}

double factorized_cell(const GaussianForm& f, long n1, long n2) {
  return single_mode_pmf(effective_s(f.A), n1) *
         single_mode_pmf(effective_s(f.B), n2);
}

// Perturb C along its own phase direction and extrapolate two evaluations
// linearly back to the unperturbed point; escalate the perturbation if it
// fails to leave the singular manifold.
double singular_cell(const GaussianForm& f, long n1, long n2) {
  for (double eps : {1e-9, 1e-6, 1e-3}) {
    GaussianForm f1 = f, f2 = f;
    f1.C = f.C * (1.0 + eps);
    f2.C = f.C * (1.0 + 2.0 * eps);
    Eq12Terms t1, t2;
    if (classify(f1, &t1) != FormClass::kRegular) continue;
    if (classify(f2, &t2) != FormClass::kRegular) continue;
    const double w =
        2.0 * eval_regular_cell(t1, n1, n2) - eval_regular_cell(t2, n1, n2);
    return w > 0.0 ? w : 0.0;
  }
  throw std::domain_error("joint_pmf: form is singular in every tested perturbation");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

}  // namespace

double Pmf2D::at(int n1, int n2) const {
  if (n1 < 0 || n2 < 0 || n1 > n1_max || n2 > n2_max)
    throw std::domain_error("Pmf2D::at: index outside table");
  return values[static_cast<size_t>(n1) * (n2_max + 1) + n2];
}

double joint_pmf(const GaussianForm& form, long n1, long n2) {
  form.validate();
  if (n1 < 0 || n2 < 0)
    throw std::domain_error("joint_pmf: negative photon number");
  if ((n1 + n2) & 1) return 0.0;
  Eq12Terms t;
  switch (classify(form, &t)) {
    case FormClass::kFactorized:
      return factorized_cell(form, n1, n2);
    case FormClass::kRegular:
      return eval_regular_cell(t, n1, n2);
    case FormClass::kSingular:
      return singular_cell(form, n1, n2);
  }
  return 0.0;  // unreachable
}

Pmf2D joint_pmf_table(const SqueezeParams& params, int n1_max, int n2_max) {
  params.validate();
  if (n1_max < 0 || n2_max < 0)
    throw std::domain_error("joint_pmf_table: negative bound");
  const GaussianForm form = gaussian_form(params);
  form.validate();

  Pmf2D out;
  out.params = params;
  out.n1_max = n1_max;
  out.n2_max = n2_max;
  out.values.assign(static_cast<size_t>(n1_max + 1) * (n2_max + 1), 0.0);

  Eq12Terms t;
  const FormClass cls = classify(form, &t);
  const long cols = n2_max + 1;
  double mass = 0.0;

  if (cls == FormClass::kRegular) {
    std::vector<double> lf(static_cast<size_t>(std::max(n1_max, n2_max)) + 1);
    for (size_t i = 0; i < lf.size(); ++i) lf[i] = log_factorial(static_cast<long>(i));
    for (long d = -(n2_max / 2); d <= n1_max / 2; ++d) {
      const long l_hi = std::min<long>(n1_max - d, n2_max + d);
      mass += eval_diagonal(
          t, [&](long i) { return lf[i]; }, d, std::labs(d), l_hi,
          [&](long a, long b, double w) { out.values[a * cols + b] = w; });
    }
  } else if (cls == FormClass::kFactorized) {
    std::vector<double> w1(n1_max + 1), w2(n2_max + 1);
    const SValue sa = effective_s(form.A), sb = effective_s(form.B);
    for (long n = 0; n <= n1_max; ++n) w1[n] = single_mode_pmf(sa, n);
    for (long n = 0; n <= n2_max; ++n) w2[n] = single_mode_pmf(sb, n);
    for (long n1 = 0; n1 <= n1_max; ++n1)
      for (long n2 = (n1 & 1); n2 <= n2_max; n2 += 2) {
        const double w = w1[n1] * w2[n2];
        out.values[n1 * cols + n2] = w;
        mass += w;
      }
  } else {
    for (long n1 = 0; n1 <= n1_max; ++n1)
      for (long n2 = (n1 & 1); n2 <= n2_max; n2 += 2) {
        const double w = singular_cell(form, n1, n2);
        out.values[n1 * cols + n2] = w;
        mass += w;
      }
  }
  out.captured_mass = mass;
  return out;
}

double total_from_joint(const Pmf2D& table, int n) {
  if (n < 0 || n > std::min(table.n1_max, table.n2_max))
    throw std::domain_error("total_from_joint: n outside the table's complete diagonals");
  double acc = 0.0;
  for (int n1 = 0; n1 <= n; ++n1) acc += table.at(n1, n - n1);
  return acc;
}

Moments moments(const Pmf2D& table) {
  double m1 = 0.0, m2 = 0.0, m12 = 0.0;
  const long cols = table.n2_max + 1;
  for (long n1 = 0; n1 <= table.n1_max; ++n1)
    for (long n2 = 0; n2 <= table.n2_max; ++n2) {
      const double w = table.values[n1 * cols + n2];
      if (w == 0.0) continue;
      m1 += n1 * w;
      m2 += n2 * w;
      m12 += static_cast<double>(n1) * static_cast<double>(n2) * w;
    }
  Moments out;
  out.mean_n1 = m1;
  out.mean_n2 = m2;
  out.covariance = m12 - m1 * m2;
  out.captured_mass = table.captured_mass;
  out.low_coverage = table.captured_mass < 0.999;
  return out;
}

WindowScan joint_window_scan(const SqueezeParams& params, int n1_max,
                             int n2_max, const WindowScanOptions& options) {
  params.validate();
  if (n1_max < 0 || n2_max < 0)
    throw std::domain_error("joint_window_scan: negative bound");
  if (options.stride < 1)
    throw std::domain_error("joint_window_scan: stride must be >= 1");
  const GaussianForm form = gaussian_form(params);
  form.validate();

  WindowScan out;
  out.params = params;
  out.n1_max = n1_max;
  out.n2_max = n2_max;
  out.stride = options.stride;
  out.block_grid = options.block_grid;
  out.strided_rows = n1_max / options.stride + 1;
  out.strided_cols = n2_max / options.stride + 1;
  out.strided.assign(
      static_cast<size_t>(out.strided_rows) * out.strided_cols, 0.0);
  const bool blocks = options.block_grid > 0;
  if (blocks)
    out.block_mass.assign(
        static_cast<size_t>(options.block_grid) * options.block_grid, 0.0);

  Eq12Terms t;
  const FormClass cls = classify(form, &t);

  const long st = options.stride;
  const long bg = options.block_grid;
  const long scols = out.strided_cols;

  // chunked diagonal sweep; partial results merged in chunk order so the
  // outcome is independent of the number of worker threads
  const long d_min = -(n2_max / 2), d_max = n1_max / 2;
  const long n_diag = d_max - d_min + 1;
  const int n_chunks = static_cast<int>(std::min<long>(64, n_diag));
  std::vector<double> chunk_mass(n_chunks, 0.0);
  std::vector<std::vector<double>> chunk_blocks(n_chunks);

  std::vector<double> lf(static_cast<size_t>(std::max(n1_max, n2_max)) + 1);
  for (size_t i = 0; i < lf.size(); ++i) lf[i] = log_factorial(static_cast<long>(i));

  std::vector<double> w1, w2;  // factorized path
  if (cls == FormClass::kFactorized) {
    const SValue sa = effective_s(form.A), sb = effective_s(form.B);
    w1.resize(n1_max + 1);
    w2.resize(n2_max + 1);
    for (long n = 0; n <= n1_max; ++n) w1[n] = single_mode_pmf(sa, n);
    for (long n = 0; n <= n2_max; ++n) w2[n] = single_mode_pmf(sb, n);
  }

  auto run_chunk = [&](int ci) {
    const long lo = d_min + n_diag * ci / n_chunks;
    const long hi = d_min + n_diag * (ci + 1) / n_chunks - 1;
    std::vector<double>* bmass = nullptr;
    if (blocks) {
      chunk_blocks[ci].assign(static_cast<size_t>(bg) * bg, 0.0);
      bmass = &chunk_blocks[ci];
    }
    auto sink = [&](long a, long b, double w) {
      if (a % st == 0 && b % st == 0)
        out.strided[(a / st) * scols + b / st] = w;
      if (bmass && w != 0.0) {
        const long bi = a * bg / (n1_max + 1), bj = b * bg / (n2_max + 1);
        (*bmass)[bi * bg + bj] += w;
      }
    };
    double mass = 0.0;
    for (long d = lo; d <= hi; ++d) {
      const long l_hi = std::min<long>(n1_max - d, n2_max + d);
      if (cls == FormClass::kRegular) {
        mass += eval_diagonal(t, [&](long i) { return lf[i]; }, d,
                              std::labs(d), l_hi, sink);
      } else {
        for (long l = std::labs(d); l <= l_hi; ++l) {
          const long n1 = l + d, n2 = l - d;
          const double w = cls == FormClass::kFactorized
                               ? w1[n1] * w2[n2]
                               : singular_cell(form, n1, n2);
          mass += w;
          sink(n1, n2, w);
        }
      }
    }
    chunk_mass[ci] = mass;
  };

  const int n_threads = std::min(resolve_threads(options.threads), n_chunks);
  if (n_threads <= 1) {
    for (int ci = 0; ci < n_chunks; ++ci) run_chunk(ci);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i)
      pool.emplace_back([&] {
        for (int ci = next.fetch_add(1); ci < n_chunks; ci = next.fetch_add(1))
          run_chunk(ci);
      });
    for (auto& th : pool) th.join();
  }

  double mass = 0.0;
  for (int ci = 0; ci < n_chunks; ++ci) mass += chunk_mass[ci];
  out.captured_mass = mass;
  if (blocks)
    for (int ci = 0; ci < n_chunks; ++ci)
      for (size_t i = 0; i < out.block_mass.size(); ++i)
        out.block_mass[i] += chunk_blocks[ci][i];
  return out;
}

}  // namespace tmsv
