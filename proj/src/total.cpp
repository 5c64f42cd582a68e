#include "tmsv/total.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tmsv/specfun.hpp"

namespace tmsv {

double Pmf1D::sum() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

double single_mode_pmf(SValue sv, long n) {
  if (n < 0) throw std::domain_error("single_mode_pmf: negative n");
  if (n & 1) return 0.0;
  const double s = sv.value();
  const long m = n / 2;
  if (s == 0.0) return n == 0 ? 1.0 : 0.0;
  if (n <= 60)
    return std::sqrt(1.0 - s) * std::pow(s, static_cast<double>(m)) *
           std::ldexp(binomial(n, m), static_cast<int>(-n));
  const double lw = 0.5 * std::log1p(-s) + m * std::log(s) - n * M_LN2 +
                    (log_factorial(n) - 2.0 * log_factorial(m));
  return std::exp(lw);
}

double total_pmf_convolution(SValue s1, SValue s2, long n) {
  if (n < 0) throw std::domain_error("total_pmf_convolution: negative n");
  if (n & 1) return 0.0;
  double acc = 0.0;
  for (long n1 = 0; n1 <= n; n1 += 2)
    acc += single_mode_pmf(s1, n1) * single_mode_pmf(s2, n - n1);
  return acc;
}

double total_pmf_closed(SValue s1v, SValue s2v, long k) {
  if (k < 0) throw std::domain_error("total_pmf_closed: negative k");
  double s1 = s1v.value(), s2 = s2v.value();
  // canonicalize s1 >= s2: the distribution is symmetric under mode exchange
  // and z = 1 - s1/s2 <= 0 keeps every series term positive
  if (s1 < s2) std::swap(s1, s2);
  if (s2 == 0.0) {
    if (s1 == 0.0) return k == 0 ? 1.0 : 0.0;
    return single_mode_pmf(SValue(s1), 2 * k);  // sqrt(1-0) = 1 for the empty mode
  }
  const double log_norm = 0.5 * (std::log1p(-s1) + std::log1p(-s2));
  const SignedLog f = log_hyp2f1_terminating(k, 0.5, 1.0, 1.0 - s1 / s2);
  if (f.sign <= 0) return 0.0;  // sum of positive terms; defensive only
  return std::exp(log_norm + k * std::log(s2) + f.log_abs);
}

Pmf1D total_pmf_table(SValue s1, SValue s2, int n_max) {
  if (n_max < 0) throw std::domain_error("total_pmf_table: negative n_max");
  Pmf1D out;
  out.n_max = n_max;
  out.values.assign(static_cast<size_t>(n_max) + 1, 0.0);
  for (long n = 0; n <= n_max; n += 2)
    out.values[n] = total_pmf_closed(s1, s2, n / 2);

  // Tail bound, the smaller of two certified bounds on the omitted mass.
  //
  // (1) Geometric envelope.  From the convolution form
  //   W_{2k} = N 4^{-k} sum_{j=0}^{k} s1^j s2^{k-j} C(2j,j) C(2(k-j),k-j),
  // every binomial obeys C(2a,a) <= 4^a, so each of the k+1 summands is at
  // most smax^k 4^k and W_{2k} <= N (k+1) smax^k with smax = max(s1,s2).
  // Summing the envelope over k > K (K the largest tabulated index) gives
  //   N smax^{K+1} [ (K+2)(1-smax) + smax ] / (1-smax)^2.
  //
  // (2) Normalization gap.  The distribution sums to one exactly, so the
  // omitted mass equals 1 - (true partial sum); 1 - (computed sum) plus a
  // slack covering the floating-point accumulation of n_max+1 entries bounds
  // it.  This rescues the envelope where it is loose (small K, smax near 1).
  const double smax = std::max(s1.value(), s2.value());
  double envelope = 0.0;
  if (smax > 0.0) {
    const long K = n_max / 2;
    const double norm = std::sqrt((1.0 - s1.value()) * (1.0 - s2.value()));
    envelope = norm * std::exp((K + 1) * std::log(smax)) *
               ((K + 2) * (1.0 - smax) + smax) /
               ((1.0 - smax) * (1.0 - smax));
  }
  const double gap =
      std::max(0.0, 1.0 - out.sum()) + 1e-15 * (n_max + 2);
  out.tail_bound = std::min(envelope, gap);
  return out;
}

}  // namespace tmsv
