#include "tmsv/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmsv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LogComplex LogComplex::from(cplx v) {
  double a = std::abs(v);
  if (a == 0.0) return zero();
  return {std::log(a), v / a};
}

cplx LogComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  return std::exp(log_mag) * phase;
}

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

// ---------------------------------------------------------------------------
// factorials and binomials
// ---------------------------------------------------------------------------

namespace {

// ln(n!) for n < kLfTable, accumulated in long double so the only error left
// is the final rounding to double.
constexpr long kLfTable = 4096;

const std::vector<double>& lf_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLfTable);
    long double acc = 0.0L;
    t[0] = 0.0;
    for (long n = 1; n < kLfTable; ++n) {
      acc += std::log(static_cast<long double>(n));
      t[n] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(long n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  if (n < kLfTable) return lf_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(long n, long k) {
  if (n < 0 || k < 0) throw std::domain_error("binomial: negative argument");
  if (k > n) throw std::domain_error("binomial: k > n");
  if (k > n - k) k = n - k;
  if (k == 0) return 1.0;
  if (n <= 60) {
    // multiplicative form; every intermediate division is exact
    unsigned __int128 r = 1;
    for (long i = 1; i <= k; ++i) {
      r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    }
    return static_cast<double>(r);
  }
  return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

// ---------------------------------------------------------------------------
// terminating 2F1
// ---------------------------------------------------------------------------

namespace {

// direct sum of the terminating series for 2F1(-k, b; c; z); positive and
// negative contributions accumulate separately under exact 2^-1000 rescales.
SignedLog hyp_series(long k, double b, double c, double z) {
  double t = 1.0, pos = 1.0, neg = 0.0;
  long shift = 0;
  for (long m = 0; m < k; ++m) {
    const double ratio =
        (static_cast<double>(m - k) * (b + m) * z) / ((c + m) * (m + 1.0));
    t *= ratio;
    if (t == 0.0) break;  // (b)_m hit zero, or the tail underflowed away
    if (t > 0.0) pos += t; else neg -= t;
    const double big = std::max(pos, neg);
    if (big > 1e270) {
      pos = std::ldexp(pos, -1000);
      neg = std::ldexp(neg, -1000);
      t = std::ldexp(t, -1000);
      shift += 1000;
    }
    if (std::abs(ratio) < 0.9 && std::abs(t) < big * 1e-22) break;
  }
  const double mag = pos - neg;
  if (mag == 0.0) return {-kInf, 0};
  return {std::log(std::abs(mag)) + static_cast<double>(shift) * M_LN2,
          mag > 0.0 ? 1 : -1};
}

// Chu-Vandermonde: 2F1(-k, b; c; 1) = (c-b)_k / (c)_k
SignedLog hyp_at_one(long k, double b, double c) {
  double log_abs = 0.0;
  int sign = 1;
  for (long j = 0; j < k; ++j) {
    const double num = c - b + j;
    const double den = c + j;
    if (num == 0.0) return {-kInf, 0};
    if (num < 0.0) sign = -sign;
    if (den < 0.0) sign = -sign;
    log_abs += std::log(std::abs(num)) - std::log(std::abs(den));
  }
  return {log_abs, sign};
}

}  // namespace

SignedLog log_hyp2f1_terminating(long k, double b, double c, double z) {
  if (k < 0) throw std::domain_error("hyp2f1_terminating: k must be nonnegative");
  if (!std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z))
    throw std::domain_error("hyp2f1_terminating: nonfinite parameter");
  if (c <= 0.0 && c == std::floor(c) && static_cast<long>(-c) < k)
    throw std::domain_error("hyp2f1_terminating: c is a nonpositive integer above -k");
  if (k == 0 || z == 0.0) return {0.0, 1};
  if (z == 1.0) return hyp_at_one(k, b, c);
  if (z > 0.0 && z < 1.0) {
    // Pfaff: move the argument to the negative axis where terms are positive
    SignedLog res = hyp_series(k, c - b, c, z / (z - 1.0));
    res.log_abs += static_cast<double>(k) * std::log1p(-z);
    return res;
  }
  return hyp_series(k, b, c, z);
}

double hyp2f1_terminating(long k, double b, double c, double z) {
  return log_hyp2f1_terminating(k, b, c, z).value();
}

// ---------------------------------------------------------------------------
// associated Legendre scan
// ---------------------------------------------------------------------------

LegendreDegreeScan::LegendreDegreeScan(long m, cplx z) : m_(m), z_(z), l_(m) {
  if (m < 0) throw std::domain_error("LegendreDegreeScan: negative order");
  u_prev_ = {0.0, 0.0};  // P_{m-1}^m == 0 seeds the generic recurrence
  if (m == 0) {
    u_curr_ = {1.0, 0.0};
    g_ = 0.0;
    return;
  }
  const cplx w = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  const double wa = std::abs(w);
  if (wa == 0.0) {  // z = +-1: P_l^m vanishes identically for m >= 1
    u_curr_ = {0.0, 0.0};
    g_ = -kInf;
    return;
  }
  // (2m-1)!! = (2m)! / (2^m m!)
  const double log_dfact =
      log_factorial(2 * m) - m * M_LN2 - log_factorial(m);
  g_ = log_dfact + m * std::log(wa);
  u_curr_ = std::polar(1.0, static_cast<double>(m) * std::arg(w));
}

void LegendreDegreeScan::rescale_() {
  const double mag2 = std::max(std::norm(u_curr_), std::norm(u_prev_));
  if (mag2 >= 0.0625 && mag2 <= 16.0) return;
  if (mag2 == 0.0) return;
  const int e = std::ilogb(mag2);
  const int sh = -e / 2;
  u_curr_ = {std::ldexp(u_curr_.real(), sh), std::ldexp(u_curr_.imag(), sh)};
  u_prev_ = {std::ldexp(u_prev_.real(), sh), std::ldexp(u_prev_.imag(), sh)};
  g_ -= sh * M_LN2;
}

void LegendreDegreeScan::advance() {
  ++l_;
  // (l-m) P_l^m = (2l-1) z P_{l-1}^m - (l-1+m) P_{l-2}^m
  const cplx next = ((2.0 * l_ - 1.0) * z_ * u_curr_ -
                     static_cast<double>(l_ - 1 + m_) * u_prev_) /
                    static_cast<double>(l_ - m_);
  u_prev_ = u_curr_;
  u_curr_ = next;
  rescale_();
}

LogComplex LegendreDegreeScan::value() const {
  const double a = std::abs(u_curr_);
  if (a == 0.0 || g_ == -kInf) return LogComplex::zero();
  return {g_ + std::log(a), u_curr_ / a};
}

LogComplex assoc_legendre(long l, long m, cplx z) {
  if (m < 0 || l < 0 || m > l)
    throw std::domain_error("assoc_legendre: requires 0 <= m <= l");
  LegendreDegreeScan scan(m, z);
  while (scan.l() < l) scan.advance();
  return scan.value();
}

}  // namespace tmsv
