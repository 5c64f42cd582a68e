#pragma once

#include <complex>
#include <limits>

namespace tmsv {

using cplx = std::complex<double>;

/// A complex value stored as log-magnitude plus unit phase, so that
/// factorially growing intermediates (Legendre functions of high degree,
/// terminating hypergeometric sums) never overflow.
///
/// log_mag == -inf encodes an exact zero; phase content is then unspecified.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  cplx phase{1.0, 0.0};

  static LogComplex zero() { return {}; }
  static LogComplex from(cplx v);

  bool is_zero() const { return log_mag == -std::numeric_limits<double>::infinity(); }
  double log_abs2() const { return 2.0 * log_mag; }
  cplx value() const;  // may overflow to inf for log_mag > ~709
};

/// ln(n!).  Exact-table backed for small n, lgamma beyond; relative error is
/// ulp-class throughout (the absolute error is bounded by the representation
/// of the result itself once ln(n!) grows past ~1e4).
double log_factorial(long n);

/// C(n, k).  Exact integer arithmetic (correctly rounded result) for n <= 60,
/// exponentiated log-factorials beyond (relative error <= 1e-12).
/// k > n or negative arguments are domain errors.
double binomial(long n, long k);

/// A sign/log-magnitude pair for real quantities that may exceed double range.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;  // -1, 0, +1

  double value() const;  // sign * exp(log_abs); may over/underflow
};

/// Terminating Gauss hypergeometric series 2F1(-k, b; c; z), k a nonnegative
/// integer, as a SignedLog.
///
/// Evaluation strategy: the sum is produced from accumulated term ratios with
/// exact power-of-two rescaling.  For z < 0 every term is positive, so the
/// accumulation is cancellation free; for z in (0,1) the Pfaff transformation
///   2F1(-k, b; c; z) = (1-z)^k 2F1(-k, c-b; c; z/(z-1))
/// maps the argument into the cancellation-free region; z = 1 is evaluated by
/// the Chu-Vandermonde closed form (c-b)_k / (c)_k.  Arguments z > 1 fall back
/// to the direct signed sum and lose accuracy for large k (unreachable from
/// the photon-statistics call sites, where z = 1 - s1/s2 <= 1).
///
/// c equal to zero or a negative integer above -k is a domain error.
SignedLog log_hyp2f1_terminating(long k, double b, double c, double z);

/// 2F1(-k, b; c; z) as a plain double; overflows to +-inf when the value
/// exceeds double range (use log_hyp2f1_terminating for those regimes).
double hyp2f1_terminating(long k, double b, double c, double z);

/// Upward scan of associated Legendre functions P_l^m(z) in the degree l at
/// fixed order m and fixed (generally complex) argument z.
///
/// Branch and normalization convention (pinned by the tests): the seed is
///   P_m^m(z) = (2m-1)!! * w^m,   w = sqrt(z-1) * sqrt(z+1)
/// with both square roots principal.  On the real interval (-1,1) this w is
/// i*sqrt(1-z^2), so the values differ from the Ferrers functions by the
/// phase i^m and carry no Condon-Shortley (-1)^m; every use downstream takes
/// |P|^2, for which any consistent branch gives the same result.
///
/// The running pair (P_l, P_{l-1}) is kept as order-one complex numbers under
/// a shared log-scale offset, rescaled by exact powers of two, so no degree
/// overflows; the three-term recurrence in l is stable both on the
/// oscillatory segment and off it, where P is the dominant solution.
class LegendreDegreeScan {
 public:
  LegendreDegreeScan(long m, cplx z);

  void advance();  // l -> l+1
  long l() const { return l_; }
  long m() const { return m_; }

  /// log-scale offset g and squared magnitude of the scaled value u, with
  /// |P_l^m| = exp(g) * |u| and |u|^2 kept within [2^-4, 2^4] (exact zeros
  /// excepted).
  double log_scale() const { return g_; }
  double mag2() const { return std::norm(u_curr_); }

  LogComplex value() const;

 private:
  void rescale_();

  long m_;
  cplx z_;
  long l_;
  cplx u_curr_, u_prev_;
  double g_ = 0.0;
};

/// P_l^m(z) for 0 <= m <= l and complex z, in the convention documented on
/// LegendreDegreeScan.  m > l or negative orders are domain errors.
LogComplex assoc_legendre(long l, long m, cplx z);

}  // namespace tmsv
