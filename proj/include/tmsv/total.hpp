#pragma once

#include <vector>

#include "tmsv/state.hpp"

namespace tmsv {

/// Truncated distribution of the total photon number n = n1 + n2.
/// values[n] covers n = 0..n_max; odd entries are exactly zero; tail_bound is
/// a certified upper bound on the probability mass beyond n_max.
struct Pmf1D {
  std::vector<double> values;
  int n_max = 0;
  double tail_bound = 0.0;

  double sum() const;
};

/// One-mode squeezed-vacuum photon statistics:
///   0 for odd n,  sqrt(1-s) s^{n/2} 2^{-n} C(n, n/2) for even n,
/// evaluated in log space once the binomial leaves the exact-integer range.
double single_mode_pmf(SValue s, long n);

/// Total-photon probability as the convolution
///   W_n = sum_{n1} W_{n1}(s1) W_{n-n1}(s2);  zero for odd n.
double total_pmf_convolution(SValue s1, SValue s2, long n);

/// Total-photon probability in closed form,
///   W_{2k} = sqrt(1-s1) sqrt(1-s2) s2^k 2F1(-k, 1/2; 1; 1 - s1/s2).
/// The arguments are canonicalized internally (the distribution is symmetric
/// under mode exchange) so that the hypergeometric argument is nonpositive
/// and the terminating series is a sum of positive terms.
double total_pmf_closed(SValue s1, SValue s2, long k);

/// Table of total_pmf_closed values for n = 0..n_max with a certified tail
/// bound (geometric envelope, derivation documented at the implementation).
Pmf1D total_pmf_table(SValue s1, SValue s2, int n_max);

}  // namespace tmsv
