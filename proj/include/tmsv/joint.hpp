#pragma once

#include <vector>

#include "tmsv/state.hpp"

namespace tmsv {

/// Truncated joint photon-number distribution W(n1, n2) over the window
/// [0, n1_max] x [0, n2_max]; entries with odd n1+n2 are exactly zero and
/// captured_mass is the sum of all entries.
struct Pmf2D {
  std::vector<double> values;  // row-major, (n1_max+1) x (n2_max+1)
  int n1_max = 0;
  int n2_max = 0;
  SqueezeParams params;
  double captured_mass = 0.0;

  double at(int n1, int n2) const;
};

/// Joint probability of counting (n1, n2) photons, assembled entirely in log
/// space from the four quadratic combinations of (A, B, C):
///   Epp = (2A+1)(2B+1) - 4C^2    Emm = (2A-1)(2B-1) - 4C^2
///   Epm = (2A-1)(2B+1) - 4C^2    Emp = (2A+1)(2B-1) - 4C^2
/// and the associated Legendre factor P_l^m(zeta) with
///   zeta = -4C / (sqrt(Epp) sqrt(-Emm)),
///   l = (n1+n2)/2,  m = |n1-n2|/2:
///
///   log W = ln 8 - |ln(n1!/n2!)| - ln|Epp| + (1/2) ln(a1 b1 - c1^2)
///           + (n1-n2)/2 * ln|Epm/Emp| + (n1+n2)/2 * ln|Emm/Epp|
///           + 2 ln|P_l^m(zeta)|
///
/// exponentiated only at the end, so no intermediate factor overflows.
///
/// Degenerate forms never crash: when |C| is negligible against |A|, |B| the
/// exact factorized limit W_{n1}(s_A) W_{n2}(s_B) is returned directly, and
/// on the measure-zero manifold where one of the four combinations vanishes
/// the value is obtained by perturbing C along its phase direction and
/// extrapolating two evaluations linearly back to the unperturbed point.
///
/// Non-normalizable forms and negative photon numbers are domain errors.
double joint_pmf(const GaussianForm& form, long n1, long n2);

/// Dense table of joint_pmf values (even-total cells; odd-total cells exactly
/// zero).  Deterministic: filled diagonal by diagonal in fixed order.
Pmf2D joint_pmf_table(const SqueezeParams& params, int n1_max, int n2_max);

/// Diagonal sum sum_{n1=0}^{n} W(n1, n-n1); together with the closed total
/// form this realizes the rotation-invariance cross-check of the totals.
/// Requires 0 <= n <= min(n1_max, n2_max) so every entry exists.
double total_from_joint(const Pmf2D& table, int n);

/// First moments and photon-number covariance of the truncated table, taken
/// over the table as-is (no renormalization by the captured mass).
struct Moments {
  double mean_n1 = 0.0;
  double mean_n2 = 0.0;
  double covariance = 0.0;
  double captured_mass = 0.0;
  bool low_coverage = false;  // captured_mass below the 0.999 contract
};
Moments moments(const Pmf2D& table);

/// Streaming scan of a (possibly huge) window: accumulates the captured mass
/// of the full window while materializing only a strided subsample and,
/// optionally, block-aggregated masses for plotting.  Cell values are
/// bit-identical to joint_pmf; the reduction order is fixed (64 chunks of
/// diagonals merged in index order), so results do not depend on the number
/// of worker threads.
struct WindowScanOptions {
  int stride = 1;      // keep W(i*stride, j*stride); even strides sample the
                       // even-total lattice, odd strides alternate with zeros
  int block_grid = 0;  // when > 0, also aggregate mass on this many blocks per axis
  int threads = 0;     // <= 0: hardware concurrency
};

struct WindowScan {
  SqueezeParams params;
  int n1_max = 0, n2_max = 0;
  int stride = 1;
  int block_grid = 0;
  double captured_mass = 0.0;
  int strided_rows = 0, strided_cols = 0;
  std::vector<double> strided;     // strided_rows x strided_cols, row-major in n1
  std::vector<double> block_mass;  // block_grid x block_grid, empty if unused
};

WindowScan joint_window_scan(const SqueezeParams& params, int n1_max, int n2_max,
                             const WindowScanOptions& options = {});

}  // namespace tmsv
