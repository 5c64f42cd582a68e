#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "tmsv/state.hpp"

namespace tmsv {

/// Raised when a requested Fock-space cutoff leaves more probability mass
/// outside the kept window than the caller allowed.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Truncated matrix of amplitudes <n1, n2 | Psi> for n1, n2 = 0..cutoff.
struct FockAmplitudes {
  Eigen::MatrixXcd amplitudes;
  int cutoff = 0;
  double norm_captured = 0.0;
};

/// Brute-force state reconstruction: applies
///   e^{i rho} e^{-i phi M} Gamma(gamma) S1(r1) S2(r2)
/// to the two-mode vacuum on a truncated Fock grid, using matrix exponentials
/// of the truncated generators (the squeezes act per mode; the mutual phase
/// shift is diagonal in the number basis; the rotation generator conserves
/// n1+n2 and is exponentiated sector by sector).  The state is built on a
/// grid extended by `margin` per mode and cropped back to `cutoff`, so edge
/// effects of the truncated squeeze generators decay across the margin.
///
/// Throws TruncationError when 1 - norm_captured exceeds max_norm_deficit.
FockAmplitudes build_state_operator(const SqueezeParams& params, int cutoff,
                                    int margin = 12,
                                    double max_norm_deficit = 1e-6);

/// Gauss-Hermite rule for weight e^{-x^2}: nodes from the Jacobi matrix,
/// modified weights w_i e^{x_i^2} from the Christoffel function
/// 1 / sum_{n<order} psi_n(x_i)^2, which stays accurate at the extreme nodes
/// where the raw weights underflow.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> log_mod_weights;  // ln(w_i e^{x_i^2})

  static GaussHermiteRule build(int order);
};

/// Oscillator eigenfunctions psi_n(x) for n = 0..n_max via the normalized
/// three-term recurrence (never raw Hermite polynomials times a Gaussian);
/// values stay bounded for every n.
void hermite_functions(long n_max, double x, double* out);
double hermite_function(long n, double x);

/// <n1, n2 | Psi> by 2D Gauss-Hermite quadrature of
/// psi_{n1}(x1) psi_{n2}(x2) Psi(x1, x2), on a grid aligned with the
/// principal axes of the integrand's real Gaussian decay (which makes every
/// per-node factor individually bounded).  order <= 0 selects
/// 2 (n1 + n2) + 40.
cplx overlap_quadrature(const GaussianForm& form, int n1, int n2,
                        int order = 0);

/// Batch of overlap_quadrature values for n1 = 0..n1_max, n2 = 0..n2_max on a
/// shared grid; order <= 0 selects 2 (n1_max + n2_max) + 40.
Eigen::MatrixXcd quadrature_amplitudes(const GaussianForm& form, int n1_max,
                                       int n2_max, int order = 0);

/// <Psi_closed | Psi_oracle> where the bra is the closed-form wavefunction of
/// (form, rho) and the ket is reconstructed pointwise from the amplitude
/// matrix; evaluated by the same rotated Gauss-Hermite quadrature.
/// order <= 0 selects 4 * cutoff + 40.
cplx state_overlap(const GaussianForm& form, double rho,
                   const FockAmplitudes& amps, int order = 0);

}  // namespace tmsv
