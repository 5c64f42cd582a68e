#pragma once

#include "tmsv/specfun.hpp"

namespace tmsv {

/// Physical parameters of the two-mode squeezed vacuum: squeezing strengths
/// r1, r2, the coordinate-space rotation angle phi, half the mutual phase
/// shift gamma, and a global phase rho that is carried but never affects any
/// probability downstream.
struct SqueezeParams {
  double r1 = 0.0;
  double r2 = 0.0;
  double phi = 0.0;
  double gamma = 0.0;
  double rho = 0.0;

  void validate() const;  // all fields finite
};

/// s = tanh^2(r), the single value the one-mode photon statistics depend on.
/// Strictly within [0, 1); s -> 1 (infinite squeezing) is excluded.
class SValue {
 public:
  explicit SValue(double s);
  double value() const { return s_; }

 private:
  double s_;
};

SValue s_of_r(double r);

/// Complex coefficients of the bivariate Gaussian
///   exp(-A x1^2 - B x2^2 + 2 C x1 x2);
/// a1(), b1(), c1() are the real parts, and det_real() = a1*b1 - c1^2 is the
/// quantity under the fourth root of the normalization prefactor.
struct GaussianForm {
  cplx A{0.5, 0.0};
  cplx B{0.5, 0.0};
  cplx C{0.0, 0.0};

  double a1() const { return A.real(); }
  double b1() const { return B.real(); }
  double c1() const { return C.real(); }
  double det_real() const { return a1() * b1() - c1() * c1(); }
  bool normalizable() const { return a1() > 0.0 && b1() > 0.0 && det_real() > 0.0; }
  void validate() const;  // throws domain_error when not normalizable
};

/// Composes the Gaussian-form coefficients from the physical parameters by
/// three exact actions on quadratic forms:
///   1. the two single-mode squeezes give the diagonal coefficients
///      e^{2 r_j}/2 (vacuum coefficient 1/2, units hbar = m = omega = 1);
///   2. the mutual phase shift applies single-mode phase-space rotations of
///      -gamma / +gamma to modes 1 / 2, each acting on its coefficient by the
///      Moebius transform of the fractional Fourier transform;
///   3. the coordinate rotation by phi mixes the two coefficients into A, B
///      and generates the correlation C.
/// The sign conventions of steps 2 and 3 are pinned by unit overlap with the
/// operator-built reference state (see the oracle module tests).
GaussianForm gaussian_form(const SqueezeParams& params);

/// sqrt(2/pi) (a1 b1 - c1^2)^{1/4} exp(-A x1^2 - B x2^2 + 2 C x1 x2 + i rho)
cplx wavefunction(const GaussianForm& form, double rho, double x1, double x2);

/// Photon-statistics parameter of the single-mode Gaussian exp(-alpha x^2):
/// every normalizable centered pure Gaussian is a phase-space rotation of a
/// squeezed vacuum, so its photon distribution is that of some s = tanh^2 r.
/// From the covariance of exp(-alpha x^2) (sigma_xx = 1/(4 a1),
/// sigma_pp = |alpha|^2 / a1, pure state), cosh 2r = sigma_xx + sigma_pp and
/// s = (cosh 2r - 1)/(cosh 2r + 1).
SValue effective_s(cplx alpha);

}  // namespace tmsv
