#include "tmsv/state.hpp"

#include <cmath>
#include <stdexcept>

namespace tmsv {

void SqueezeParams::validate() const {
  if (!(std::isfinite(r1) && std::isfinite(r2) && std::isfinite(phi) &&
        std::isfinite(gamma) && std::isfinite(rho)))
    throw std::domain_error("SqueezeParams: nonfinite field");
}

SValue::SValue(double s) : s_(s) {
  if (!(s >= 0.0 && s < 1.0))
    throw std::domain_error("SValue: s must lie in [0, 1)");
}

SValue s_of_r(double r) {
  if (!std::isfinite(r)) throw std::domain_error("s_of_r: nonfinite r");
  const double t = std::tanh(r);
  return SValue(t * t);
}

void GaussianForm::validate() const {
  if (!normalizable())
    throw std::domain_error("GaussianForm: not normalizable (requires a1 > 0, b1 > 0, a1*b1 > c1^2)");
}

namespace {

// exp(-i theta a^dag a) acting on exp(-alpha x^2); alpha half-sum convention,
// vacuum alpha = 1/2 is the fixed point.
cplx phase_rotate_coefficient(cplx alpha, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return (alpha * c + cplx(0.0, 0.5) * s) / (c + cplx(0.0, 2.0) * s * alpha);
}

}  // namespace

GaussianForm gaussian_form(const SqueezeParams& params) {
  params.validate();
  cplx alpha1 = 0.5 * std::exp(2.0 * params.r1);
  cplx alpha2 = 0.5 * std::exp(2.0 * params.r2);
  alpha1 = phase_rotate_coefficient(alpha1, params.gamma);
  alpha2 = phase_rotate_coefficient(alpha2, -params.gamma);
  const double c = std::cos(params.phi), s = std::sin(params.phi);
  GaussianForm form;
  form.A = alpha1 * (c * c) + alpha2 * (s * s);
  form.B = alpha1 * (s * s) + alpha2 * (c * c);
  form.C = (alpha1 - alpha2) * (c * s);
  return form;
}

cplx wavefunction(const GaussianForm& form, double rho, double x1, double x2) {
  form.validate();
  const double pref =
      std::sqrt(2.0 / M_PI) * std::pow(form.det_real(), 0.25);
  const cplx arg = -form.A * (x1 * x1) - form.B * (x2 * x2) +
                   2.0 * form.C * (x1 * x2) + cplx(0.0, rho);
  return pref * std::exp(arg);
}

SValue effective_s(cplx alpha) {
  const double a1 = alpha.real();
  if (!(a1 > 0.0)) throw std::domain_error("effective_s: Re(alpha) must be positive");
  const double t = 0.25 / a1 + std::norm(alpha) / a1;  // cosh(2r) >= 1
  double s = (t - 1.0) / (t + 1.0);
  if (s < 0.0) s = 0.0;  // guard rounding at the vacuum point
  return SValue(s);
}

}  // namespace tmsv
