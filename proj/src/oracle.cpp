#include "tmsv/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace tmsv {

namespace {

Eigen::MatrixXd annihilation_matrix(int dim) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// exp(r (a^2 - a^dag^2) / 2) |0> on the truncated grid; the generator is real
// skew-symmetric, so the truncated exponential is orthogonal and the vector
// stays normalized on the build grid.
Eigen::VectorXd squeezed_vacuum_vector(double r, int dim) {
  const Eigen::MatrixXd a = annihilation_matrix(dim);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd gen = 0.5 * r * (a2 - a2.transpose());
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(dim);
  e0(0) = 1.0;
  return gen.exp() * e0;
}

}  // namespace

FockAmplitudes build_state_operator(const SqueezeParams& params, int cutoff,
                                    int margin, double max_norm_deficit) {
  params.validate();
  if (cutoff < 0) throw std::domain_error("build_state_operator: negative cutoff");
  if (margin < 0) throw std::domain_error("build_state_operator: negative margin");
  const int dim = cutoff + 1 + margin;

  Eigen::MatrixXcd psi =
      (squeezed_vacuum_vector(params.r1, dim) *
       squeezed_vacuum_vector(params.r2, dim).transpose())
          .cast<cplx>();

  // Gamma(gamma) = exp(i gamma (b^dag b - a^dag a)): diagonal in the number basis
  for (int n1 = 0; n1 < dim; ++n1)
    for (int n2 = 0; n2 < dim; ++n2)
      psi(n1, n2) *= std::polar(1.0, params.gamma * (n2 - n1));

  // e^{-i phi M}, M = i (a^dag b - b^dag a): conserves n1+n2, exponentiated
  // per total-photon sector
  for (int n = 1; n <= 2 * (dim - 1); ++n) {
    const int lo = std::max(0, n - (dim - 1));
    const int hi = std::min(n, dim - 1);
    const int sec = hi - lo + 1;
    if (sec <= 1) continue;  // truncated generator has no entries here
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(sec, sec);
    for (int k = 0; k < sec; ++k) {
      const int i = lo + k, j = n - i;
      // M |i,j> = i sqrt((i+1) j) |i+1,j-1> - i sqrt(i (j+1)) |i-1,j+1>
      if (k + 1 < sec) gen(k + 1, k) = cplx(0.0, std::sqrt(double(i + 1) * j));
      if (k - 1 >= 0) gen(k - 1, k) = cplx(0.0, -std::sqrt(double(i) * (j + 1)));
    }
    const Eigen::MatrixXcd scaled = cplx(0.0, -params.phi) * gen;
    const Eigen::MatrixXcd u = scaled.exp();
    Eigen::VectorXcd vec(sec);
    for (int k = 0; k < sec; ++k) vec(k) = psi(lo + k, n - lo - k);
    vec = (u * vec).eval();
    for (int k = 0; k < sec; ++k) psi(lo + k, n - lo - k) = vec(k);
  }

  psi *= std::polar(1.0, params.rho);

  FockAmplitudes out;
  out.cutoff = cutoff;
  out.amplitudes = psi.topLeftCorner(cutoff + 1, cutoff + 1);
  out.norm_captured = out.amplitudes.squaredNorm();
  if (1.0 - out.norm_captured > max_norm_deficit)
    throw TruncationError(
        "build_state_operator: norm deficit " +
        std::to_string(1.0 - out.norm_captured) + " exceeds allowance " +
        std::to_string(max_norm_deficit) + "; increase the cutoff");
  return out;
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

GaussHermiteRule GaussHermiteRule::build(int order) {
  if (order < 1) throw std::domain_error("GaussHermiteRule: order must be >= 1");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
  for (int j = 1; j < order; ++j) {
    const double b = std::sqrt(0.5 * j);
    jac(j, j - 1) = b;
    jac(j - 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.log_mod_weights.resize(order);
  std::vector<double> psi(order);
  for (int i = 0; i < order; ++i) {
    const double x = es.eigenvalues()(i);
    rule.nodes[i] = x;
    hermite_functions(order - 1, x, psi.data());
    double s = 0.0;
    for (int n = 0; n < order; ++n) s += psi[n] * psi[n];
    rule.log_mod_weights[i] = -std::log(s);
  }
  return rule;
}

void hermite_functions(long n_max, double x, double* out) {
  out[0] = std::exp(-0.5 * x * x) / std::pow(M_PI, 0.25);
  if (n_max >= 1) out[1] = M_SQRT2 * x * out[0];
  for (long n = 1; n < n_max; ++n)
    out[n + 1] = std::sqrt(2.0 / (n + 1)) * x * out[n] -
                 std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
}

double hermite_function(long n, double x) {
  if (n < 0) throw std::domain_error("hermite_function: negative n");
  std::vector<double> buf(n + 1);
  hermite_functions(n, x, buf.data());
  return buf[n];
}

namespace {

// Quadrature grid aligned with the principal axes of the real Gaussian decay
// of psi_{n1} psi_{n2} Psi, i.e. of M = [[a1+1/2, -c1], [-c1, b1+1/2]].
// In the scaled axes u the decay is exactly e^{-u.u}, both eigenvalues are
// >= 1/2, and |x| stays within sqrt(2)|u|.
struct RotatedGrid {
  GaussHermiteRule rule;
  double v00, v01, v10, v11;  // eigenvector columns
  double s0, s1;              // axis scales 1/sqrt(mu)

  void point(int i, int j, double* x1, double* x2) const {
    const double u0 = s0 * rule.nodes[i], u1 = s1 * rule.nodes[j];
    *x1 = v00 * u0 + v01 * u1;
    *x2 = v10 * u0 + v11 * u1;
  }
};

RotatedGrid make_grid(const GaussianForm& form, int order) {
  Eigen::Matrix2d m;
  m << form.a1() + 0.5, -form.c1(), -form.c1(), form.b1() + 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  RotatedGrid g;
  g.rule = GaussHermiteRule::build(order);
  g.v00 = es.eigenvectors()(0, 0);
  g.v10 = es.eigenvectors()(1, 0);
  g.v01 = es.eigenvectors()(0, 1);
  g.v11 = es.eigenvectors()(1, 1);
  g.s0 = 1.0 / std::sqrt(es.eigenvalues()(0));
  g.s1 = 1.0 / std::sqrt(es.eigenvalues()(1));
  return g;
}

}  // namespace

cplx overlap_quadrature(const GaussianForm& form, int n1, int n2, int order) {
  form.validate();
  if (n1 < 0 || n2 < 0)
    throw std::domain_error("overlap_quadrature: negative photon number");
  if (order <= 0) order = 2 * (n1 + n2) + 40;
  const RotatedGrid g = make_grid(form, order);
  const double pref =
      std::sqrt(2.0 / M_PI) * std::pow(form.det_real(), 0.25) * g.s0 * g.s1;
  std::vector<double> p1(n1 + 1), p2(n2 + 1);
  cplx acc = 0.0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      double x1, x2;
      g.point(i, j, &x1, &x2);
      const cplx e = -(form.A * (x1 * x1) + form.B * (x2 * x2) -
                       2.0 * form.C * (x1 * x2)) +
                     g.rule.log_mod_weights[i] + g.rule.log_mod_weights[j];
      if (e.real() < -740.0) continue;
      hermite_functions(n1, x1, p1.data());
      hermite_functions(n2, x2, p2.data());
      acc += p1[n1] * p2[n2] * std::exp(e);
    }
  return pref * acc;
}

Eigen::MatrixXcd quadrature_amplitudes(const GaussianForm& form, int n1_max,
                                       int n2_max, int order) {
  form.validate();
  if (n1_max < 0 || n2_max < 0)
    throw std::domain_error("quadrature_amplitudes: negative bound");
  if (order <= 0) order = 2 * (n1_max + n2_max) + 40;
  const RotatedGrid g = make_grid(form, order);
  const double pref =
      std::sqrt(2.0 / M_PI) * std::pow(form.det_real(), 0.25) * g.s0 * g.s1;
  Eigen::MatrixXd acc_re = Eigen::MatrixXd::Zero(n1_max + 1, n2_max + 1);
  Eigen::MatrixXd acc_im = Eigen::MatrixXd::Zero(n1_max + 1, n2_max + 1);
  Eigen::VectorXd p1(n1_max + 1), p2(n2_max + 1);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      double x1, x2;
      g.point(i, j, &x1, &x2);
      const cplx e = -(form.A * (x1 * x1) + form.B * (x2 * x2) -
                       2.0 * form.C * (x1 * x2)) +
                     g.rule.log_mod_weights[i] + g.rule.log_mod_weights[j];
      if (e.real() < -740.0) continue;
      const cplx k = std::exp(e);
      hermite_functions(n1_max, x1, p1.data());
      hermite_functions(n2_max, x2, p2.data());
      acc_re.noalias() += (k.real() * p1) * p2.transpose();
      acc_im.noalias() += (k.imag() * p1) * p2.transpose();
    }
  Eigen::MatrixXcd out(n1_max + 1, n2_max + 1);
  out.real() = pref * acc_re;
  out.imag() = pref * acc_im;
  return out;
}

cplx state_overlap(const GaussianForm& form, double rho,
                   const FockAmplitudes& amps, int order) {
  form.validate();
  if (order <= 0) order = 4 * amps.cutoff + 40;
  const RotatedGrid g = make_grid(form, order);
  const int dim = amps.cutoff + 1;
  Eigen::VectorXd p1(dim), p2(dim);
  cplx acc = 0.0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      double x1, x2;
      g.point(i, j, &x1, &x2);
      // conj(Psi_closed) carries e^{-(conj A) x1^2 - ...}; the reconstructed
      // ket supplies the psi_n Gaussians, all folded into the grid's decay
      const cplx e = -(std::conj(form.A) * (x1 * x1) +
                       std::conj(form.B) * (x2 * x2) -
                       2.0 * std::conj(form.C) * (x1 * x2)) +
                     g.rule.log_mod_weights[i] + g.rule.log_mod_weights[j];
      if (e.real() < -740.0) continue;
      hermite_functions(dim - 1, x1, p1.data());
      hermite_functions(dim - 1, x2, p2.data());
      const Eigen::VectorXcd col = amps.amplitudes * p2.cast<cplx>();
      const cplx ket = (p1.cast<cplx>().array() * col.array()).sum();
      acc += ket * std::exp(e);
    }
  const double pref =
      std::sqrt(2.0 / M_PI) * std::pow(form.det_real(), 0.25) * g.s0 * g.s1;
  return pref * std::polar(1.0, -rho) * acc;
}

}  // namespace tmsv
