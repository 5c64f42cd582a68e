#include "tmsv/oracle.hpp"

#include <doctest.h>

#include <cmath>

#include "tmsv/joint.hpp"
#include "tmsv/rng.hpp"
#include "tmsv/total.hpp"

using namespace tmsv;

TEST_CASE("build_state_operator: vacuum") {
  const FockAmplitudes amps = build_state_operator(SqueezeParams{}, 8);
  CHECK(std::abs(amps.amplitudes(0, 0)) == doctest::Approx(1.0).epsilon(1e-13));
  double off = 0.0;
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j)
      if (i + j > 0) off = std::max(off, std::abs(amps.amplitudes(i, j)));
  CHECK(off <= 1e-12);
  CHECK(amps.norm_captured == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("build_state_operator: global phase carried") {
  SqueezeParams p;
  p.rho = 1.234;
  const FockAmplitudes amps = build_state_operator(p, 4);
  CHECK(std::arg(amps.amplitudes(0, 0)) == doctest::Approx(1.234).epsilon(1e-12));
}

TEST_CASE("build_state_operator: single squeezed mode matches the closed PMF") {
  const double r = 0.9;
  const SqueezeParams p{r, 0.0, 0.0, 0.0, 0.0};
  const FockAmplitudes amps = build_state_operator(p, 60, 12, 1e-7);
  const SValue s = s_of_r(r);
  double worst = 0.0, cross = 0.0;
  for (int n = 0; n <= 40; ++n) {
    worst = std::max(worst, std::abs(std::norm(amps.amplitudes(n, 0)) -
                                     single_mode_pmf(s, n)));
    for (int n2 = 1; n2 <= 40; ++n2)
      cross = std::max(cross, std::norm(amps.amplitudes(n, n2)));
  }
  CHECK(worst <= 1e-9);
  CHECK(cross <= 1e-12);
}

TEST_CASE("build_state_operator: unitarity at the recommended cutoff") {
  Rng rng(0xc4u);
  for (int t = 0; t < 3; ++t) {
    const SqueezeParams p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                          rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI), 0.0};
    const double rmax = std::max(std::abs(p.r1), std::abs(p.r2));
    const int cutoff =
        20 + static_cast<int>(40.0 * std::pow(std::sinh(rmax), 2));
    const FockAmplitudes amps = build_state_operator(p, cutoff, 12, 1e-7);
    CHECK(amps.norm_captured >= 1.0 - 1e-9);
  }
}

TEST_CASE("build_state_operator: parity emerges without being forced") {
  Rng rng(0x9a51u);
  const SqueezeParams p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                        rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI), 0.0};
  const FockAmplitudes amps = build_state_operator(p, 40, 12, 1e-5);
  double odd = 0.0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j)
      if ((i + j) & 1) odd = std::max(odd, std::norm(amps.amplitudes(i, j)));
  CHECK(odd <= 1e-10);
}

TEST_CASE("build_state_operator: insufficient cutoff raises TruncationError") {
  const SqueezeParams p{1.5, 1.5, 0.4, 0.2, 0.0};
  CHECK_THROWS_AS(build_state_operator(p, 6, 4), TruncationError);
}

TEST_CASE("hermite functions: L2-normalized up to n = 200") {
  const GaussHermiteRule rule = GaussHermiteRule::build(260);
  std::vector<double> psi(201);
  std::vector<double> acc(201, 0.0);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    hermite_functions(200, rule.nodes[i], psi.data());
    const double w = std::exp(rule.log_mod_weights[i]);
    for (int n = 0; n <= 200; ++n) acc[n] += w * psi[n] * psi[n];
  }
  for (int n = 0; n <= 200; n += 7)
    CHECK(acc[n] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("overlap_quadrature: vacuum anchor and diagonal factorization") {
  const GaussianForm vac;
  CHECK(std::abs(overlap_quadrature(vac, 0, 0) - cplx(1.0, 0.0)) <= 1e-12);

  // diagonal form: the overlap factorizes into 1D integrals whose squares
  // are the one-mode statistics
  const SqueezeParams p{0.8, -1.1, 0.0, 0.0, 0.0};
  const GaussianForm f = gaussian_form(p);
  const SValue s1 = s_of_r(p.r1), s2 = s_of_r(p.r2);
  for (int n1 : {0, 2, 6, 14})
    for (int n2 : {0, 4, 10}) {
      const cplx amp = overlap_quadrature(f, n1, n2);
      CHECK(std::norm(amp) ==
            doctest::Approx(single_mode_pmf(s1, n1) * single_mode_pmf(s2, n2))
                .epsilon(1e-9));
    }
  CHECK(std::abs(overlap_quadrature(f, 1, 0)) <= 1e-10);
}

TEST_CASE("two oracles agree elementwise after phase alignment") {
  Rng rng(0x2a9e0u);
  for (int t = 0; t < 2; ++t) {
    const SqueezeParams p{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2),
                          rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI), 0.0};
    const int cutoff = 40;
    const FockAmplitudes op = build_state_operator(p, cutoff, 14, 1e-4);
    const Eigen::MatrixXcd quad =
        quadrature_amplitudes(gaussian_form(p), cutoff, cutoff);
    // align the operator state's free global phase on the largest amplitude
    int bi = 0, bj = 0;
    double best = 0.0;
    for (int i = 0; i <= cutoff; ++i)
      for (int j = 0; j <= cutoff; ++j)
        if (std::abs(op.amplitudes(i, j)) > best) {
          best = std::abs(op.amplitudes(i, j));
          bi = i;
          bj = j;
        }
    const cplx phase =
        quad(bi, bj) / op.amplitudes(bi, bj);
    const cplx align = phase / std::abs(phase);
    double worst = 0.0;
    for (int i = 0; i <= cutoff; ++i)
      for (int j = 0; j <= cutoff; ++j) {
        if (i + j > 36) continue;  // compare well inside the truncation edge
        worst = std::max(worst, std::abs(op.amplitudes(i, j) * align -
                                         quad(i, j)));
      }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("oracle probabilities match joint_pmf at generic parameters") {
  Rng rng(0x0acc3u);
  const SqueezeParams p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                        rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI),
                        rng.uniform(0.0, 2 * M_PI)};
  const FockAmplitudes amps = build_state_operator(p, 44, 12, 1e-5);
  const GaussianForm f = gaussian_form(p);
  double worst = 0.0;
  for (int n1 = 0; n1 <= 30; ++n1)
    for (int n2 = 0; n2 <= 30; ++n2)
      worst = std::max(worst, std::abs(std::norm(amps.amplitudes(n1, n2)) -
                                       joint_pmf(f, n1, n2)));
  CHECK(worst <= 1e-8);
}

TEST_CASE("state_overlap: unit overlap for the composed form") {
  const SqueezeParams p{0.6, -0.8, 1.9, 0.7, 1.1};
  const FockAmplitudes amps = build_state_operator(p, 36, 12, 1e-6);
  CHECK(std::abs(state_overlap(gaussian_form(p), p.rho, amps)) ==
        doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("quadrature errors: invalid inputs") {
  GaussianForm bad;
  bad.B = cplx(-1.0, 0.0);
  CHECK_THROWS_AS(overlap_quadrature(bad, 0, 0), std::domain_error);
  CHECK_THROWS_AS(overlap_quadrature(GaussianForm{}, -1, 0), std::domain_error);
}
