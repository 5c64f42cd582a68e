#include "tmsv/total.hpp"

#include <doctest.h>

#include <cmath>

#include "reference.hpp"
#include "tmsv/rng.hpp"

using namespace tmsv;

TEST_CASE("single_mode_pmf: anchors") {
  const SValue half(0.5), zero(0.0);
  CHECK(single_mode_pmf(half, 1) == 0.0);
  CHECK(single_mode_pmf(half, 17) == 0.0);
  CHECK(single_mode_pmf(zero, 0) == 1.0);
  CHECK(single_mode_pmf(zero, 6) == 0.0);
  // sqrt(0.5) * 0.5 * 2^-2 * C(2,1)
  CHECK(single_mode_pmf(half, 2) ==
        doctest::Approx(std::sqrt(0.5) * 0.5 * 0.25 * 2.0).epsilon(1e-15));
  CHECK(single_mode_pmf(half, 2) == doctest::Approx(0.1767767).epsilon(1e-6));
  CHECK_THROWS_AS(single_mode_pmf(half, -2), std::domain_error);
}

TEST_CASE("single_mode_pmf: exact and log paths agree across the switch") {
  Rng rng(0x51015u);
  for (int t = 0; t < 20; ++t) {
    const SValue s(rng.uniform(0.01, 0.99));
    for (long n : {56L, 58L, 60L, 62L, 64L, 120L}) {
      // independent route: ratio recurrence for C(n, n/2) 2^-n
      long double c = 1.0L;
      for (long j = 0; j < n / 2; ++j) c = c * (2 * j + 1) / (2 * j + 2);
      const long double expect =
          sqrtl(1.0L - s.value()) * powl(s.value(), n / 2.0L) * c;
      CHECK(single_mode_pmf(s, n) ==
            doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
    }
  }
}

TEST_CASE("total_pmf_convolution: anchors") {
  const SValue a(0.5), b(0.99), zero(0.0);
  CHECK(total_pmf_convolution(a, b, 3) == 0.0);
  CHECK(total_pmf_convolution(a, b, 11) == 0.0);
  CHECK(total_pmf_convolution(zero, zero, 0) == 1.0);
  // hand-evaluated two-term sum: N (s1 + s2)/2
  CHECK(total_pmf_convolution(a, b, 2) ==
        doctest::Approx(std::sqrt(0.5) * std::sqrt(0.01) * (0.5 + 0.99) / 2.0)
            .epsilon(1e-14));
  CHECK(total_pmf_convolution(a, b, 2) == doctest::Approx(0.0526795).epsilon(1e-5));
}

TEST_CASE("total_pmf_closed: anchors") {
  const SValue a(0.5), b(0.99), zero(0.0);
  // k = 0 is the normalization factor
  CHECK(total_pmf_closed(a, b, 0) ==
        doctest::Approx(std::sqrt(0.5) * std::sqrt(0.01)).epsilon(1e-14));
  CHECK(total_pmf_closed(a, b, 1) == doctest::Approx(0.0526795).epsilon(1e-5));
  CHECK(total_pmf_closed(zero, zero, 0) == 1.0);
  CHECK(total_pmf_closed(zero, zero, 3) == 0.0);
  // one empty mode reduces to the single-mode statistics
  const SValue s(0.73);
  for (long k : {0L, 1L, 5L, 20L})
    CHECK(total_pmf_closed(s, zero, k) ==
          doctest::Approx(single_mode_pmf(s, 2 * k)).epsilon(1e-13));
}

TEST_CASE("total_pmf_closed: identical squeezing gives the geometric law") {
  for (double sv : {0.5, 0.99}) {
    const SValue s(sv);
    for (long k = 0; k <= 100; ++k) {
      const double expect = (1.0 - sv) * std::pow(sv, static_cast<double>(k));
      CHECK(total_pmf_closed(s, s, k) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("total_pmf_closed: equals the convolution on a grid") {
  double worst = 0.0;
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      const SValue s1(0.99 * i / 8), s2(0.99 * j / 8);
      for (long k = 0; k <= 120; ++k) {
        const double closed = total_pmf_closed(s1, s2, k);
        const double conv = total_pmf_convolution(s1, s2, 2 * k);
        worst = std::max(worst,
                         std::abs(closed - conv) / std::max(conv, 1e-300));
      }
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("total_pmf_closed: symmetric under mode exchange") {
  Rng rng(0x5e35u);
  for (int t = 0; t < 25; ++t) {
    const SValue s1(rng.uniform(0.0, 0.99)), s2(rng.uniform(0.0, 0.99));
    for (long k : {0L, 1L, 3L, 17L, 64L}) {
      const double a = total_pmf_closed(s1, s2, k);
      const double b = total_pmf_closed(s2, s1, k);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(a, 1e-300));
    }
  }
}

TEST_CASE("total_pmf_closed: matches the quad-precision brute sum") {
  double worst = 0.0;
  for (double s1 : {0.1, 0.45, 0.925})
    for (double s2 : {0.05, 0.5, 0.99})
      for (long k : {0L, 2L, 9L, 41L, 200L}) {
        const double closed = total_pmf_closed(SValue(s1), SValue(s2), k);
        const long double brute = ref::total_brute(s1, s2, k);
        worst = std::max(worst, std::abs(static_cast<double>(closed - brute)) /
                                    static_cast<double>(brute));
      }
  CHECK(worst <= 1e-11);
}

TEST_CASE("exponential law: constant log-differences for s1 = s2") {
  for (double sv : {0.5, 0.99}) {
    const SValue s(sv);
    double prev = std::log(total_pmf_closed(s, s, 0));
    for (long k = 1; k <= 100; ++k) {
      const double cur = std::log(total_pmf_closed(s, s, k));
      CHECK(std::abs((cur - prev) - std::log(sv)) <= 1e-10);
      prev = cur;
    }
  }
}

TEST_CASE("total_pmf_table: trivial and generic tables") {
  const Pmf1D trivial = total_pmf_table(SValue(0.0), SValue(0.0), 4);
  REQUIRE(trivial.values.size() == 5);
  CHECK(trivial.values[0] == 1.0);
  for (int n = 1; n <= 4; ++n) CHECK(trivial.values[n] == 0.0);
  CHECK(trivial.tail_bound == 0.0);

  Rng rng(0x7ab1eu);
  for (int t = 0; t < 8; ++t) {
    const SValue s1(rng.uniform(0.0, 0.99)), s2(rng.uniform(0.0, 0.99));
    const int n_max = 40 + static_cast<int>(rng.uniform(0.0, 300.0));
    const Pmf1D table = total_pmf_table(s1, s2, n_max);
    for (int n = 1; n <= n_max; n += 2) CHECK(table.values[n] == 0.0);
    for (double v : table.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    const double sum = table.sum();
    CHECK(sum <= 1.0 + 1e-12);
    CHECK(sum + table.tail_bound >= 1.0 - 1e-12);
  }
}

TEST_CASE("total_pmf_table: partial sums of the geometric series") {
  const double sv = 0.8;
  const Pmf1D table = total_pmf_table(SValue(sv), SValue(sv), 100);
  double partial = 0.0;
  for (long k = 0; k <= 50; ++k) {
    partial += (1.0 - sv) * std::pow(sv, static_cast<double>(k));
    double table_partial = 0.0;
    for (long n = 0; n <= 2 * k; ++n) table_partial += table.values[n];
    CHECK(table_partial == doctest::Approx(partial).epsilon(1e-12));
  }
}

TEST_CASE("total table mean matches sinh^2 r1 + sinh^2 r2") {
  Rng rng(0x3ea7u);
  for (int t = 0; t < 6; ++t) {
    const double r1 = rng.uniform(-1.2, 1.2), r2 = rng.uniform(-1.2, 1.2);
    const Pmf1D table = total_pmf_table(s_of_r(r1), s_of_r(r2), 400);
    double mean = 0.0;
    for (int n = 0; n <= table.n_max; ++n) mean += n * table.values[n];
    const double expect =
        std::pow(std::sinh(r1), 2) + std::pow(std::sinh(r2), 2);
    CHECK(mean == doctest::Approx(expect).epsilon(1e-8));
  }
}
