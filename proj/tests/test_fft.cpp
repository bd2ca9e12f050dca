// Unit tests for the radix-2 FFT: transform conventions, round trips,
// Parseval, and the positive-coefficient accessor.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lzsm/fft.hpp"

using lzsm::fft::forward;
using lzsm::fft::inverse;
using lzsm::fft::is_power_of_two;
using lzsm::fft::positive_coefficient;
using std::numbers::pi;

namespace {
using cvec = std::vector<std::complex<double>>;

cvec random_vector(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cvec x(static_cast<std::size_t>(n));
  for (auto& v : x) v = {u(rng), u(rng)};
  return x;
}
}  // namespace

TEST_SUITE_BEGIN("fft");

TEST_CASE("power-of-two predicate") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(2));
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(-4));
  CHECK_FALSE(is_power_of_two(3));
  CHECK_FALSE(is_power_of_two(768));
}

TEST_CASE("non-power-of-two lengths are rejected") {
  cvec x(6, {1.0, 0.0});
  CHECK_THROWS_AS(forward(x), std::invalid_argument);
  cvec y(12, {1.0, 0.0});
  CHECK_THROWS_AS(inverse(y), std::invalid_argument);
}

TEST_CASE("impulse and constant transforms") {
  cvec x(8, {0.0, 0.0});
  x[0] = {1.0, 0.0};
  forward(x);
  for (const auto& v : x) CHECK(std::abs(v - std::complex<double>(1.0, 0.0)) <= 1e-15);

  cvec c(8, {1.0, 0.0});
  forward(c);
  CHECK(std::abs(c[0] - std::complex<double>(8.0, 0.0)) <= 1e-14);
  for (std::size_t s = 1; s < c.size(); ++s) CHECK(std::abs(c[s]) <= 1e-14);
}

TEST_CASE("forward convention: exp(+2 pi i m s0 / N) lands in bin s0") {
  const int N = 16;
  for (int s0 : {1, 5, 11}) {
    cvec x(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m)
      x[static_cast<std::size_t>(m)] =
          std::polar(1.0, 2.0 * pi * m * s0 / N);
    // X_s = sum_m x_m exp(-2 pi i m s / N) peaks at s = s0 with value N.
    forward(x);
    for (int s = 0; s < N; ++s) {
      const double expect = (s == s0) ? static_cast<double>(N) : 0.0;
      CHECK(std::abs(x[static_cast<std::size_t>(s)] -
                     std::complex<double>(expect, 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("forward then inverse is the identity") {
  for (int n : {1, 2, 8, 64, 1024}) {
    CAPTURE(n);
    const cvec orig = random_vector(n, 1234u + static_cast<unsigned>(n));
    cvec x = orig;
    forward(x);
    inverse(x);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst,
                       std::abs(x[static_cast<std::size_t>(i)] -
                                orig[static_cast<std::size_t>(i)]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("Parseval: sum |x|^2 equals (1/N) sum |X|^2") {
  const int n = 256;
  cvec x = random_vector(n, 77u);
  double time_energy = 0.0;
  for (const auto& v : x) time_energy += std::norm(v);
  forward(x);
  double freq_energy = 0.0;
  for (const auto& v : x) freq_energy += std::norm(v);
  freq_energy /= n;
  CHECK(time_energy == doctest::Approx(freq_energy).epsilon(1e-12));
}

TEST_CASE("positive_coefficient extracts c from c exp(-2 pi i k m / N)") {
  // The accessor projects with exp(+2 pi i k m / N) / N, so it recovers the
  // amplitude of the conjugate tone — the physics convention used for mode
  // coefficients, |Phi(t)> = sum_k exp(-i k Omega t) c_k.
  const int N = 64;
  const std::complex<double> c(0.7, -1.3);
  for (int k : {0, 3, 17}) {
    cvec x(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m)
      x[static_cast<std::size_t>(m)] =
          c * std::polar(1.0, -2.0 * pi * k * m / N);
    forward(x);
    CHECK(std::abs(positive_coefficient(x, k) - c) <= 1e-13);
    // All other probed coefficients vanish.
    for (int j : {1, 9, 30}) {
      if (j == k) continue;
      CHECK(std::abs(positive_coefficient(x, j)) <= 1e-13);
    }
  }
}

TEST_CASE("positive_coefficient on a two-tone signal") {
  const int N = 128;
  const std::complex<double> c1(1.0, 0.25), c2(-0.4, 0.9);
  cvec x(static_cast<std::size_t>(N));
  for (int m = 0; m < N; ++m)
    x[static_cast<std::size_t>(m)] =
        c1 * std::polar(1.0, -2.0 * pi * 5.0 * m / N) +
        c2 * std::polar(1.0, 2.0 * pi * 9.0 * m / N);
  forward(x);
  CHECK(std::abs(positive_coefficient(x, 5) - c1) <= 1e-13);
  // Negative k reaches the positive-exponent tone, which the forward
  // transform parks in plain bin +9.
  CHECK(std::abs(positive_coefficient(x, -9) - c2) <= 1e-13);
  CHECK(std::abs(x[9] / static_cast<double>(N) - c2) <= 1e-13);
  CHECK(std::abs(positive_coefficient(x, 9)) <= 1e-13);
}

TEST_SUITE_END();
