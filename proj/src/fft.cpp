#include "lzsm/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lzsm::fft {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

namespace {

void transform(std::vector<std::complex<double>>& x, double sign) {
  const std::size_t n = x.size();
  if (!is_power_of_two(static_cast<int>(n)))
    throw std::invalid_argument("fft: length must be a power of two");
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wstep(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = x[i + j];
        const auto v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
        w *= wstep;
      }
    }
  }
}

}  // namespace

void forward(std::vector<std::complex<double>>& x) { transform(x, -1.0); }

void inverse(std::vector<std::complex<double>>& x) {
  transform(x, +1.0);
  const double inv = 1.0 / static_cast<double>(x.size());
  for (auto& v : x) v *= inv;
}

std::complex<double> positive_coefficient(
    const std::vector<std::complex<double>>& transformed, int k) {
  const int n = static_cast<int>(transformed.size());
  int idx = ((-k) % n + n) % n;
  return transformed[static_cast<std::size_t>(idx)] /
         static_cast<double>(n);
}

}  // namespace lzsm::fft
