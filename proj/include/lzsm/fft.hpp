// fft.hpp — In-place radix-2 complex FFT for the one-dimensional period
// transforms (mode coefficients, transition elements, delta_n).
//
// Forward convention: X_s = sum_m x_m exp(-2 pi i m s / N).
// Thread-safe: no global state, no planning.

#pragma once

#include <complex>
#include <vector>

namespace lzsm::fft {

// In-place forward transform; N = x.size() must be a power of two >= 1.
void forward(std::vector<std::complex<double>>& x);

// In-place inverse transform (conjugate convention, including the 1/N factor).
void inverse(std::vector<std::complex<double>>& x);

bool is_power_of_two(int n);

// Extracts the positive-exponent Fourier coefficient
//   (1/N) sum_m exp(+2 pi i k m / N) x_m
// from a forward-transformed array, i.e. bin (N - k) mod N scaled by 1/N.
std::complex<double> positive_coefficient(
    const std::vector<std::complex<double>>& transformed, int k);

}  // namespace lzsm::fft
