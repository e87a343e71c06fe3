// Small complex DFT utilities: iterative radix-2 FFT for power-of-two sizes,
// direct summation otherwise. Sizes here stay in the hundreds.
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace multirev {

// In-place forward DFT: x[k] <- sum_j x[j] exp(-2*pi*i*j*k/n).
void dft_forward(std::span<std::complex<double>> x);

// In-place inverse DFT: x[j] <- (1/n) sum_k x[k] exp(+2*pi*i*j*k/n).
void dft_inverse(std::span<std::complex<double>> x);

bool is_power_of_two(std::size_t n);

}  // namespace multirev
