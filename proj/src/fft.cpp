#include "multirev/fft.hpp"

#include <cmath>
#include <numbers>

namespace multirev {

namespace {

void fft_radix2(std::span<std::complex<double>> x, bool inverse) {
  const std::size_t n = x.size();
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = x[i + j];
        const std::complex<double> v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_direct(std::span<std::complex<double>> x, bool inverse) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const double sgn = inverse ? 2.0 : -2.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sgn * std::numbers::pi * static_cast<double>(j * k % n) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  for (std::size_t k = 0; k < n; ++k) x[k] = out[k];
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void dft_forward(std::span<std::complex<double>> x) {
  if (x.size() <= 1) return;
  if (is_power_of_two(x.size())) {
    fft_radix2(x, false);
  } else {
    dft_direct(x, false);
  }
}

void dft_inverse(std::span<std::complex<double>> x) {
  if (x.size() <= 1) return;
  if (is_power_of_two(x.size())) {
    fft_radix2(x, true);
  } else {
    dft_direct(x, true);
  }
  const double inv = 1.0 / static_cast<double>(x.size());
  for (auto& v : x) v *= inv;
}

}  // namespace multirev
