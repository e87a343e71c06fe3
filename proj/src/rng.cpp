#include "multirev/rng.hpp"

#include <array>
#include <cmath>

namespace multirev {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Marsaglia-Tsang ziggurat tables for the standard normal, built once.
struct Ziggurat {
  static constexpr int kLayers = 128;
  static constexpr double kR = 3.442619855899;
  static constexpr double kV = 9.91256303526217e-3;
  std::array<double, kLayers + 1> x{};
  std::array<double, kLayers> y{};

  Ziggurat() {
    auto f = [](double t) { return std::exp(-0.5 * t * t); };
    x[kLayers] = kV / f(kR);
    x[kLayers - 1] = kR;
    x[0] = 0.0;
    for (int i = kLayers - 2; i >= 1; --i) {
      x[i] = std::sqrt(-2.0 * std::log(kV / x[i + 1] + f(x[i + 1])));
    }
    for (int i = 0; i < kLayers; ++i) y[i] = f(x[i]);
  }
};

const Ziggurat& ziggurat() {
  static const Ziggurat z;
  return z;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  state_ = mix64(seed + kGolden * (stream + 1));
  // distinct odd increment per stream keeps orbits disjoint
  gamma_ = mix64(state_ ^ mix64(stream + 0x6A09E667F3BCC909ULL)) | 1ULL;
}

std::uint64_t Rng::next_u64() {
  state_ += gamma_;
  return mix64(state_);
}

double Rng::uniform() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::gaussian() {
  const auto& zig = ziggurat();
  while (true) {
    const std::uint64_t bits = next_u64();
    const int layer = static_cast<int>(bits & 127u);
    const bool negative = (bits >> 7) & 1u;
    // 53-bit uniform in [0,1)
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    const double xi = u * zig.x[layer + 1];
    if (xi < zig.x[layer]) {
      return negative ? -xi : xi;
    }
    if (layer == Ziggurat::kLayers - 1) {
      // tail beyond kR
      while (true) {
        const double e = -std::log(uniform()) / Ziggurat::kR;
        const double w = -std::log(uniform());
        if (e * e <= 2.0 * w) {
          const double t = Ziggurat::kR + e;
          return negative ? -t : t;
        }
      }
    }
    const double fx = std::exp(-0.5 * xi * xi);
    if (uniform() * (zig.y[layer] - zig.y[layer + 1]) <= fx - zig.y[layer + 1]) {
      return negative ? -xi : xi;
    }
  }
}

double Rng::rademacher() {
  return (next_u64() >> 63) ? 1.0 : -1.0;
}

}  // namespace multirev
