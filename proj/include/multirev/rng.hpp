// Counter-based splittable random streams (SplitMix64 with per-stream gamma).
// Stream (seed, index) pairs give statistically independent sequences, so
// Monte-Carlo estimates are reproducible independently of thread scheduling.
#pragma once

#include <cstdint>

namespace multirev {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // uniform on (0, 1]
  double uniform();
  // standard normal (Box-Muller, pairwise)
  double gaussian();
  // +1 or -1 with probability 1/2
  double rademacher();

 private:
  std::uint64_t state_;
  std::uint64_t gamma_;
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace multirev
