// One macro-step's discrete noise surrogate: bounded random alpha-hat built
// from Rademacher signs through the covariance square root, conjugate-
// symmetric so states stay real, plus the deterministic beta tables.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "multirev/linalg.hpp"
#include "multirev/moments.hpp"
#include "multirev/rng.hpp"

namespace multirev {

struct NoiseDraw {
  int revolutions = 1;  // N
  int modes = 0;        // K_t
  std::vector<std::complex<double>> alpha;  // index k + K_t/2, k in [-K_t/2, K_t/2)
  MomentTables tables;

  std::complex<double> alpha_hat(int k) const { return alpha[static_cast<std::size_t>(k + modes / 2)]; }
  double beta_hat(int p, int k) const { return tables.mean_beta(p, k); }
  double beta_tilde_hat(int p, int k) const { return tables.mean_beta_tilde(p, k); }
};

// alpha_hat_k = delta_k + sum_l (Gamma_{2k,l} + i Gamma_{2k+1,l}) xi_l for k >= 0,
// conjugates for k < 0; the unpaired mode k = -K_t/2 carries no randomness.
NoiseDraw alpha_hat_from_signs(const Matrix& gamma, int revolutions, int modes,
                               std::span<const double> signs);

NoiseDraw sample_alpha_hat(Rng& rng, const Matrix& gamma, int revolutions, int modes);

// number of Rademacher variables one draw consumes
inline int noise_sign_count(int modes) { return modes; }

}  // namespace multirev
