#include "multirev/noise.hpp"

#include <stdexcept>

namespace multirev {

NoiseDraw alpha_hat_from_signs(const Matrix& gamma, int revolutions, int modes,
                               std::span<const double> signs) {
  const int half = modes / 2;
  if (gamma.rows != static_cast<std::size_t>(2 * half) || gamma.cols != gamma.rows)
    throw std::invalid_argument("alpha_hat_from_signs: gamma has wrong shape for the mode count");
  if (signs.size() != static_cast<std::size_t>(2 * half))
    throw std::invalid_argument("alpha_hat_from_signs: need modes sign variables");

  NoiseDraw draw;
  draw.revolutions = revolutions;
  draw.modes = modes;
  draw.tables = moment_tables(revolutions);
  draw.alpha.assign(static_cast<std::size_t>(modes), {0.0, 0.0});
  for (int k = 0; k < half; ++k) {
    double re = (k == 0) ? 1.0 : 0.0;
    double im = 0.0;
    for (std::size_t l = 0; l < gamma.cols; ++l) {
      re += gamma(static_cast<std::size_t>(2 * k), l) * signs[l];
      im += gamma(static_cast<std::size_t>(2 * k + 1), l) * signs[l];
    }
    draw.alpha[static_cast<std::size_t>(half + k)] = {re, im};
    if (k > 0) draw.alpha[static_cast<std::size_t>(half - k)] = {re, -im};
  }
  // k = -K_t/2 stays zero: its only nonzero pair partner (+K_t/2) lies outside
  // the truncation range, so all in-range moment conditions hold.
  return draw;
}

NoiseDraw sample_alpha_hat(Rng& rng, const Matrix& gamma, int revolutions, int modes) {
  std::vector<double> signs(static_cast<std::size_t>(noise_sign_count(modes)));
  for (auto& s : signs) s = rng.rademacher();
  return alpha_hat_from_signs(gamma, revolutions, modes, signs);
}

}  // namespace multirev
