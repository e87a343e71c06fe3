// Fine Brownian paths carrying revolution (unit-crossing) times, and the path
// functionals alpha_k, beta_pk sampled from them. Crossings are located by
// linear interpolation inside the offending increment and inserted as exact
// nodes, so W(T_n) lands on an integer and the rotation returns to identity.
#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "multirev/rng.hpp"

namespace multirev {

struct BrownianPath {
  std::vector<double> time;                 // node times, time[0] = 0
  std::vector<double> value;                // W at nodes, piecewise linear between
  std::vector<std::size_t> crossing_node;   // node index of the n-th revolution

  int revolutions() const { return static_cast<int>(crossing_node.size()); }
  double exit_time() const { return time[crossing_node.back()]; }
};

// nullopt if the path exceeds time_cap_factor * revolutions before finishing
std::optional<BrownianPath> simulate_revolution_path(Rng& rng, int revolutions, double dt,
                                                     double time_cap_factor = 100.0);

struct OracleDraw {
  int revolutions = 1;  // N
  int modes = 0;        // K_t
  std::vector<std::complex<double>> alpha;  // index k + K_t/2
  std::vector<std::complex<double>> beta;   // (p + K_t/2) * K_t + (k + K_t/2)
  bool beta_complete = true;                // false when only selected pairs were accumulated
  double exit_time = 0.0;                   // T_N
  int resamples = 0;                        // paths discarded at the time cap

  std::complex<double> alpha_k(int k) const { return alpha[static_cast<std::size_t>(k + modes / 2)]; }
  std::complex<double> beta_pk(int p, int k) const {
    return beta[static_cast<std::size_t>(p + modes / 2) * modes + (k + modes / 2)];
  }
};

// Simulate one fine path and accumulate alpha and beta by the trapezoidal rule
// on the increment grid. With beta_pairs empty the full (p,k) table is built;
// otherwise only the requested pairs (draw.beta_complete turns false).
OracleDraw oracle_alpha_beta(Rng& rng, int revolutions, int modes, double dt,
                             std::span<const std::pair<int, int>> beta_pairs = {});

// Exact alpha/beta integrals of the piecewise-linear interpolant (closed form
// per segment); the quadrature-error-free route used by the coupling tests.
OracleDraw path_alpha_beta(const BrownianPath& path, int modes);

// exp(z)-related helpers for the per-segment closed forms:
// phi1(z) = (exp(z)-1)/z and its derivatives, stable near z = 0.
std::complex<double> phi1(std::complex<double> z);
std::complex<double> phi1_derivative(int order, std::complex<double> z);

}  // namespace multirev
