// Fourier coefficients of the rotated fields
//   g0_theta(y)    = exp(-A theta) F(exp(A theta) y)
//   g1_theta(y)(z) = exp(-A theta) F'(exp(A theta) y)(exp(A theta) z),
// both 1-periodic in theta, by equispaced quadrature on an oversampled grid.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "multirev/problem.hpp"

namespace multirev {

struct ModeSpectrum {
  int modes = 0;  // K_t; mode index k in [-K_t/2, K_t/2), stored at (k + K_t/2)
  int dim = 0;
  std::vector<std::complex<double>> coeff;  // modes * dim entries, mode-major

  ModeSpectrum() = default;
  ModeSpectrum(int modes_, int dim_)
      : modes(modes_), dim(dim_), coeff(static_cast<std::size_t>(modes_) * dim_) {}

  std::span<const std::complex<double>> at(int k) const {
    return {coeff.data() + static_cast<std::size_t>(k + modes / 2) * dim, static_cast<std::size_t>(dim)};
  }
  std::span<std::complex<double>> at(int k) {
    return {coeff.data() + static_cast<std::size_t>(k + modes / 2) * dim, static_cast<std::size_t>(dim)};
  }
};

// quadrature node count per coefficient run (aliasing guard)
inline int quadrature_points(int modes) { return 2 * modes; }

ModeSpectrum coeffs_g0(const OscillatorProblem& problem, std::span<const double> y, int modes);

ModeSpectrum coeffs_g1_dir(const OscillatorProblem& problem, std::span<const double> y,
                           std::span<const double> z, int modes);

// <g0>(y) = c_0^0(y); throws model_violation_error if the imaginary residue is large
RealVec averaged_field(const OscillatorProblem& problem, std::span<const double> y);

// magnitude profile |c_k^0(y)| folded by |k|; entry j covers modes +-j
std::vector<double> truncation_decay(const OscillatorProblem& problem, std::span<const double> y, int modes);

// Evaluate g0_theta(y) directly (quadrature-free); the oracle for reconstruction tests.
RealVec eval_g0(const OscillatorProblem& problem, double theta, std::span<const double> y);
RealVec eval_g1(const OscillatorProblem& problem, double theta, std::span<const double> y,
                std::span<const double> z);

}  // namespace multirev
