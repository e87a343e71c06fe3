// Pseudo-spectral discretization of the nonlinear Schroedinger equation with
// white-noise dispersion on the torus [-pi, pi): modes l in [-K_x/2, K_x/2),
// rotation = per-mode phase exp(-2 pi i l^2 theta) (identity at theta = 1),
// drift = i |u|^{2 sigma} u evaluated on the collocation grid.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "multirev/problem.hpp"

namespace multirev {

struct SpectralField {
  int modes_x = 0;  // K_x
  int sigma = 1;
  double epsilon = 1.0;
  std::vector<std::complex<double>> modes;  // index l + K_x/2

  std::complex<double>& mode(int l) { return modes[static_cast<std::size_t>(l + modes_x / 2)]; }
  std::complex<double> mode(int l) const { return modes[static_cast<std::size_t>(l + modes_x / 2)]; }
};

// u0(x) = exp(-3 x^4 + x^2)
double nls_initial_condition(double x);

OscillatorProblem build_nls_problem(int modes_x, int sigma, double epsilon, bool dealias = false);

// forward transform of u0 sampled on the K_x collocation grid over [-pi, pi)
SpectralField initial_profile(int modes_x);

double l2_norm(const SpectralField& field);  // sqrt(2 pi sum |u_l|^2)
double h1_norm(const SpectralField& field);  // sqrt(2 pi sum (1 + l^2) |u_l|^2)

// real state packing: state[2 i], state[2 i + 1] = Re, Im of mode l = i - K_x/2
RealVec pack_state(const SpectralField& field);
SpectralField unpack_state(std::span<const double> state, int modes_x, int sigma, double epsilon);

// grid transforms (collocation points x_j = -pi + 2 pi j / K_x)
std::vector<std::complex<double>> field_to_grid(const SpectralField& field);
SpectralField grid_to_field(std::span<const std::complex<double>> grid, int sigma, double epsilon);

struct FieldSample {
  double x = 0.0;
  std::complex<double> u;
};

// evaluate the truncated Fourier series on an n-point grid over [-pi, pi)
std::vector<FieldSample> sample_field(const SpectralField& field, int points);

}  // namespace multirev
