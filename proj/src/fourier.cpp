#include "multirev/fourier.hpp"

#include <cmath>

#include "multirev/fft.hpp"

namespace multirev {

namespace {

// Transform M equispaced samples (sample-major, M x dim) into the centered
// mode range [-K/2, K/2). Scratch buffers are thread-local: the fixed-point
// loops call this thousands of times per step.
ModeSpectrum samples_to_modes(const std::vector<double>& samples, int M, int dim, int modes) {
  thread_local std::vector<std::complex<double>> line;
  line.assign(static_cast<std::size_t>(M), {});
  ModeSpectrum spec(modes, dim);
  for (int c = 0; c < dim; ++c) {
    for (int j = 0; j < M; ++j) line[j] = samples[static_cast<std::size_t>(j) * dim + c];
    dft_forward(line);
    for (int k = -modes / 2; k < modes / 2; ++k) {
      const int bin = (k % M + M) % M;
      spec.at(k)[c] = line[bin] / static_cast<double>(M);
    }
  }
  return spec;
}

}  // namespace

RealVec eval_g0(const OscillatorProblem& problem, double theta, std::span<const double> y) {
  RealVec rotated(problem.dim), f(problem.dim), out(problem.dim);
  problem.rotation(theta, y, rotated);
  problem.drift(rotated, f);
  problem.rotation(-theta, f, out);
  return out;
}

RealVec eval_g1(const OscillatorProblem& problem, double theta, std::span<const double> y,
                std::span<const double> z) {
  RealVec ry(problem.dim), rz(problem.dim), f(problem.dim), out(problem.dim);
  problem.rotation(theta, y, ry);
  problem.rotation(theta, z, rz);
  problem.drift_dir(ry, rz, f);
  problem.rotation(-theta, f, out);
  return out;
}

ModeSpectrum coeffs_g0(const OscillatorProblem& problem, std::span<const double> y, int modes) {
  const int M = quadrature_points(modes);
  const int d = problem.dim;
  thread_local std::vector<double> samples, rotated, f, back;
  samples.assign(static_cast<std::size_t>(M) * d, 0.0);
  rotated.assign(d, 0.0);
  f.assign(d, 0.0);
  back.assign(d, 0.0);
  for (int j = 0; j < M; ++j) {
    const double theta = static_cast<double>(j) / M;
    problem.rotation(theta, y, rotated);
    problem.drift(rotated, f);
    problem.rotation(-theta, f, back);
    for (int c = 0; c < d; ++c) samples[static_cast<std::size_t>(j) * d + c] = back[c];
  }
  return samples_to_modes(samples, M, d, modes);
}

ModeSpectrum coeffs_g1_dir(const OscillatorProblem& problem, std::span<const double> y,
                           std::span<const double> z, int modes) {
  const int M = quadrature_points(modes);
  const int d = problem.dim;
  thread_local std::vector<double> samples, ry, rz, f, back;
  samples.assign(static_cast<std::size_t>(M) * d, 0.0);
  ry.assign(d, 0.0);
  rz.assign(d, 0.0);
  f.assign(d, 0.0);
  back.assign(d, 0.0);
  for (int j = 0; j < M; ++j) {
    const double theta = static_cast<double>(j) / M;
    problem.rotation(theta, y, ry);
    problem.rotation(theta, z, rz);
    problem.drift_dir(ry, rz, f);
    problem.rotation(-theta, f, back);
    for (int c = 0; c < d; ++c) samples[static_cast<std::size_t>(j) * d + c] = back[c];
  }
  return samples_to_modes(samples, M, d, modes);
}

RealVec averaged_field(const OscillatorProblem& problem, std::span<const double> y) {
  // c_0^0 from a modest grid; the mean over nodes is the k = 0 coefficient
  const int modes = 32;
  ModeSpectrum spec = coeffs_g0(problem, y, modes);
  auto c0 = spec.at(0);
  RealVec out(problem.dim);
  double ynorm = 0.0;
  for (double v : y) ynorm += v * v;
  ynorm = std::sqrt(ynorm);
  for (int c = 0; c < problem.dim; ++c) {
    if (std::abs(c0[c].imag()) > 1e-12 * (1.0 + ynorm)) {
      throw model_violation_error("averaged_field: imaginary residue " + std::to_string(c0[c].imag()) +
                                  " in component " + std::to_string(c));
    }
    out[c] = c0[c].real();
  }
  return out;
}

std::vector<double> truncation_decay(const OscillatorProblem& problem, std::span<const double> y, int modes) {
  ModeSpectrum spec = coeffs_g0(problem, y, modes);
  std::vector<double> profile(static_cast<std::size_t>(modes / 2) + 1, 0.0);
  for (int k = -modes / 2; k < modes / 2; ++k) {
    double mag = 0.0;
    for (auto v : spec.at(k)) mag += std::norm(v);
    mag = std::sqrt(mag);
    auto& slot = profile[static_cast<std::size_t>(std::abs(k))];
    slot = std::max(slot, mag);
  }
  return profile;
}

}  // namespace multirev
