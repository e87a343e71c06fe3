// Problem abstraction for highly-oscillatory SDEs whose fast rotation is
// driven by a scalar Stratonovich noise: the matrix A enters only through the
// action of exp(A*theta), which is 1-periodic, and the slow dynamics through
// the nonlinearity F and its directional derivative.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace multirev {

using RealVec = std::vector<double>;

// exp(A) != Id or broken conjugate symmetry detected at runtime
struct model_violation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// implicit step failed to contract within the iteration cap
struct step_rejected_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_a_covariance_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RotationFn = std::function<void(double, std::span<const double>, std::span<double>)>;
using DriftFn = std::function<void(std::span<const double>, std::span<double>)>;
using DriftDirFn = std::function<void(std::span<const double>, std::span<const double>, std::span<double>)>;

struct OscillatorProblem {
  int dim = 0;
  double epsilon = 0.0;
  RotationFn rotation;       // (theta, y) -> exp(A*theta) y, periodic in theta with period 1
  DriftFn drift;             // y -> F(y)
  DriftDirFn drift_dir;      // (y, z) -> F'(y) z
  RealVec invariant_matrix;  // dim*dim symmetric S with Q(y) = y^T S y / 2; empty if none

  bool has_invariant() const { return !invariant_matrix.empty(); }

  RealVec rotate(double theta, std::span<const double> y) const;
  RealVec drift_at(std::span<const double> y) const;
  RealVec drift_dir_at(std::span<const double> y, std::span<const double> z) const;
  double quadratic_invariant(std::span<const double> y) const;
};

struct SchemeConfig {
  int revolutions = 1;  // N, revolutions per macro-step
  int modes = 8;        // K_t, even >= 2; mode index k in [-K_t/2, K_t/2)
  double fp_tol = 1e-13;
  int fp_max_iters = 50;
  std::uint64_t seed = 0;
  double oracle_dt = 1e-3;  // fine-path resolution for exact-random-variable draws

  // H = N * epsilon, recomputed rather than stored
  double macro_step(double epsilon) const { return revolutions * epsilon; }
  void validate() const;
};

// Kubo oscillator: planar rotation by 2*pi*theta, F(y) = a*J*y, |y|^2 invariant.
OscillatorProblem make_kubo(double a, double epsilon);

// Kubo with F(y) = (1 + y1^3 + y2^5) J y; same rotation and invariant.
OscillatorProblem make_nonlinear_kubo(double epsilon);

// Generic problem. The rotation is probed at theta = 0 and theta = 1 on random
// vectors; a central finite difference substitutes for a missing drift_dir.
OscillatorProblem make_custom(int dim, RotationFn rotation, DriftFn drift,
                              DriftDirFn drift_dir = nullptr,
                              std::optional<RealVec> invariant_matrix = std::nullopt,
                              double epsilon = 1.0);

}  // namespace multirev
