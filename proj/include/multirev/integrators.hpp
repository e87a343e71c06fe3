// Multirevolution steppers: the explicit weak-order-two method (A), the
// implicit midpoint variant that conserves quadratic invariants (B), the
// deterministic averaged limit method, the exact-random-variable local scheme,
// and the strong piecewise-linear-path reference.
#pragma once

#include <span>
#include <vector>

#include "multirev/brownian_path.hpp"
#include "multirev/noise.hpp"
#include "multirev/problem.hpp"

namespace multirev {

struct StepReport {
  RealVec state;
  int fp_iterations = 0;    // 0 for explicit steps
  double fp_residual = 0.0; // last iterate difference
  double imag_residue = 0.0;
};

StepReport step_method_a(const OscillatorProblem& problem, std::span<const double> y,
                         const SchemeConfig& config, const NoiseDraw& draw);

StepReport step_method_b(const OscillatorProblem& problem, std::span<const double> y,
                         const SchemeConfig& config, const NoiseDraw& draw);

StepReport step_euler_limit(const OscillatorProblem& problem, std::span<const double> y,
                            const SchemeConfig& config);

// Classical RK4 on dy/dt = <g0>(y).
RealVec solve_averaged_ode(const OscillatorProblem& problem, std::span<const double> y0,
                           double t_final, int steps);

// One application of the local scheme with path-exact alpha, beta (full double sum).
StepReport step_exact_rv(const OscillatorProblem& problem, std::span<const double> y,
                         const SchemeConfig& config, const OracleDraw& draw);

// Strong reference along a piecewise-linear driving path: integrates the
// rotating-frame flow Z' = eps g0_{W(s)}(Z) with RK4 substeps per segment and
// applies the final rotation (identity at revolution times).
RealVec reference_strong_path(const OscillatorProblem& problem, std::span<const double> y,
                              const BrownianPath& path, int substeps = 4);
RealVec reference_strong_path(const OscillatorProblem& problem, std::span<const double> y,
                              int revolutions, double tau, Rng& rng, int substeps = 4);

enum class Method { euler_limit, method_a, method_b, exact_rv };

Method parse_method(const std::string& name);        // "euler-limit" | "method-a" | "method-b" | "exact-rv"
std::string method_name(Method method);

// m steps with one fresh independent draw per step; returns y0 and every state after it.
std::vector<RealVec> integrate(const OscillatorProblem& problem, std::span<const double> y0,
                               const SchemeConfig& config, Method method, int steps, Rng& rng);

}  // namespace multirev
