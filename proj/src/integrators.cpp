#include "multirev/integrators.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

#include "multirev/fourier.hpp"

namespace multirev {

namespace {

using Cplx = std::complex<double>;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double imag_residue_tolerance(double ynorm) { return 1e-9 * (1.0 + std::pow(ynorm, 6)); }

// Take real parts, tracking the discarded imaginary magnitude; broken
// conjugate symmetry shows up here and is an error, not a truncation.
RealVec realize(std::span<const Cplx> acc, double ynorm, double& residue) {
  RealVec out(acc.size());
  residue = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    residue = std::max(residue, std::abs(acc[i].imag()));
    out[i] = acc[i].real();
  }
  if (residue > imag_residue_tolerance(ynorm)) {
    throw model_violation_error("step: imaginary residue " + std::to_string(residue) +
                                " exceeds tolerance; conjugate symmetry is broken");
  }
  return out;
}

// Directional-derivative spectra c_p^1(y)(c_k^0(y)) for all direction modes k,
// backed by at most one pair of real-direction quadrature runs per |k|
// (directions c_k and c_{-k} share real and imaginary parts up to sign).
class G1Cache {
 public:
  G1Cache(const OscillatorProblem& problem, std::span<const double> y, const ModeSpectrum& s0)
      : problem_(problem), y_(y), s0_(s0), half_(s0.modes / 2) {
    re_.resize(half_ + 1);
    im_.resize(half_ + 1);
    im_zero_.assign(half_ + 1, 0);
    dir_scale_ = 1.0 + norm2(y);
  }

  // acc += weight * c_p^1(y)(c_k^0(y))
  void accumulate(int p, int k_dir, Cplx weight, std::vector<Cplx>& acc) {
    const int j = (k_dir == -half_) ? half_ : std::abs(k_dir);
    ensure(j);
    const double sgn = (k_dir >= 0 || k_dir == -half_) ? 1.0 : -1.0;
    auto re_row = re_[j]->at(p);
    if (im_zero_[j]) {
      for (int c = 0; c < problem_.dim; ++c) acc[c] += weight * re_row[c];
    } else {
      auto im_row = im_[j]->at(p);
      for (int c = 0; c < problem_.dim; ++c) acc[c] += weight * (re_row[c] + sgn * Cplx(0.0, 1.0) * im_row[c]);
    }
  }

 private:
  void ensure(int j) {
    if (re_[j]) return;
    const int mode = (j == half_) ? -half_ : j;
    auto row = s0_.at(mode);
    RealVec re_dir(problem_.dim), im_dir(problem_.dim);
    double im_norm = 0.0;
    for (int c = 0; c < problem_.dim; ++c) {
      re_dir[c] = row[c].real();
      im_dir[c] = row[c].imag();
      im_norm += im_dir[c] * im_dir[c];
    }
    re_[j] = std::make_unique<ModeSpectrum>(coeffs_g1_dir(problem_, y_, re_dir, s0_.modes));
    if (std::sqrt(im_norm) > 1e-14 * dir_scale_) {
      im_[j] = std::make_unique<ModeSpectrum>(coeffs_g1_dir(problem_, y_, im_dir, s0_.modes));
    } else {
      im_zero_[j] = 1;
    }
  }

  const OscillatorProblem& problem_;
  std::span<const double> y_;
  const ModeSpectrum& s0_;
  int half_;
  double dir_scale_;
  std::vector<std::unique_ptr<ModeSpectrum>> re_, im_;
  std::vector<char> im_zero_;
};

// spectrum of g^1 in an arbitrary complex direction (R-linear split)
ModeSpectrum coeffs_g1_complex_dir(const OscillatorProblem& problem, std::span<const double> y,
                                   std::span<const Cplx> z, int modes, double scale) {
  RealVec re_dir(problem.dim), im_dir(problem.dim);
  double im_norm = 0.0;
  for (int c = 0; c < problem.dim; ++c) {
    re_dir[c] = z[c].real();
    im_dir[c] = z[c].imag();
    im_norm += im_dir[c] * im_dir[c];
  }
  ModeSpectrum out = coeffs_g1_dir(problem, y, re_dir, modes);
  if (std::sqrt(im_norm) > 1e-14 * scale) {
    const ModeSpectrum si = coeffs_g1_dir(problem, y, im_dir, modes);
    for (std::size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += Cplx(0.0, 1.0) * si.coeff[i];
  }
  return out;
}

}  // namespace

StepReport step_method_a(const OscillatorProblem& problem, std::span<const double> y,
                         const SchemeConfig& config, const NoiseDraw& draw) {
  config.validate();
  if (draw.modes != config.modes || draw.revolutions != config.revolutions)
    throw std::invalid_argument("step_method_a: draw built for different (N, K_t)");
  const int K = config.modes;
  const int half = K / 2;
  const double H = config.macro_step(problem.epsilon);

  const ModeSpectrum s0 = coeffs_g0(problem, y, K);
  std::vector<Cplx> acc(problem.dim, Cplx(0.0, 0.0));
  for (int k = -half; k < half; ++k) {
    const Cplx a = draw.alpha_hat(k);
    auto row = s0.at(k);
    for (int c = 0; c < problem.dim; ++c) acc[c] += H * a * row[c];
  }

  // H^2 term: beta-hat vanishes off {p=0} u {k=0} u {p+k=0}, so one spectrum
  // per direction mode suffices and the cost stays linear in K_t.
  G1Cache cache(problem, y, s0);
  std::vector<Cplx> acc2(problem.dim, Cplx(0.0, 0.0));
  cache.accumulate(0, 0, draw.beta_hat(0, 0), acc2);
  for (int k = -half; k < half; ++k) {
    if (k == 0) continue;
    cache.accumulate(0, k, draw.beta_hat(0, k), acc2);
    cache.accumulate(k, 0, draw.beta_hat(k, 0), acc2);
    if (-k >= -half && -k < half) cache.accumulate(k, -k, draw.beta_hat(k, -k), acc2);
  }
  const double H2 = H * H;
  for (int c = 0; c < problem.dim; ++c) acc[c] = Cplx(y[c], 0.0) + acc[c] + H2 * acc2[c];

  StepReport report;
  report.state = realize(acc, norm2(y), report.imag_residue);
  return report;
}

StepReport step_method_b(const OscillatorProblem& problem, std::span<const double> y,
                         const SchemeConfig& config, const NoiseDraw& draw) {
  config.validate();
  if (draw.modes != config.modes || draw.revolutions != config.revolutions)
    throw std::invalid_argument("step_method_b: draw built for different (N, K_t)");
  const int K = config.modes;
  const int half = K / 2;
  const double H = config.macro_step(problem.epsilon);
  const double ynorm = norm2(y);

  StepReport report;
  report.state.assign(y.begin(), y.end());
  RealVec mid(problem.dim);
  std::vector<Cplx> acc(problem.dim), v1(problem.dim);

  for (int iter = 1; iter <= config.fp_max_iters; ++iter) {
    for (int c = 0; c < problem.dim; ++c) mid[c] = 0.5 * (y[c] + report.state[c]);
    const ModeSpectrum s0 = coeffs_g0(problem, mid, K);

    std::fill(acc.begin(), acc.end(), Cplx(0.0, 0.0));
    std::fill(v1.begin(), v1.end(), Cplx(0.0, 0.0));
    for (int k = -half; k < half; ++k) {
      const Cplx a = draw.alpha_hat(k);
      auto row = s0.at(k);
      for (int c = 0; c < problem.dim; ++c) acc[c] += H * a * row[c];
      const double bt = draw.beta_tilde_hat(0, k);
      if (bt != 0.0)
        for (int c = 0; c < problem.dim; ++c) v1[c] += bt * row[c];
    }
    // beta-tilde support is {p=0, k!=0} u {p!=0, k=0}: two directional spectra.
    const double scale = 1.0 + norm2(mid);
    const ModeSpectrum d1 = coeffs_g1_complex_dir(problem, mid, v1, K, scale);
    std::vector<Cplx> c0dir(s0.at(0).begin(), s0.at(0).end());
    const ModeSpectrum d2 = coeffs_g1_complex_dir(problem, mid, c0dir, K, scale);

    const double H2 = H * H;
    auto d1row = d1.at(0);
    for (int c = 0; c < problem.dim; ++c) acc[c] += H2 * d1row[c];
    for (int p = -half; p < half; ++p) {
      const double bt = draw.beta_tilde_hat(p, 0);
      if (bt == 0.0) continue;
      auto row = d2.at(p);
      for (int c = 0; c < problem.dim; ++c) acc[c] += H2 * bt * row[c];
    }
    for (int c = 0; c < problem.dim; ++c) acc[c] += y[c];

    RealVec next = realize(acc, ynorm, report.imag_residue);
    double diff = 0.0;
    for (int c = 0; c < problem.dim; ++c) {
      const double d = next[c] - report.state[c];
      diff += d * d;
    }
    diff = std::sqrt(diff);
    report.state = std::move(next);
    report.fp_iterations = iter;
    report.fp_residual = diff;
    if (!std::isfinite(diff)) break;
    if (diff <= config.fp_tol) return report;
  }
  throw step_rejected_error("step_method_b: fixed point did not reach tol " +
                            std::to_string(config.fp_tol) + " within " +
                            std::to_string(config.fp_max_iters) +
                            " iterations; reduce H or raise fp_max_iters");
}

StepReport step_euler_limit(const OscillatorProblem& problem, std::span<const double> y,
                            const SchemeConfig& config) {
  config.validate();
  const double H = config.macro_step(problem.epsilon);
  const ModeSpectrum s0 = coeffs_g0(problem, y, config.modes);
  auto c0 = s0.at(0);
  std::vector<Cplx> acc(problem.dim);
  for (int c = 0; c < problem.dim; ++c) acc[c] = y[c] + H * c0[c];
  StepReport report;
  report.state = realize(acc, norm2(y), report.imag_residue);
  return report;
}

RealVec solve_averaged_ode(const OscillatorProblem& problem, std::span<const double> y0,
                           double t_final, int steps) {
  if (steps < 1) throw std::invalid_argument("solve_averaged_ode: steps must be >= 1");
  const double h = t_final / steps;
  RealVec y(y0.begin(), y0.end());
  RealVec k1, k2, k3, k4, tmp(problem.dim);
  for (int s = 0; s < steps; ++s) {
    k1 = averaged_field(problem, y);
    for (int c = 0; c < problem.dim; ++c) tmp[c] = y[c] + 0.5 * h * k1[c];
    k2 = averaged_field(problem, tmp);
    for (int c = 0; c < problem.dim; ++c) tmp[c] = y[c] + 0.5 * h * k2[c];
    k3 = averaged_field(problem, tmp);
    for (int c = 0; c < problem.dim; ++c) tmp[c] = y[c] + h * k3[c];
    k4 = averaged_field(problem, tmp);
    for (int c = 0; c < problem.dim; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
  }
  return y;
}

StepReport step_exact_rv(const OscillatorProblem& problem, std::span<const double> y,
                         const SchemeConfig& config, const OracleDraw& draw) {
  config.validate();
  if (draw.modes != config.modes || draw.revolutions != config.revolutions)
    throw std::invalid_argument("step_exact_rv: draw built for different (N, K_t)");
  if (!draw.beta_complete)
    throw std::invalid_argument("step_exact_rv: draw carries an incomplete beta table");
  const int K = config.modes;
  const int half = K / 2;
  const double H = config.macro_step(problem.epsilon);

  const ModeSpectrum s0 = coeffs_g0(problem, y, K);
  std::vector<Cplx> acc(problem.dim, Cplx(0.0, 0.0));
  for (int k = -half; k < half; ++k) {
    const Cplx a = draw.alpha_k(k);
    auto row = s0.at(k);
    for (int c = 0; c < problem.dim; ++c) acc[c] += H * a * row[c];
  }
  // full double sum: beta has no sparsity for exact path functionals
  G1Cache cache(problem, y, s0);
  std::vector<Cplx> acc2(problem.dim, Cplx(0.0, 0.0));
  for (int k = -half; k < half; ++k)
    for (int p = -half; p < half; ++p) cache.accumulate(p, k, draw.beta_pk(p, k), acc2);
  const double H2 = H * H;
  for (int c = 0; c < problem.dim; ++c) acc[c] = Cplx(y[c], 0.0) + acc[c] + H2 * acc2[c];

  StepReport report;
  report.state = realize(acc, norm2(y), report.imag_residue);
  return report;
}

RealVec reference_strong_path(const OscillatorProblem& problem, std::span<const double> y,
                              const BrownianPath& path, int substeps) {
  if (substeps < 1) throw std::invalid_argument("reference_strong_path: substeps must be >= 1");
  const double eps = problem.epsilon;
  RealVec z(y.begin(), y.end());
  RealVec k1(problem.dim), k2(problem.dim), k3(problem.dim), k4(problem.dim), tmp(problem.dim);
  auto g = [&](double w, std::span<const double> state, RealVec& out) {
    out = eval_g0(problem, w, state);
  };
  const std::size_t nseg = path.time.size() - 1;
  for (std::size_t s = 0; s < nseg; ++s) {
    const double len = path.time[s + 1] - path.time[s];
    if (len <= 0.0) continue;
    const double w0 = path.value[s];
    const double lam = (path.value[s + 1] - w0) / len;
    const double h = len / substeps;
    for (int j = 0; j < substeps; ++j) {
      const double u0 = j * h;
      g(w0 + lam * u0, z, k1);
      for (int c = 0; c < problem.dim; ++c) tmp[c] = z[c] + 0.5 * h * eps * k1[c];
      g(w0 + lam * (u0 + 0.5 * h), tmp, k2);
      for (int c = 0; c < problem.dim; ++c) tmp[c] = z[c] + 0.5 * h * eps * k2[c];
      g(w0 + lam * (u0 + 0.5 * h), tmp, k3);
      for (int c = 0; c < problem.dim; ++c) tmp[c] = z[c] + h * eps * k3[c];
      g(w0 + lam * (u0 + h), tmp, k4);
      for (int c = 0; c < problem.dim; ++c)
        z[c] += h * eps / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
  }
  // W(T_N) is an integer by construction, so this is the identity up to fmod
  return problem.rotate(std::fmod(path.value.back(), 1.0), z);
}

RealVec reference_strong_path(const OscillatorProblem& problem, std::span<const double> y,
                              int revolutions, double tau, Rng& rng, int substeps) {
  if (tau <= 0.0) throw std::invalid_argument("reference_strong_path: tau must be positive");
  if (100.0 * revolutions / tau > 2e8)
    throw std::length_error("reference_strong_path: tau-grid memory cap exceeded");
  while (true) {
    auto path = simulate_revolution_path(rng, revolutions, tau);
    if (path) return reference_strong_path(problem, y, *path, substeps);
  }
}

Method parse_method(const std::string& name) {
  if (name == "euler-limit") return Method::euler_limit;
  if (name == "method-a") return Method::method_a;
  if (name == "method-b") return Method::method_b;
  if (name == "exact-rv") return Method::exact_rv;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected euler-limit, method-a, method-b or exact-rv)");
}

std::string method_name(Method method) {
  switch (method) {
    case Method::euler_limit: return "euler-limit";
    case Method::method_a: return "method-a";
    case Method::method_b: return "method-b";
    default: return "exact-rv";
  }
}

std::vector<RealVec> integrate(const OscillatorProblem& problem, std::span<const double> y0,
                               const SchemeConfig& config, Method method, int steps, Rng& rng) {
  config.validate();
  if (steps < 0) throw std::invalid_argument("integrate: steps must be >= 0");
  std::vector<RealVec> states;
  states.reserve(steps + 1);
  states.emplace_back(y0.begin(), y0.end());

  Matrix gamma;
  if (method == Method::method_a || method == Method::method_b) {
    gamma = sqrt_covariance(build_covariance(config.revolutions, config.modes));
  }
  for (int m = 0; m < steps; ++m) {
    try {
      switch (method) {
        case Method::euler_limit:
          states.push_back(step_euler_limit(problem, states.back(), config).state);
          break;
        case Method::method_a: {
          const NoiseDraw draw = sample_alpha_hat(rng, gamma, config.revolutions, config.modes);
          states.push_back(step_method_a(problem, states.back(), config, draw).state);
          break;
        }
        case Method::method_b: {
          const NoiseDraw draw = sample_alpha_hat(rng, gamma, config.revolutions, config.modes);
          states.push_back(step_method_b(problem, states.back(), config, draw).state);
          break;
        }
        case Method::exact_rv: {
          const OracleDraw draw =
              oracle_alpha_beta(rng, config.revolutions, config.modes, config.oracle_dt);
          states.push_back(step_exact_rv(problem, states.back(), config, draw).state);
          break;
        }
      }
    } catch (const step_rejected_error& e) {
      throw step_rejected_error("step " + std::to_string(m) + ": " + e.what());
    } catch (const model_violation_error& e) {
      throw model_violation_error("step " + std::to_string(m) + ": " + e.what());
    }
  }
  return states;
}

}  // namespace multirev
