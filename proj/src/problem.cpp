#include "multirev/problem.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "multirev/rng.hpp"

namespace multirev {

RealVec OscillatorProblem::rotate(double theta, std::span<const double> y) const {
  RealVec out(dim);
  rotation(theta, y, out);
  return out;
}

RealVec OscillatorProblem::drift_at(std::span<const double> y) const {
  RealVec out(dim);
  drift(y, out);
  return out;
}

RealVec OscillatorProblem::drift_dir_at(std::span<const double> y, std::span<const double> z) const {
  RealVec out(dim);
  drift_dir(y, z, out);
  return out;
}

double OscillatorProblem::quadratic_invariant(std::span<const double> y) const {
  if (!has_invariant()) throw std::logic_error("quadratic_invariant: no invariant matrix set");
  double q = 0.0;
  for (int i = 0; i < dim; ++i) {
    double row = 0.0;
    for (int j = 0; j < dim; ++j) row += invariant_matrix[static_cast<std::size_t>(i) * dim + j] * y[j];
    q += y[i] * row;
  }
  return 0.5 * q;
}

void SchemeConfig::validate() const {
  if (revolutions < 1) throw std::invalid_argument("SchemeConfig: revolutions must be >= 1");
  if (modes < 2 || modes % 2 != 0) throw std::invalid_argument("SchemeConfig: modes must be even and >= 2");
  if (fp_tol <= 0.0) throw std::invalid_argument("SchemeConfig: fp_tol must be positive");
  if (fp_max_iters < 1) throw std::invalid_argument("SchemeConfig: fp_max_iters must be >= 1");
  if (oracle_dt <= 0.0) throw std::invalid_argument("SchemeConfig: oracle_dt must be positive");
}

namespace {

RealVec identity_matrix(int dim) {
  RealVec s(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) s[static_cast<std::size_t>(i) * dim + i] = 1.0;
  return s;
}

void planar_rotation(double theta, std::span<const double> y, std::span<double> out) {
  const double ang = 2.0 * std::numbers::pi * theta;
  const double c = std::cos(ang), s = std::sin(ang);
  for (std::size_t i = 0; i + 1 < y.size(); i += 2) {
    const double a = y[i], b = y[i + 1];
    out[i] = c * a - s * b;
    out[i + 1] = s * a + c * b;
  }
}

}  // namespace

OscillatorProblem make_kubo(double a, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("make_kubo: epsilon must be positive");
  OscillatorProblem p;
  p.dim = 2;
  p.epsilon = epsilon;
  p.rotation = planar_rotation;
  p.drift = [a](std::span<const double> y, std::span<double> out) {
    out[0] = -a * y[1];
    out[1] = a * y[0];
  };
  p.drift_dir = [a](std::span<const double>, std::span<const double> z, std::span<double> out) {
    out[0] = -a * z[1];
    out[1] = a * z[0];
  };
  p.invariant_matrix = identity_matrix(2);
  return p;
}

OscillatorProblem make_nonlinear_kubo(double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("make_nonlinear_kubo: epsilon must be positive");
  OscillatorProblem p;
  p.dim = 2;
  p.epsilon = epsilon;
  p.rotation = planar_rotation;
  p.drift = [](std::span<const double> y, std::span<double> out) {
    const double s = 1.0 + y[0] * y[0] * y[0] + std::pow(y[1], 5);
    out[0] = -s * y[1];
    out[1] = s * y[0];
  };
  p.drift_dir = [](std::span<const double> y, std::span<const double> z, std::span<double> out) {
    const double s = 1.0 + y[0] * y[0] * y[0] + std::pow(y[1], 5);
    const double ds = 3.0 * y[0] * y[0] * z[0] + 5.0 * std::pow(y[1], 4) * z[1];
    out[0] = -s * z[1] - ds * y[1];
    out[1] = s * z[0] + ds * y[0];
  };
  p.invariant_matrix = identity_matrix(2);
  return p;
}

OscillatorProblem make_custom(int dim, RotationFn rotation, DriftFn drift, DriftDirFn drift_dir,
                              std::optional<RealVec> invariant_matrix, double epsilon) {
  if (dim < 1) throw std::invalid_argument("make_custom: dim must be >= 1");
  if (epsilon <= 0.0) throw std::invalid_argument("make_custom: epsilon must be positive");
  if (!rotation || !drift) throw std::invalid_argument("make_custom: rotation and drift are required");
  if (invariant_matrix && static_cast<int>(invariant_matrix->size()) != dim * dim)
    throw std::invalid_argument("make_custom: invariant matrix must be dim x dim");

  // probe exp(A*0) = Id and exp(A*1) = Id on a handful of random vectors
  Rng probe_rng(0xC0FFEEULL, 17);
  RealVec y(dim), out(dim);
  for (int probe = 0; probe < 8; ++probe) {
    double norm = 0.0;
    for (int i = 0; i < dim; ++i) {
      y[i] = probe_rng.gaussian();
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    for (double theta : {0.0, 1.0}) {
      rotation(theta, y, out);
      double err = 0.0;
      for (int i = 0; i < dim; ++i) err = std::max(err, std::abs(out[i] - y[i]));
      if (err > 1e-9 * (1.0 + norm)) {
        throw model_violation_error("make_custom: rotation(theta=" + std::to_string(theta) +
                                    ") is not the identity on probe vector #" + std::to_string(probe) +
                                    " (max deviation " + std::to_string(err) + "); exp(A) = Id is required");
      }
    }
  }

  OscillatorProblem p;
  p.dim = dim;
  p.epsilon = epsilon;
  p.rotation = std::move(rotation);
  p.drift = std::move(drift);
  if (drift_dir) {
    p.drift_dir = std::move(drift_dir);
  } else {
    // central difference, step sqrt(machine eps) * (1 + |y|)
    DriftFn f = p.drift;
    p.drift_dir = [f, dim](std::span<const double> yv, std::span<const double> zv, std::span<double> outv) {
      double ynorm = 0.0, znorm = 0.0;
      for (int i = 0; i < dim; ++i) {
        ynorm += yv[i] * yv[i];
        znorm += zv[i] * zv[i];
      }
      ynorm = std::sqrt(ynorm);
      znorm = std::sqrt(znorm);
      if (znorm == 0.0) {
        for (int i = 0; i < dim; ++i) outv[i] = 0.0;
        return;
      }
      const double delta = std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + ynorm) / znorm;
      RealVec yp(dim), ym(dim), fp(dim), fm(dim);
      for (int i = 0; i < dim; ++i) {
        yp[i] = yv[i] + delta * zv[i];
        ym[i] = yv[i] - delta * zv[i];
      }
      f(yp, fp);
      f(ym, fm);
      for (int i = 0; i < dim; ++i) outv[i] = (fp[i] - fm[i]) / (2.0 * delta);
    };
  }
  if (invariant_matrix) p.invariant_matrix = std::move(*invariant_matrix);
  return p;
}

}  // namespace multirev
