#include "multirev/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace multirev {

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

double MomentTables::mean_alpha(int k) const { return k == 0 ? 1.0 : 0.0; }

double MomentTables::alpha_pair(int p, int k) const {
  const double N = revolutions;
  if (p == 0 && k == 0) return 1.0 + 2.0 / (3.0 * N);
  if (p + k == 0 && p != 0) return 1.0 / (kPi2 * p * p * N);
  return 0.0;
}

double MomentTables::mean_beta(int p, int k) const {
  const double N = revolutions;
  if (p == 0 && k == 0) return 0.5 + 1.0 / (3.0 * N);
  if (p == 0) return 1.0 / (2.0 * kPi2 * k * k * N);
  if (k == 0) return -1.0 / (2.0 * kPi2 * p * p * N);
  if (p + k == 0) return 1.0 / (2.0 * kPi2 * p * p * N);
  return 0.0;
}

double MomentTables::mean_beta_tilde(int p, int k) const {
  const double N = revolutions;
  if (p == 0 && k != 0) return 1.0 / (2.0 * kPi2 * k * k * N);
  if (p != 0 && k == 0) return -1.0 / (2.0 * kPi2 * p * p * N);
  return 0.0;
}

MomentTables moment_tables(int revolutions) {
  if (revolutions < 1) throw std::invalid_argument("moment_tables: revolutions must be >= 1");
  return MomentTables{revolutions};
}

Matrix build_covariance(int revolutions, int modes) {
  if (revolutions < 1) throw std::invalid_argument("build_covariance: revolutions must be >= 1");
  if (modes < 2 || modes % 2 != 0) throw std::invalid_argument("build_covariance: modes must be even >= 2");
  const MomentTables t = moment_tables(revolutions);
  const int half = modes / 2;
  Matrix c(static_cast<std::size_t>(2 * half), static_cast<std::size_t>(2 * half));
  auto M = [&](int p, int k) { return t.alpha_pair(p, k); };
  for (int p = 0; p < half; ++p) {
    for (int k = 0; k < half; ++k) {
      // Re a = (a + conj a)/2, Im a = (a - conj a)/(2i), conj(alpha_k) = alpha_{-k}
      const double re_re = 0.25 * (M(p, k) + M(p, -k) + M(-p, k) + M(-p, -k)) - t.mean_alpha(p) * t.mean_alpha(k);
      const double im_im = -0.25 * (M(p, k) - M(p, -k) - M(-p, k) + M(-p, -k));
      const double re_im = 0.25 * (M(p, k) - M(p, -k) + M(-p, k) - M(-p, -k));
      const double im_re = 0.25 * (M(p, k) + M(p, -k) - M(-p, k) - M(-p, -k));
      c(2 * p, 2 * k) = re_re;
      c(2 * p + 1, 2 * k + 1) = im_im;
      c(2 * p, 2 * k + 1) = re_im;
      c(2 * p + 1, 2 * k) = im_re;
    }
  }
  return c;
}

Matrix sqrt_covariance(const Matrix& c) {
  if (c.rows != c.cols) throw std::invalid_argument("sqrt_covariance: matrix not square");
  for (std::size_t i = 0; i < c.rows; ++i)
    for (std::size_t j = i + 1; j < c.cols; ++j)
      if (std::abs(c(i, j) - c(j, i)) > 1e-12)
        throw std::invalid_argument("sqrt_covariance: matrix not symmetric");

  std::vector<double> w;
  Matrix v;
  eig_symmetric(c, w, v);
  for (double& lambda : w) {
    if (lambda < -1e-9) {
      throw not_a_covariance_error("sqrt_covariance: eigenvalue " + std::to_string(lambda) +
                                   " below -1e-9; input is not a covariance matrix");
    }
    lambda = std::max(lambda, 0.0);
  }
  // symmetric root V sqrt(D) V^T
  Matrix root(c.rows, c.cols);
  for (std::size_t i = 0; i < c.rows; ++i)
    for (std::size_t j = 0; j < c.cols; ++j) {
      double acc = 0.0;
      for (std::size_t m = 0; m < c.rows; ++m) acc += v(i, m) * std::sqrt(w[m]) * v(j, m);
      root(i, j) = acc;
    }
  return root;
}

}  // namespace multirev
