#include "multirev/exit_time.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace multirev {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesSplit = 0.45;  // reflection series below, spectral above

// F(t) = 2 sum_{n>=0} (-1)^n erfc((2n+1)/sqrt(2t)), fast for small t
double cdf_reflection(double t) {
  double s = 0.0;
  const double inv = 1.0 / std::sqrt(2.0 * t);
  for (int n = 0; n < 64; ++n) {
    const double term = std::erfc((2 * n + 1) * inv);
    s += (n % 2 == 0) ? term : -term;
    if (term < 1e-18) break;
  }
  return 2.0 * s;
}

// F(t) = 1 - sum_{n>=0} (-1)^n (4/((2n+1) pi)) exp(-(2n+1)^2 pi^2 t / 8)
double cdf_spectral(double t) {
  double s = 0.0;
  for (int n = 0; n < 256; ++n) {
    const double a = 2 * n + 1;
    const double term = 4.0 / (a * kPi) * std::exp(-a * a * kPi * kPi * t / 8.0);
    s += (n % 2 == 0) ? term : -term;
    if (term < 1e-18) break;
  }
  return 1.0 - s;
}

double pdf_reflection(double t) {
  double s = 0.0;
  for (int n = 0; n < 64; ++n) {
    const double a = 2 * n + 1;
    const double term = a * std::exp(-a * a / (2.0 * t));
    s += (n % 2 == 0) ? term : -term;
    if (term < 1e-300) break;
  }
  return 2.0 / std::sqrt(2.0 * kPi * t * t * t) * s;
}

double pdf_spectral(double t) {
  double s = 0.0;
  for (int n = 0; n < 256; ++n) {
    const double a = 2 * n + 1;
    const double term = a * kPi / 2.0 * std::exp(-a * a * kPi * kPi * t / 8.0);
    s += (n % 2 == 0) ? term : -term;
    if (term < 1e-300) break;
  }
  return s;
}

// quantile bracket table over a graded t-grid, built once
struct QuantileTable {
  std::vector<double> t;
  std::vector<double> f;
  QuantileTable() {
    double v = 0.02;
    while (v < 1.0) {
      t.push_back(v);
      v *= 1.03;
    }
    while (v < 45.0) {
      t.push_back(v);
      v += 0.05;
    }
    f.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) f[i] = t1_cdf(t[i]);
  }
};

const QuantileTable& quantile_table() {
  static const QuantileTable table;
  return table;
}

void enumerate_compositions(int remaining, int parts, double multinomial_acc, int total, double& sum) {
  // multinomial_acc carries (2k)! / prod (2n_i)! over the chosen parts
  if (remaining == 0) {
    sum += ((parts % 2 == 0) ? 1.0 : -1.0) * multinomial_acc;
    return;
  }
  for (int n = 1; n <= remaining; ++n) {
    // divide by (2n)! progressively via lgamma-free exact doubles: use tgamma is
    // unsafe for big n; parts stay small because t1_moment caps k
    double factor = 1.0;
    for (int j = 1; j <= 2 * n; ++j) factor /= j;
    enumerate_compositions(remaining - n, parts + 1, multinomial_acc * factor, total, sum);
  }
}

}  // namespace

double t1_moment(int k) {
  if (k < 0) throw std::invalid_argument("t1_moment: k must be >= 0");
  if (k == 0) return 1.0;
  if (k > 25) throw std::range_error("t1_moment: k > 25 exceeds the factorial/enumeration range");
  // E[T1^k] = (-2)^k k!/(2k)! sum_{j} (-1)^j sum_{n_1+..+n_j=k} (2k)!/((2n_1)!..(2n_j)!)
  // with the multinomials folded into the recursion as inverse factorials
  double sum = 0.0;
  enumerate_compositions(k, 0, 1.0, k, sum);
  double prefactor = 1.0;  // (-2)^k k! (2k)! / (2k)!  -> (-2)^k k!, since (2k)! cancelled above
  for (int j = 1; j <= k; ++j) prefactor *= -2.0 * j;
  return prefactor * sum;
}

std::complex<double> t1_mgf(std::complex<double> z) {
  if (z.real() >= kPi * kPi / 8.0) {
    throw std::domain_error("t1_mgf: requires Re(z) < pi^2/8");
  }
  if (z == std::complex<double>(0.0, 0.0)) return {1.0, 0.0};
  const std::complex<double> w = std::sqrt(2.0 * z);
  return 1.0 / std::cos(w);
}

double t1_density(double t) {
  if (t <= 0.0) return 0.0;
  return (t < kSeriesSplit) ? pdf_reflection(t) : pdf_spectral(t);
}

double t1_cdf(double t) {
  if (t <= 0.0) return 0.0;
  return (t < kSeriesSplit) ? cdf_reflection(t) : cdf_spectral(t);
}

double t1_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("t1_quantile: u must lie in (0, 1)");
  const auto& table = quantile_table();
  if (u >= table.f.back()) {
    // one-term spectral tail: 1 - F ~ (4/pi) exp(-pi^2 t / 8)
    return -8.0 / (kPi * kPi) * std::log(kPi * (1.0 - u) / 4.0);
  }
  double lo = 1e-8, hi = table.t.front();
  if (u >= table.f.front()) {
    const auto it = std::upper_bound(table.f.begin(), table.f.end(), u);
    const std::size_t idx = static_cast<std::size_t>(it - table.f.begin());
    lo = idx == 0 ? 1e-8 : table.t[idx - 1];
    hi = table.t[idx];
  }
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 80; ++iter) {
    const double F = t1_cdf(t);
    if (F > u) {
      hi = t;
    } else {
      lo = t;
    }
    const double f = t1_density(t);
    double t_next = (f > 1e-300) ? t - (F - u) / f : 0.5 * (lo + hi);
    if (!(t_next > lo && t_next < hi)) t_next = 0.5 * (lo + hi);
    if (std::abs(t_next - t) <= 1e-14 * std::max(1.0, t)) return t_next;
    t = t_next;
  }
  return t;
}

ExitTimeSampler::ExitTimeSampler(ExitTimeMethod method, double fine_dt)
    : method_(method), fine_dt_(fine_dt) {
  if (fine_dt_ <= 0.0) throw std::invalid_argument("ExitTimeSampler: fine_dt must be positive");
  if (method_ == ExitTimeMethod::inverse_cdf) quantile_table();  // build once up front
}

double ExitTimeSampler::sample(Rng& rng) const {
  if (method_ == ExitTimeMethod::inverse_cdf) {
    return t1_quantile(rng.uniform());
  }
  // fine-path reference: simulate increments until |W| >= 1, linear crossing interpolation
  const double sdt = std::sqrt(fine_dt_);
  double w = 0.0, t = 0.0;
  while (true) {
    const double step = sdt * rng.gaussian();
    const double wn = w + step;
    if (std::abs(wn) >= 1.0) {
      const double target = (wn > 0.0) ? 1.0 : -1.0;
      return t + fine_dt_ * (target - w) / step;
    }
    w = wn;
    t += fine_dt_;
  }
}

double ExitTimeSampler::sample_sum(Rng& rng, int n) const {
  if (n < 0) throw std::invalid_argument("ExitTimeSampler: n must be >= 0");
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += sample(rng);
  return s;
}

}  // namespace multirev
