#include "multirev/brownian_path.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace multirev {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(i x) for the small phase increments 2*pi*k*dW of a fine path; falls back
// to the library functions outside the polynomial's range.
inline std::complex<double> unit_phase(double x) {
  if (std::abs(x) < 0.5) {
    const double x2 = x * x;
    const double c = 1.0 - x2 * (0.5 - x2 * (1.0 / 24.0 - x2 * (1.0 / 720.0 - x2 / 40320.0)));
    const double s = x * (1.0 - x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 / 362880.0))));
    return {c, s};
  }
  return {std::cos(x), std::sin(x)};
}

// One dt-increment of the driving path; shared by the streaming oracle and the
// stored-path generator so identical streams give identical paths.
struct PathStepper {
  Rng& rng;
  double dt;
  double sqrt_dt;
  double t = 0.0;
  double w = 0.0;
  double base = 0.0;  // W at the last revolution, always an integer
  int crossings = 0;

  PathStepper(Rng& r, double dt_) : rng(r), dt(dt_), sqrt_dt(std::sqrt(dt_)) {}

  // Advance one segment. Returns (w_start, w_end, length, crossed).
  void advance(double& w0, double& w1, double& len, bool& crossed) {
    w0 = w;
    const double dw = sqrt_dt * rng.gaussian();
    double wn = w + dw;
    len = dt;
    crossed = false;
    if (std::abs(wn - base) >= 1.0) {
      const double target = base + ((wn > base) ? 1.0 : -1.0);
      len = dt * (target - w) / dw;
      wn = target;
      base = target;
      crossed = true;
      ++crossings;
    }
    w = wn;
    t += len;
    w1 = wn;
  }
};

}  // namespace

std::optional<BrownianPath> simulate_revolution_path(Rng& rng, int revolutions, double dt,
                                                     double time_cap_factor) {
  if (revolutions < 1) throw std::invalid_argument("simulate_revolution_path: revolutions must be >= 1");
  if (dt <= 0.0) throw std::invalid_argument("simulate_revolution_path: dt must be positive");
  const double cap = time_cap_factor * revolutions;
  BrownianPath path;
  path.time.push_back(0.0);
  path.value.push_back(0.0);
  PathStepper stepper(rng, dt);
  while (stepper.crossings < revolutions) {
    if (stepper.t > cap) return std::nullopt;
    double w0, w1, len;
    bool crossed;
    stepper.advance(w0, w1, len, crossed);
    path.time.push_back(stepper.t);
    path.value.push_back(w1);
    if (crossed) path.crossing_node.push_back(path.time.size() - 1);
  }
  return path;
}

namespace {

struct PairSpec {
  int p, k;
  std::size_t flat;  // destination index in the beta table
};

// Trapezoidal accumulation of alpha and the requested beta pairs along a path
// produced segment-by-segment. alpha_k is the final inner integral I_k(T_N)/N.
class TrapezoidAccumulator {
 public:
  TrapezoidAccumulator(int revolutions, int modes, std::span<const std::pair<int, int>> pairs)
      : revolutions_(revolutions), modes_(modes), half_(modes / 2) {
    phase_.assign(half_ + 1, {1.0, 0.0});
    inner_.assign(half_ + 1, {0.0, 0.0});
    if (pairs.empty()) {
      // full table; conjugate symmetry beta_{-p,-k} = conj(beta_{p,k}) fills the rest
      for (int p = -half_; p < half_; ++p)
        for (int k = -half_; k < half_; ++k)
          if (p > 0 || (p == 0 && k >= 0)) add_pair(p, k);
      complete_ = true;
    } else {
      for (auto [p, k] : pairs) add_pair(p, k);
      complete_ = false;
    }
    sums_.assign(specs_.size(), {0.0, 0.0});
    prev_.assign(specs_.size(), {0.0, 0.0});
    for (std::size_t j = 0; j < specs_.size(); ++j) prev_[j] = product(specs_[j], 0.0);
  }

  void add_segment(double w0, double w1, double len) {
    (void)w0;
    const double dw = w1 - w0;
    const std::complex<double> z1 = unit_phase(kTwoPi * dw);
    // powers of the phase increment, then advance e^{2 pi i k w}
    std::complex<double> zk = z1;
    t_ += len;
    for (int k = 1; k <= half_; ++k) {
      const std::complex<double> pnew = phase_[k] * zk;
      inner_[k] += 0.5 * len * (phase_[k] + pnew);
      phase_[k] = pnew;
      if (k < half_) zk *= z1;
    }
    for (std::size_t j = 0; j < specs_.size(); ++j) {
      const std::complex<double> f = product(specs_[j], t_);
      sums_[j] += 0.5 * len * (prev_[j] + f);
      prev_[j] = f;
    }
  }

  OracleDraw finalize(double exit_time) const {
    OracleDraw draw;
    draw.revolutions = revolutions_;
    draw.modes = modes_;
    draw.exit_time = exit_time;
    draw.beta_complete = complete_;
    draw.alpha.assign(static_cast<std::size_t>(modes_), {0.0, 0.0});
    const double invN = 1.0 / revolutions_;
    for (int k = 0; k < half_; ++k) {
      const std::complex<double> a = (k == 0) ? std::complex<double>(t_, 0.0) * invN : inner_[k] * invN;
      draw.alpha[static_cast<std::size_t>(half_ + k)] = a;
      if (k > 0) draw.alpha[static_cast<std::size_t>(half_ - k)] = std::conj(a);
    }
    draw.alpha[0] = std::conj(inner_[half_] * invN);  // k = -K_t/2
    draw.beta.assign(static_cast<std::size_t>(modes_) * modes_, {0.0, 0.0});
    const double invN2 = invN * invN;
    for (std::size_t j = 0; j < specs_.size(); ++j) {
      const auto& s = specs_[j];
      draw.beta[s.flat] = sums_[j] * invN2;
      if (complete_) {
        // mirror pair
        const int mp = -s.p, mk = -s.k;
        if (mp >= -half_ && mp < half_ && mk >= -half_ && mk < half_) {
          draw.beta[static_cast<std::size_t>(mp + half_) * modes_ + (mk + half_)] = std::conj(sums_[j]) * invN2;
        }
      }
    }
    return draw;
  }

 private:
  void add_pair(int p, int k) {
    if (p < -half_ || p >= half_ || k < -half_ || k >= half_)
      throw std::invalid_argument("oracle_alpha_beta: beta pair outside the mode range");
    specs_.push_back({p, k, static_cast<std::size_t>(p + half_) * modes_ + (k + half_)});
  }

  std::complex<double> product(const PairSpec& s, double time_now) const {
    const std::complex<double> pp =
        (s.p == 0) ? std::complex<double>(1.0, 0.0)
                   : (s.p > 0 ? phase_[s.p] : std::conj(phase_[-s.p]));
    const std::complex<double> ik =
        (s.k == 0) ? std::complex<double>(time_now, 0.0)
                   : (s.k > 0 ? inner_[s.k] : std::conj(inner_[-s.k]));
    return pp * ik;
  }

  int revolutions_, modes_, half_;
  bool complete_ = true;
  double t_ = 0.0;
  std::vector<std::complex<double>> phase_;  // e^{2 pi i k w}, k = 0..half
  std::vector<std::complex<double>> inner_;  // trapezoid of e^{2 pi i k W}, k = 0..half
  std::vector<PairSpec> specs_;
  std::vector<std::complex<double>> sums_;
  std::vector<std::complex<double>> prev_;
};

}  // namespace

OracleDraw oracle_alpha_beta(Rng& rng, int revolutions, int modes, double dt,
                             std::span<const std::pair<int, int>> beta_pairs) {
  if (revolutions < 1) throw std::invalid_argument("oracle_alpha_beta: revolutions must be >= 1");
  if (modes < 2 || modes % 2 != 0) throw std::invalid_argument("oracle_alpha_beta: modes must be even >= 2");
  if (dt <= 0.0) throw std::invalid_argument("oracle_alpha_beta: dt must be positive");

  int resamples = 0;
  while (true) {
    TrapezoidAccumulator acc(revolutions, modes, beta_pairs);
    PathStepper stepper(rng, dt);
    const double cap = 100.0 * revolutions;
    bool capped = false;
    while (stepper.crossings < revolutions) {
      if (stepper.t > cap) {
        capped = true;
        break;
      }
      double w0, w1, len;
      bool crossed;
      stepper.advance(w0, w1, len, crossed);
      acc.add_segment(w0, w1, len);
    }
    if (capped) {
      ++resamples;
      continue;
    }
    OracleDraw draw = acc.finalize(stepper.t);
    draw.resamples = resamples;
    return draw;
  }
}

std::complex<double> phi1(std::complex<double> z) {
  if (std::abs(z) < 0.5) {
    // sum z^n/(n+1)!
    std::complex<double> term(1.0, 0.0), sum(1.0, 0.0);
    for (int n = 1; n < 24; ++n) {
      term *= z / static_cast<double>(n + 1);
      sum += term;
      if (std::abs(term) < 1e-20) break;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

std::complex<double> phi1_derivative(int order, std::complex<double> z) {
  if (order == 0) return phi1(z);
  if (order < 0 || order > 3) throw std::invalid_argument("phi1_derivative: order must be 0..3");
  if (std::abs(z) < 0.5) {
    // d^m/dz^m sum z^n/(n+1)! = sum_{n>=m} n!/(n-m)! z^{n-m}/(n+1)!
    std::complex<double> sum(0.0, 0.0);
    std::complex<double> zp(1.0, 0.0);
    for (int n = order; n < 26; ++n) {
      double coeff = 1.0;
      for (int j = 0; j < order; ++j) coeff *= static_cast<double>(n - j);
      double fact = 1.0;
      for (int j = 2; j <= n + 1; ++j) fact *= j;
      sum += coeff / fact * zp;
      zp *= z;
      if (std::abs(zp) * coeff / fact < 1e-20 && n > order + 4) break;
    }
    return sum;
  }
  const std::complex<double> ez = std::exp(z);
  switch (order) {
    case 1:
      return (ez * (z - 1.0) + 1.0) / (z * z);
    case 2:
      return (ez * (z * z - 2.0 * z + 2.0) - 2.0) / (z * z * z);
    default:
      return (ez * (z * z * z - 3.0 * z * z + 6.0 * z - 6.0) + 6.0) / (z * z * z * z);
  }
}

namespace {

// [phi1(a+b) - phi1(a)] / b, stable for small b
std::complex<double> phi1_difference_quotient(std::complex<double> a, std::complex<double> b) {
  if (std::abs(b) >= 1e-4) return (phi1(a + b) - phi1(a)) / b;
  return phi1_derivative(1, a) + 0.5 * b * phi1_derivative(2, a) +
         (b * b / 6.0) * phi1_derivative(3, a);
}

}  // namespace

OracleDraw path_alpha_beta(const BrownianPath& path, int modes) {
  if (modes < 2 || modes % 2 != 0) throw std::invalid_argument("path_alpha_beta: modes must be even >= 2");
  const int half = modes / 2;
  const int qmax = modes;  // phases up to |p + k| <= modes are needed
  const std::size_t nseg = path.time.size() - 1;

  std::vector<std::complex<double>> inner(half + 1, {0.0, 0.0});  // I_k at segment start
  std::vector<std::complex<double>> beta(static_cast<std::size_t>(modes) * modes, {0.0, 0.0});
  std::vector<std::complex<double>> base_phase(qmax + 1), seg_phi1(qmax + 1);

  double t0 = 0.0;
  for (std::size_t s = 0; s < nseg; ++s) {
    const double w0 = path.value[s];
    const double w1 = path.value[s + 1];
    const double len = path.time[s + 1] - path.time[s];
    if (len <= 0.0) continue;
    const double dw = w1 - w0;
    base_phase[0] = {1.0, 0.0};
    seg_phi1[0] = {1.0, 0.0};
    const std::complex<double> b1 = unit_phase(kTwoPi * w0);
    for (int q = 1; q <= qmax; ++q) {
      base_phase[q] = base_phase[q - 1] * b1;
      seg_phi1[q] = phi1(std::complex<double>(0.0, kTwoPi * q * dw));
    }
    auto base_at = [&](int q) { return (q >= 0) ? base_phase[q] : std::conj(base_phase[-q]); };
    auto E = [&](int q) -> std::complex<double> {
      // int over the segment of e^{2 pi i q w(s)} ds = len e^{2 pi i q w0} phi1(2 pi i q dw)
      if (q == 0) return {len, 0.0};
      const std::complex<double> v = (q > 0) ? seg_phi1[q] : std::conj(seg_phi1[-q]);
      return len * base_at(q) * v;
    };
    auto inner_at = [&](int k) -> std::complex<double> {
      if (k == 0) return {t0, 0.0};
      return (k > 0) ? inner[k] : std::conj(inner[-k]);
    };

    for (int p = -half; p < half; ++p) {
      const std::complex<double> Ep = E(p);
      const std::complex<double> a(0.0, kTwoPi * p * dw);
      for (int k = -half; k < half; ++k) {
        // int over the segment of e^{2 pi i p w(s)} (I_k(t0) + J_k(s)) ds,
        // J_k the in-segment inner integral, which collapses to the phi1
        // difference quotient: len^2 e^{2 pi i (p+k) w0} [phi1(a+b)-phi1(a)]/b
        std::complex<double> contrib = inner_at(k) * Ep;
        if (k == 0) {
          contrib += base_at(p) * (len * len) * phi1_derivative(1, a);
        } else {
          const std::complex<double> b(0.0, kTwoPi * k * dw);
          contrib += base_at(p + k) * (len * len) * phi1_difference_quotient(a, b);
        }
        beta[static_cast<std::size_t>(p + half) * modes + (k + half)] += contrib;
      }
    }
    for (int k = 1; k <= half; ++k) inner[k] += E(k);
    t0 += len;
  }

  OracleDraw draw;
  draw.revolutions = path.revolutions();
  draw.modes = modes;
  draw.exit_time = path.exit_time();
  draw.beta_complete = true;
  const double invN = 1.0 / draw.revolutions;
  draw.alpha.assign(static_cast<std::size_t>(modes), {0.0, 0.0});
  for (int k = 0; k < half; ++k) {
    const std::complex<double> a = (k == 0) ? std::complex<double>(t0, 0.0) * invN : inner[k] * invN;
    draw.alpha[static_cast<std::size_t>(half + k)] = a;
    if (k > 0) draw.alpha[static_cast<std::size_t>(half - k)] = std::conj(a);
  }
  draw.alpha[0] = std::conj(inner[half] * invN);
  draw.beta = std::move(beta);
  for (auto& b : draw.beta) b *= invN * invN;
  return draw;
}

}  // namespace multirev
