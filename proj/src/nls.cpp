#include "multirev/nls.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "multirev/fft.hpp"

namespace multirev {

namespace {

constexpr double kPi = std::numbers::pi;
using Cplx = std::complex<double>;

// centered mode l <-> DFT bin (l mod K). Collocation grid x_j = -pi + 2 pi j/K
// adds the phase e^{-i l pi} = (-1)^l relative to the plain DFT.
void grid_to_modes(std::span<const Cplx> grid, std::span<Cplx> modes_out, int K) {
  thread_local std::vector<Cplx> buf;
  buf.assign(grid.begin(), grid.end());
  dft_forward(buf);
  for (int l = -K / 2; l < K / 2; ++l) {
    const int bin = (l % K + K) % K;
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    modes_out[static_cast<std::size_t>(l + K / 2)] = sign * buf[bin] / static_cast<double>(K);
  }
}

void modes_to_grid(std::span<const Cplx> modes, std::span<Cplx> grid_out, int K) {
  thread_local std::vector<Cplx> buf;
  buf.assign(static_cast<std::size_t>(K), Cplx(0.0, 0.0));
  for (int l = -K / 2; l < K / 2; ++l) {
    const int bin = (l % K + K) % K;
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    buf[bin] = sign * modes[static_cast<std::size_t>(l + K / 2)] * static_cast<double>(K);
  }
  dft_inverse(buf);
  for (int j = 0; j < K; ++j) grid_out[j] = buf[j];
}

}  // namespace

double nls_initial_condition(double x) { return std::exp(-3.0 * x * x * x * x + x * x); }

OscillatorProblem build_nls_problem(int modes_x, int sigma, double epsilon, bool dealias) {
  if (modes_x < 4 || !is_power_of_two(static_cast<std::size_t>(modes_x)))
    throw std::invalid_argument("build_nls_problem: modes_x must be a power of two >= 4");
  if (sigma < 1) throw std::invalid_argument("build_nls_problem: sigma must be a positive integer");
  if (epsilon <= 0.0) throw std::invalid_argument("build_nls_problem: epsilon must be positive");

  const int K = modes_x;
  OscillatorProblem p;
  p.dim = 2 * K;
  p.epsilon = epsilon;

  p.rotation = [K](double theta, std::span<const double> y, std::span<double> out) {
    for (int i = 0; i < K; ++i) {
      const double l = static_cast<double>(i - K / 2);
      // phase angle -2 pi l^2 theta; fmod keeps theta = 1 an exact identity
      const double frac = std::fmod(l * l * theta, 1.0);
      const double ang = -2.0 * kPi * frac;
      const double c = std::cos(ang), s = std::sin(ang);
      const double re = y[2 * i], im = y[2 * i + 1];
      out[2 * i] = c * re - s * im;
      out[2 * i + 1] = s * re + c * im;
    }
  };

  auto pointwise = [K, sigma, dealias](std::span<const double> y, std::span<double> out,
                                       std::span<const double> z, bool directional) {
    thread_local std::vector<Cplx> modes, grid, gridz, result;
    modes.assign(static_cast<std::size_t>(K), Cplx());
    grid.assign(static_cast<std::size_t>(K), Cplx());
    result.assign(static_cast<std::size_t>(K), Cplx());
    for (int i = 0; i < K; ++i) modes[i] = Cplx(y[2 * i], y[2 * i + 1]);
    modes_to_grid(modes, grid, K);
    if (!directional) {
      for (int j = 0; j < K; ++j) {
        const double a2 = std::norm(grid[j]);
        result[j] = Cplx(0.0, 1.0) * std::pow(a2, sigma) * grid[j];
      }
    } else {
      gridz.assign(static_cast<std::size_t>(K), Cplx());
      thread_local std::vector<Cplx> modesz;
      modesz.assign(static_cast<std::size_t>(K), Cplx());
      for (int i = 0; i < K; ++i) modesz[i] = Cplx(z[2 * i], z[2 * i + 1]);
      modes_to_grid(modesz, gridz, K);
      for (int j = 0; j < K; ++j) {
        const Cplx u = grid[j], v = gridz[j];
        const double a2 = std::norm(u);
        const double a2sm1 = (sigma == 1) ? 1.0 : std::pow(a2, sigma - 1);
        result[j] = Cplx(0.0, 1.0) *
                    (a2sm1 * a2 * v + static_cast<double>(sigma) * a2sm1 * (std::conj(u) * v + u * std::conj(v)) * u);
      }
    }
    grid_to_modes(result, modes, K);
    if (dealias) {
      for (int l = -K / 2; l < K / 2; ++l)
        if (std::abs(l) >= K / 3) modes[static_cast<std::size_t>(l + K / 2)] = Cplx(0.0, 0.0);
    }
    for (int i = 0; i < K; ++i) {
      out[2 * i] = modes[i].real();
      out[2 * i + 1] = modes[i].imag();
    }
  };

  p.drift = [pointwise](std::span<const double> y, std::span<double> out) {
    pointwise(y, out, {}, false);
  };
  p.drift_dir = [pointwise](std::span<const double> y, std::span<const double> z, std::span<double> out) {
    pointwise(y, out, z, true);
  };

  // Q(y) = |y|^2/2 is proportional to the discrete L^2 norm squared
  p.invariant_matrix.assign(static_cast<std::size_t>(p.dim) * p.dim, 0.0);
  for (int i = 0; i < p.dim; ++i) p.invariant_matrix[static_cast<std::size_t>(i) * p.dim + i] = 1.0;
  return p;
}

SpectralField initial_profile(int modes_x) {
  if (modes_x < 4 || !is_power_of_two(static_cast<std::size_t>(modes_x)))
    throw std::invalid_argument("initial_profile: modes_x must be a power of two >= 4");
  std::vector<Cplx> grid(static_cast<std::size_t>(modes_x));
  for (int j = 0; j < modes_x; ++j) {
    const double x = -kPi + 2.0 * kPi * j / modes_x;
    grid[j] = nls_initial_condition(x);
  }
  return grid_to_field(grid, 1, 1.0);
}

double l2_norm(const SpectralField& field) {
  double s = 0.0;
  for (const auto& m : field.modes) s += std::norm(m);
  return std::sqrt(2.0 * kPi * s);
}

double h1_norm(const SpectralField& field) {
  double s = 0.0;
  for (int l = -field.modes_x / 2; l < field.modes_x / 2; ++l) {
    s += (1.0 + static_cast<double>(l) * l) * std::norm(field.mode(l));
  }
  return std::sqrt(2.0 * kPi * s);
}

RealVec pack_state(const SpectralField& field) {
  RealVec state(2 * static_cast<std::size_t>(field.modes_x));
  for (int i = 0; i < field.modes_x; ++i) {
    state[2 * i] = field.modes[i].real();
    state[2 * i + 1] = field.modes[i].imag();
  }
  return state;
}

SpectralField unpack_state(std::span<const double> state, int modes_x, int sigma, double epsilon) {
  if (state.size() != 2 * static_cast<std::size_t>(modes_x))
    throw std::invalid_argument("unpack_state: state size does not match modes_x");
  SpectralField f;
  f.modes_x = modes_x;
  f.sigma = sigma;
  f.epsilon = epsilon;
  f.modes.resize(static_cast<std::size_t>(modes_x));
  for (int i = 0; i < modes_x; ++i) f.modes[i] = Cplx(state[2 * i], state[2 * i + 1]);
  return f;
}

std::vector<Cplx> field_to_grid(const SpectralField& field) {
  std::vector<Cplx> grid(static_cast<std::size_t>(field.modes_x));
  modes_to_grid(field.modes, grid, field.modes_x);
  return grid;
}

SpectralField grid_to_field(std::span<const Cplx> grid, int sigma, double epsilon) {
  const int K = static_cast<int>(grid.size());
  SpectralField f;
  f.modes_x = K;
  f.sigma = sigma;
  f.epsilon = epsilon;
  f.modes.resize(static_cast<std::size_t>(K));
  grid_to_modes(grid, f.modes, K);
  return f;
}

std::vector<FieldSample> sample_field(const SpectralField& field, int points) {
  if (points < 1) throw std::invalid_argument("sample_field: points must be >= 1");
  std::vector<FieldSample> out(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) {
    const double x = -kPi + 2.0 * kPi * j / points;
    Cplx u(0.0, 0.0);
    for (int l = -field.modes_x / 2; l < field.modes_x / 2; ++l) {
      u += field.mode(l) * std::polar(1.0, l * x);
    }
    out[j] = {x, u};
  }
  return out;
}

}  // namespace multirev
