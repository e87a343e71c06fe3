// Law of the first exit time T1 of standard Brownian motion from [-1, 1]:
// density and distribution from two complementary series, moments from the
// closed combinatorial formula, the Laplace transform E[exp(z T1)] =
// 1/cos(sqrt(2 z)), and samplers (inverse CDF, or a fine simulated path).
#pragma once

#include <complex>

#include "multirev/rng.hpp"

namespace multirev {

// E[T1^k]; range_error once the enumeration of compositions becomes infeasible
double t1_moment(int k);

// E[exp(z T1)] for Re(z) < pi^2/8; domain_error otherwise
std::complex<double> t1_mgf(std::complex<double> z);

double t1_density(double t);
double t1_cdf(double t);
double t1_quantile(double u);  // u in (0, 1)

enum class ExitTimeMethod { inverse_cdf, fine_path };

class ExitTimeSampler {
 public:
  explicit ExitTimeSampler(ExitTimeMethod method = ExitTimeMethod::inverse_cdf, double fine_dt = 1e-3);

  double sample(Rng& rng) const;          // one draw of T1
  double sample_sum(Rng& rng, int n) const;  // T_N = sum of n independent T1 draws

  ExitTimeMethod method() const { return method_; }

 private:
  ExitTimeMethod method_;
  double fine_dt_;
};

inline double sample_t1(Rng& rng) { return ExitTimeSampler().sample(rng); }
inline double sample_tn(Rng& rng, int n) { return ExitTimeSampler().sample_sum(rng, n); }

}  // namespace multirev
