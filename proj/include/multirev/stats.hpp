// Order-stable summation and the small statistics toolbox used by the
// experiment runners (standard errors, log-log slopes, Kolmogorov-Smirnov).
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace multirev {

// Neumaier-compensated sum in index order; identical result for any thread count.
double stable_sum(std::span<const double> values);

struct MeanStdErr {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t count = 0;
};

MeanStdErr summarize(std::span<const double> values);

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

double normal_cdf(double x);

// Kolmogorov-Smirnov statistic of samples against the standard normal. Sorts a copy.
double ks_statistic_normal(std::vector<double> samples);

// Asymptotic Kolmogorov distribution tail: P(D_n > d).
double ks_pvalue(double statistic, std::size_t n);

}  // namespace multirev
