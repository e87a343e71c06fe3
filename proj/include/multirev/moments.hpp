// Closed-form first and second moments of the path functionals
//   alpha_k^N  = (1/N)   int_0^{T_N} exp(2 pi i k W) ds
//   beta_pk^N  = (1/N^2) int_0^{T_N} exp(2 pi i p W(s)) int_0^s exp(2 pi i k W(r)) dr ds
//   beta~_pk^N = beta_pk^N - alpha_p^N alpha_k^N / 2,
// the stacked (Re, Im) covariance of (alpha_k)_{0 <= k < K/2}, and its square root.
#pragma once

#include "multirev/linalg.hpp"
#include "multirev/problem.hpp"

namespace multirev {

struct MomentTables {
  int revolutions = 1;  // N

  double mean_alpha(int k) const;            // E[alpha_k]
  double alpha_pair(int p, int k) const;     // E[alpha_p alpha_k]
  double mean_beta(int p, int k) const;      // E[beta_pk]
  double mean_beta_tilde(int p, int k) const;
};

MomentTables moment_tables(int revolutions);

// 2x2 blocks Cov((Re,Im) alpha_p, (Re,Im) alpha_k) for 0 <= p,k < modes/2,
// assembled from the alpha_pair table and alpha_{-k} = conj(alpha_k).
Matrix build_covariance(int revolutions, int modes);

// Symmetric square root with eigenvalue clamp at -1e-12; more negative
// eigenvalues raise not_a_covariance_error.
Matrix sqrt_covariance(const Matrix& c);

}  // namespace multirev
