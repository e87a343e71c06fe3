// Dense row-major matrices plus the symmetric eigendecomposition needed for
// covariance square roots. Sizes here are at most a few hundred.
#pragma once

#include <cstddef>
#include <vector>

namespace multirev {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Jacobi eigendecomposition of a symmetric matrix: a = V diag(w) V^T.
void eig_symmetric(const Matrix& a, std::vector<double>& eigenvalues, Matrix& eigenvectors);

}  // namespace multirev
