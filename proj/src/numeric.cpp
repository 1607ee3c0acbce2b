#include "roe/numeric.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace roe::numeric {

std::vector<double> symmetric_eigenvalues(const std::vector<double>& m, std::size_t n) {
  if (m.size() != n * n) throw std::invalid_argument("matrix shape mismatch");
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

double min_symmetric_eigenvalue(const std::vector<double>& m, std::size_t n) {
  if (n == 0) return 0.0;
  return symmetric_eigenvalues(m, n).front();
}

double dense_operator_norm(const std::vector<std::complex<double>>& m, std::size_t rows,
                           std::size_t cols) {
  if (m.size() != rows * cols) throw std::invalid_argument("matrix shape mismatch");
  if (rows == 0 || cols == 0) return 0.0;
  Eigen::MatrixXcd a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = m[i * cols + j];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace roe::numeric
