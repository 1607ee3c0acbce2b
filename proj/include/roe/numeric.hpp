#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace roe::numeric {

/// Eigenvalues of a dense real symmetric matrix (row-major), ascending.
std::vector<double> symmetric_eigenvalues(const std::vector<double>& m, std::size_t n);

double min_symmetric_eigenvalue(const std::vector<double>& m, std::size_t n);

/// Largest singular value of a dense complex matrix (row-major). Reference
/// quality; used as the oracle side of norm checks.
double dense_operator_norm(const std::vector<std::complex<double>>& m, std::size_t rows,
                           std::size_t cols);

}  // namespace roe::numeric
