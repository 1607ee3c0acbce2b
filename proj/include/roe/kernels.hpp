#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops shared by the metric and operator layers. Every
// kernel comes in a serial reference version and an OpenMP version; the two
// must produce bitwise-identical results (see tests/test_kernels.cpp and the
// bench target). Dispatch defaults to the OpenMP version when compiled in.
namespace roe::kernels {

enum class Exec { serial, parallel };

Exec default_exec() noexcept;
void set_default_exec(Exec e) noexcept;
bool openmp_compiled() noexcept;

/// In-place min-plus closure (Floyd--Warshall) of a symmetric n x n
/// extended-distance matrix, row-major. inf encodes a missing edge.
/// Row k and column k are stable during pass k, so rows parallelize.
void geodesic_closure(std::vector<double>& dist, std::size_t n,
                      Exec exec = default_exec());
void geodesic_closure_serial(std::vector<double>& dist, std::size_t n);
void geodesic_closure_parallel(std::vector<double>& dist, std::size_t n);

/// All-pairs hop counts of an undirected unit-length graph given as
/// adjacency lists; inf where unreachable. One BFS per source row.
std::vector<double> unit_distances(const std::vector<std::vector<std::size_t>>& adj,
                                   Exec exec = default_exec());
std::vector<double> unit_distances_serial(const std::vector<std::vector<std::size_t>>& adj);
std::vector<double> unit_distances_parallel(const std::vector<std::vector<std::size_t>>& adj);

/// counts[t] = max over rows of |{j : dist[row * n + j] <= thresholds[t]}|.
/// Thresholds must be ascending.
std::vector<std::size_t> max_ball_counts(const std::vector<double>& dist, std::size_t n,
                                         std::span<const double> thresholds,
                                         Exec exec = default_exec());
std::vector<std::size_t> max_ball_counts_serial(const std::vector<double>& dist, std::size_t n,
                                                std::span<const double> thresholds);
std::vector<std::size_t> max_ball_counts_parallel(const std::vector<double>& dist, std::size_t n,
                                                  std::span<const double> thresholds);

struct TriangleWitness {
  std::size_t x, y, via;

  friend bool operator==(const TriangleWitness& a, const TriangleWitness& b) {
    return a.x == b.x && a.y == b.y && a.via == b.via;
  }
};

struct TriangleScan {
  std::vector<TriangleWitness> witnesses;
  bool truncated = false;
};

/// All pairs (x < y) with dist(x,y) > dist(x,via) + dist(via,y), in scan
/// order, up to max_witnesses per call.
TriangleScan triangle_violations(const std::vector<double>& dist, std::size_t n,
                                 std::size_t max_witnesses,
                                 Exec exec = default_exec());
TriangleScan triangle_violations_serial(const std::vector<double>& dist, std::size_t n,
                                        std::size_t max_witnesses);
TriangleScan triangle_violations_parallel(const std::vector<double>& dist, std::size_t n,
                                          std::size_t max_witnesses);

/// Dense symmetric Gram matrix of sparse vectors over indices 0..n-1.
/// Vectors must be sorted by index; empty rows yield zero rows.
using SparseVec = std::vector<std::pair<std::size_t, double>>;
std::vector<double> gram_matrix(const std::vector<SparseVec>& vecs, std::size_t n,
                                Exec exec = default_exec());
std::vector<double> gram_matrix_serial(const std::vector<SparseVec>& vecs, std::size_t n);
std::vector<double> gram_matrix_parallel(const std::vector<SparseVec>& vecs, std::size_t n);

/// y = A x for a CSR matrix. Per-row sums run in a fixed order, so the
/// parallel version matches the serial one bitwise.
void spmv(std::span<const std::size_t> row_ptr, std::span<const std::size_t> cols,
          std::span<const std::complex<double>> vals,
          std::span<const std::complex<double>> x, std::span<std::complex<double>> y,
          Exec exec = default_exec());
void spmv_serial(std::span<const std::size_t> row_ptr, std::span<const std::size_t> cols,
                 std::span<const std::complex<double>> vals,
                 std::span<const std::complex<double>> x, std::span<std::complex<double>> y);
void spmv_parallel(std::span<const std::size_t> row_ptr, std::span<const std::size_t> cols,
                   std::span<const std::complex<double>> vals,
                   std::span<const std::complex<double>> x, std::span<std::complex<double>> y);

}  // namespace roe::kernels
