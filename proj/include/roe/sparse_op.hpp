#pragma once

#include <complex>
#include <span>
#include <vector>

#include "roe/kernels.hpp"
#include "roe/point_set.hpp"

namespace roe {

struct OpEntry {
  std::size_t row, col;
  std::complex<double> value;

  friend bool operator==(const OpEntry& a, const OpEntry& b) {
    return a.row == b.row && a.col == b.col && a.value == b.value;
  }
};

/// A sparse complex operator on l^2 of the point set; absent entries are 0
/// and stored entries are nonzero. Entries live in row-major order with CSR
/// row offsets alongside.
class SparseOp {
 public:
  explicit SparseOp(PointSet points) : SparseOp(std::move(points), {}) {}
  /// Duplicate (row, col) triplets are summed; zero results are dropped.
  SparseOp(PointSet points, std::vector<OpEntry> entries);

  static SparseOp identity(PointSet points);

  const PointSet& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<OpEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  std::complex<double> at(std::size_t row, std::size_t col) const;
  std::span<const OpEntry> row(std::size_t r) const {
    return std::span<const OpEntry>(entries_).subspan(row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]);
  }
  std::span<const std::size_t> row_ptr() const { return row_ptr_; }

  SparseOp adjoint() const;
  SparseOp scaled(std::complex<double> factor) const;
  std::vector<std::complex<double>> to_dense() const;

  /// y = T x in point-index coordinates.
  void apply(std::span<const std::complex<double>> x, std::span<std::complex<double>> y,
             kernels::Exec exec = kernels::default_exec()) const;

  friend SparseOp operator+(const SparseOp& a, const SparseOp& b);
  friend SparseOp operator-(const SparseOp& a, const SparseOp& b);
  friend SparseOp operator*(const SparseOp& a, const SparseOp& b);
  friend bool operator==(const SparseOp& a, const SparseOp& b) {
    return a.points_ == b.points_ && a.entries_ == b.entries_;
  }

 private:
  void rebuild_rows();

  PointSet points_;
  std::vector<OpEntry> entries_;   // row-major, nonzero
  std::vector<std::size_t> row_ptr_;
};

/// Largest entrywise difference |a - b|.
double max_entry_distance(const SparseOp& a, const SparseOp& b);

}  // namespace roe
