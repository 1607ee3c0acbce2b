#include "roe/sparse_op.hpp"

#include <algorithm>
#include <stdexcept>

namespace roe {

SparseOp::SparseOp(PointSet points, std::vector<OpEntry> entries)
    : points_(std::move(points)), entries_(std::move(entries)) {
  const std::size_t n = points_.size();
  for (const auto& e : entries_) {
    if (e.row >= n || e.col >= n) throw std::invalid_argument("operator entry index out of range");
  }
  // Stable so that duplicate coordinates sum in the order they were given.
  std::stable_sort(entries_.begin(), entries_.end(), [](const OpEntry& a, const OpEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  // Sum duplicates in place, then drop zeros.
  std::size_t w = 0;
  for (std::size_t p = 0; p < entries_.size();) {
    OpEntry acc = entries_[p];
    std::size_t q = p + 1;
    while (q < entries_.size() && entries_[q].row == acc.row && entries_[q].col == acc.col) {
      acc.value += entries_[q].value;
      ++q;
    }
    if (acc.value != std::complex<double>{0.0, 0.0}) entries_[w++] = acc;
    p = q;
  }
  entries_.resize(w);
  rebuild_rows();
}

void SparseOp::rebuild_rows() {
  const std::size_t n = points_.size();
  row_ptr_.assign(n + 1, 0);
  for (const auto& e : entries_) ++row_ptr_[e.row + 1];
  for (std::size_t i = 0; i < n; ++i) row_ptr_[i + 1] += row_ptr_[i];
}

SparseOp SparseOp::identity(PointSet points) {
  std::vector<OpEntry> entries;
  entries.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) entries.push_back({i, i, {1.0, 0.0}});
  return SparseOp(std::move(points), std::move(entries));
}

std::complex<double> SparseOp::at(std::size_t r, std::size_t c) const {
  auto entries = row(r);
  auto it = std::lower_bound(entries.begin(), entries.end(), c,
                             [](const OpEntry& e, std::size_t col) { return e.col < col; });
  if (it != entries.end() && it->col == c) return it->value;
  return {0.0, 0.0};
}

SparseOp SparseOp::adjoint() const {
  std::vector<OpEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({e.col, e.row, std::conj(e.value)});
  return SparseOp(points_, std::move(out));
}

SparseOp SparseOp::scaled(std::complex<double> factor) const {
  std::vector<OpEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({e.row, e.col, factor * e.value});
  return SparseOp(points_, std::move(out));
}

std::vector<std::complex<double>> SparseOp::to_dense() const {
  const std::size_t n = size();
  std::vector<std::complex<double>> dense(n * n, {0.0, 0.0});
  for (const auto& e : entries_) dense[e.row * n + e.col] = e.value;
  return dense;
}

void SparseOp::apply(std::span<const std::complex<double>> x,
                     std::span<std::complex<double>> y, kernels::Exec exec) const {
  const std::size_t n = size();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("apply: vector size mismatch");
  // Flat CSR views; entries_ is already row-major.
  std::vector<std::size_t> cols(entries_.size());
  std::vector<std::complex<double>> vals(entries_.size());
  for (std::size_t p = 0; p < entries_.size(); ++p) {
    cols[p] = entries_[p].col;
    vals[p] = entries_[p].value;
  }
  kernels::spmv(row_ptr_, cols, vals, x, y, exec);
}

SparseOp operator+(const SparseOp& a, const SparseOp& b) {
  if (!(a.points_ == b.points_)) throw std::invalid_argument("operator+: point sets differ");
  std::vector<OpEntry> entries = a.entries_;
  entries.insert(entries.end(), b.entries_.begin(), b.entries_.end());
  return SparseOp(a.points_, std::move(entries));
}

SparseOp operator-(const SparseOp& a, const SparseOp& b) {
  if (!(a.points_ == b.points_)) throw std::invalid_argument("operator-: point sets differ");
  std::vector<OpEntry> entries = a.entries_;
  entries.reserve(entries.size() + b.entries_.size());
  for (const auto& e : b.entries_) entries.push_back({e.row, e.col, -e.value});
  return SparseOp(a.points_, std::move(entries));
}

SparseOp operator*(const SparseOp& a, const SparseOp& b) {
  if (!(a.points_ == b.points_)) throw std::invalid_argument("operator*: point sets differ");
  const std::size_t n = a.size();
  std::vector<OpEntry> out;
  // Row-by-row sparse accumulation with an index-stamped scratch row.
  std::vector<std::complex<double>> acc(n, {0.0, 0.0});
  std::vector<std::size_t> stamp(n, 0), touched;
  std::size_t tick = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++tick;
    touched.clear();
    for (const auto& ea : a.row(i)) {
      for (const auto& eb : b.row(ea.col)) {
        if (stamp[eb.col] != tick) {
          stamp[eb.col] = tick;
          acc[eb.col] = {0.0, 0.0};
          touched.push_back(eb.col);
        }
        acc[eb.col] += ea.value * eb.value;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t c : touched) {
      if (acc[c] != std::complex<double>{0.0, 0.0}) out.push_back({i, c, acc[c]});
    }
  }
  return SparseOp(a.points_, std::move(out));
}

double max_entry_distance(const SparseOp& a, const SparseOp& b) {
  double worst = 0.0;
  for (const auto& e : a.entries()) worst = std::max(worst, std::abs(e.value - b.at(e.row, e.col)));
  for (const auto& e : b.entries()) worst = std::max(worst, std::abs(e.value - a.at(e.row, e.col)));
  return worst;
}

}  // namespace roe
