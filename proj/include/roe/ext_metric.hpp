#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roe/kernels.hpp"
#include "roe/point_set.hpp"
#include "roe/scalar.hpp"

namespace roe {

/// A finite extended metric: distances in (0, inf] off the diagonal, 0 on it,
/// symmetric, triangle inequality with inf absorbing. Stored dense since the
/// closure and profile passes want the full matrix anyway.
class ExtMetric {
 public:
  /// Structural checks only (shape, diagonal, symmetry, positivity, no NaN);
  /// the triangle inequality is the business of validate_metric. Throws
  /// std::invalid_argument on structural defects.
  ExtMetric(PointSet points, std::vector<double> matrix);

  /// All off-diagonal distances equal to `offdiag` (use kInf for a fully
  /// disconnected space).
  static ExtMetric constant(PointSet points, double offdiag);

  std::size_t size() const { return points_.size(); }
  const PointSet& points() const { return points_; }
  double at(std::size_t i, std::size_t j) const { return matrix_[i * size() + j]; }
  double at_ids(std::string_view x, std::string_view y) const {
    return at(points_.index_of(x), points_.index_of(y));
  }
  const std::vector<double>& matrix() const { return matrix_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(matrix_).subspan(i * size(), size());
  }

  friend bool operator==(const ExtMetric& a, const ExtMetric& b) {
    return a.points_ == b.points_ && a.matrix_ == b.matrix_;
  }

 private:
  PointSet points_;
  std::vector<double> matrix_;
};

/// The subspace metric (Y, d|_Y): points outside the subset are dropped.
/// Subset indices must be strictly ascending.
ExtMetric subspace(const ExtMetric& d, std::span<const std::size_t> subset);

struct RawDistance {
  std::string x, y;
  double value = kInf;
};

enum class MetricViolationKind {
  bad_value,                // NaN or negative entry in the table
  self_distance,            // d(x,x) listed nonzero
  symmetry_conflict,        // the same pair listed twice with different values
  nonpositive_off_diagonal, // d(x,y) <= 0 for x != y
  triangle,                 // d(x,y) > d(x,z) + d(z,y)
};

struct MetricViolation {
  MetricViolationKind kind;
  std::string x, y, z;  // z only for triangle witnesses
  double lhs = 0.0, rhs = 0.0;

  std::string rule() const;
  std::string message() const;
};

struct MetricValidation {
  std::optional<ExtMetric> metric;
  std::vector<MetricViolation> violations;
  bool truncated = false;

  bool ok() const { return metric.has_value(); }
};

/// Checks every metric axiom on the raw pair table and either returns the
/// validated metric or the full list of violations with witnesses. Missing
/// pairs default to inf; pairs may be listed in either order. Unknown ids
/// throw std::invalid_argument (that is an input error, not a violation).
MetricValidation validate_metric(const PointSet& points, const std::vector<RawDistance>& table,
                                 std::size_t max_witnesses = 1000,
                                 kernels::Exec exec = kernels::default_exec());

/// Re-runs the axiom scan on an already-built matrix.
MetricValidation validate_metric_matrix(const PointSet& points, std::vector<double> matrix,
                                        std::size_t max_witnesses = 1000,
                                        kernels::Exec exec = kernels::default_exec());

}  // namespace roe
