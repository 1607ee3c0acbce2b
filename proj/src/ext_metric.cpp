#include "roe/ext_metric.hpp"

#include <cmath>
#include <stdexcept>

namespace roe {

ExtMetric::ExtMetric(PointSet points, std::vector<double> matrix)
    : points_(std::move(points)), matrix_(std::move(matrix)) {
  const std::size_t n = points_.size();
  if (matrix_.size() != n * n) throw std::invalid_argument("metric matrix shape mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i * n + i] != 0.0)
      throw std::invalid_argument("metric diagonal must be zero at '" + points_.id(i) + "'");
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = matrix_[i * n + j];
      if (std::isnan(v) || v <= 0.0)
        throw std::invalid_argument("metric entry (" + points_.id(i) + "," + points_.id(j) +
                                    ") must be in (0, inf]");
      if (v != matrix_[j * n + i])
        throw std::invalid_argument("metric matrix not symmetric at (" + points_.id(i) + "," +
                                    points_.id(j) + ")");
    }
  }
}

ExtMetric ExtMetric::constant(PointSet points, double offdiag) {
  const std::size_t n = points.size();
  std::vector<double> m(n * n, offdiag);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.0;
  return ExtMetric(std::move(points), std::move(m));
}

ExtMetric subspace(const ExtMetric& d, std::span<const std::size_t> subset) {
  const std::size_t m = subset.size();
  std::vector<std::string> ids;
  ids.reserve(m);
  for (std::size_t p = 0; p < m; ++p) {
    if (p > 0 && subset[p] <= subset[p - 1])
      throw std::invalid_argument("subset indices must be strictly ascending");
    if (subset[p] >= d.size()) throw std::invalid_argument("subset index out of range");
    ids.push_back(d.points().id(subset[p]));
  }
  std::vector<double> mat(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) mat[a * m + b] = d.at(subset[a], subset[b]);
  return ExtMetric(PointSet(std::move(ids)), std::move(mat));
}

std::string MetricViolation::rule() const {
  switch (kind) {
    case MetricViolationKind::bad_value: return "metric.bad-value";
    case MetricViolationKind::self_distance: return "metric.self-distance";
    case MetricViolationKind::symmetry_conflict: return "metric.symmetry";
    case MetricViolationKind::nonpositive_off_diagonal: return "metric.positivity";
    case MetricViolationKind::triangle: return "metric.triangle";
  }
  return "metric.unknown";
}

std::string MetricViolation::message() const {
  switch (kind) {
    case MetricViolationKind::bad_value:
      return "entry (" + x + "," + y + ") has invalid value " + format_scalar(lhs);
    case MetricViolationKind::self_distance:
      return "d(" + x + "," + x + ") = " + format_scalar(lhs) + ", must be 0";
    case MetricViolationKind::symmetry_conflict:
      return "pair (" + x + "," + y + ") listed with conflicting values " + format_scalar(lhs) +
             " and " + format_scalar(rhs);
    case MetricViolationKind::nonpositive_off_diagonal:
      return "d(" + x + "," + y + ") = " + format_scalar(lhs) + ", must be positive";
    case MetricViolationKind::triangle:
      return "d(" + x + "," + y + ") = " + format_scalar(lhs) + " exceeds d(" + x + "," + z +
             ") + d(" + z + "," + y + ") = " + format_scalar(rhs);
  }
  return "";
}

MetricValidation validate_metric(const PointSet& points, const std::vector<RawDistance>& table,
                                 std::size_t max_witnesses, kernels::Exec exec) {
  const std::size_t n = points.size();
  std::vector<double> matrix(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) matrix[i * n + i] = 0.0;

  MetricValidation result;
  std::vector<char> given(n * n, 0);
  for (const auto& raw : table) {
    std::size_t i = points.index_of(raw.x);
    std::size_t j = points.index_of(raw.y);
    double v = raw.value;
    if (std::isnan(v) || v < 0.0) {
      result.violations.push_back(
          {MetricViolationKind::bad_value, raw.x, raw.y, "", v, 0.0});
      continue;
    }
    if (i == j) {
      if (v != 0.0)
        result.violations.push_back({MetricViolationKind::self_distance, raw.x, "", "", v, 0.0});
      continue;
    }
    if (v == 0.0) {
      result.violations.push_back(
          {MetricViolationKind::nonpositive_off_diagonal, raw.x, raw.y, "", v, 0.0});
      continue;
    }
    if (given[i * n + j]) {
      if (matrix[i * n + j] != v) {
        result.violations.push_back({MetricViolationKind::symmetry_conflict, raw.x, raw.y, "",
                                     matrix[i * n + j], v});
      }
      continue;
    }
    given[i * n + j] = given[j * n + i] = 1;
    matrix[i * n + j] = matrix[j * n + i] = v;
  }
  if (!result.violations.empty()) return result;
  return validate_metric_matrix(points, std::move(matrix), max_witnesses, exec);
}

MetricValidation validate_metric_matrix(const PointSet& points, std::vector<double> matrix,
                                        std::size_t max_witnesses, kernels::Exec exec) {
  const std::size_t n = points.size();
  MetricValidation result;
  if (matrix.size() != n * n) throw std::invalid_argument("metric matrix shape mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i * n + i] != 0.0)
      result.violations.push_back(
          {MetricViolationKind::self_distance, points.id(i), "", "", matrix[i * n + i], 0.0});
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = matrix[i * n + j];
      if (std::isnan(v) || v < 0.0)
        result.violations.push_back(
            {MetricViolationKind::bad_value, points.id(i), points.id(j), "", v, 0.0});
      else if (v == 0.0)
        result.violations.push_back({MetricViolationKind::nonpositive_off_diagonal, points.id(i),
                                     points.id(j), "", v, 0.0});
      else if (v != matrix[j * n + i])
        result.violations.push_back({MetricViolationKind::symmetry_conflict, points.id(i),
                                     points.id(j), "", v, matrix[j * n + i]});
    }
  }
  if (!result.violations.empty()) return result;

  auto scan = kernels::triangle_violations(matrix, n, max_witnesses, exec);
  result.truncated = scan.truncated;
  for (const auto& w : scan.witnesses) {
    result.violations.push_back({MetricViolationKind::triangle, points.id(w.x), points.id(w.y),
                                 points.id(w.via), matrix[w.x * n + w.y],
                                 matrix[w.x * n + w.via] + matrix[w.via * n + w.y]});
  }
  if (!result.violations.empty()) return result;
  result.metric = ExtMetric(points, std::move(matrix));
  return result;
}

}  // namespace roe
