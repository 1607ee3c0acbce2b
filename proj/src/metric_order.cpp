#include "roe/metric_order.hpp"

#include <algorithm>

namespace roe {

std::string MembershipViolation::rule() const {
  switch (kind) {
    case MembershipViolationKind::gap_below_one: return "membership.gap";
    case MembershipViolationKind::finite_on_infinite_base: return "membership.domination";
  }
  return "membership.unknown";
}

std::string MembershipViolation::message() const {
  switch (kind) {
    case MembershipViolationKind::gap_below_one:
      return "d(" + x + "," + y + ") = " + format_scalar(value) + " is below the unit gap";
    case MembershipViolationKind::finite_on_infinite_base:
      return "d(" + x + "," + y + ") = " + format_scalar(value) +
             " is finite but the base distance is inf";
  }
  return "";
}

MembershipResult check_membership(const ExtMetric& base, const ExtMetric& d) {
  if (!(base.points() == d.points()))
    throw std::invalid_argument("check_membership: point sets differ");
  const std::size_t n = d.size();
  MembershipResult result;

  double gap = kInf;
  std::size_t gx = 0, gy = 0;
  double C = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dv = d.at(i, j);
      double bv = base.at(i, j);
      if (dv < gap) {
        gap = dv;
        gx = i;
        gy = j;
      }
      if (bv == kInf) {
        if (dv != kInf) {
          result.violations.push_back({MembershipViolationKind::finite_on_infinite_base,
                                       d.points().id(i), d.points().id(j), dv});
        }
      } else {
        C = std::max(C, bv / dv);  // finite / inf = 0
      }
    }
  }
  if (gap < 1.0) {
    result.violations.push_back(
        {MembershipViolationKind::gap_below_one, d.points().id(gx), d.points().id(gy), gap});
  }
  if (!result.violations.empty()) return result;
  if (C == 0.0) C = 1.0;  // no finite base pair constrains C; report the canonical constant
  result.cert = MetricCert{gap, C, growth_profile(d)};
  return result;
}

bool precedes(const ExtMetric& d1, const ExtMetric& d2) {
  if (!(d1.points() == d2.points())) throw std::invalid_argument("precedes: point sets differ");
  const auto& a = d1.matrix();
  const auto& b = d2.matrix();
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (b[p] > a[p]) return false;
  }
  return true;
}

ExtMetric join_metric(const ExtMetric& base, const ExtMetric& d1, const ExtMetric& d2,
                      std::size_t max_points, kernels::Exec exec) {
  if (!(base.points() == d1.points()) || !(base.points() == d2.points()))
    throw std::invalid_argument("join_metric: point sets differ");
  if (base.size() > max_points)
    throw std::invalid_argument("join_metric: point set exceeds the closure size limit");
  auto m1 = check_membership(base, d1);
  if (!m1.ok()) throw MembershipError("join_metric: first input fails membership", 1,
                                      std::move(m1.violations));
  auto m2 = check_membership(base, d2);
  if (!m2.ok()) throw MembershipError("join_metric: second input fails membership", 2,
                                      std::move(m2.violations));

  const std::size_t n = base.size();
  std::vector<double> lengths(n * n);
  for (std::size_t p = 0; p < lengths.size(); ++p)
    lengths[p] = std::min(d1.matrix()[p], d2.matrix()[p]);
  kernels::geodesic_closure(lengths, n, exec);
  return ExtMetric(base.points(), std::move(lengths));
}

ExtMetric restriction_metric(const ExtMetric& base, std::span<const std::size_t> subset) {
  const std::size_t n = base.size();
  std::vector<char> in(n, 0);
  for (std::size_t idx : subset) {
    if (idx >= n) throw std::invalid_argument("restriction subset index out of range");
    in[idx] = 1;
  }
  std::vector<double> m(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (in[i] && in[j]) m[i * n + j] = m[j * n + i] = base.at(i, j);
    }
  }
  return ExtMetric(base.points(), std::move(m));
}

ExtMetric restriction_metric(const ExtMetric& base, const std::vector<std::string>& subset_ids) {
  std::vector<std::size_t> subset;
  subset.reserve(subset_ids.size());
  for (const auto& id : subset_ids) subset.push_back(base.points().index_of(id));
  return restriction_metric(base, subset);
}

bool epair_precedes(const EPair& p1, const EPair& p2) {
  if (!std::includes(p2.subset.begin(), p2.subset.end(), p1.subset.begin(), p1.subset.end()))
    return false;
  return precedes(p1.metric, p2.metric);
}

EPairReport epair_check(const ExtMetric& base, const EPair& p) {
  EPairReport report;
  report.membership = check_membership(base, p.metric);
  report.subset_profile = growth_profile(subspace(p.metric, p.subset));
  return report;
}

}  // namespace roe
