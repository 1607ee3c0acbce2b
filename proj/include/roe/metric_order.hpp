#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "roe/space.hpp"

namespace roe {

/// Witness that a metric d lives in the directed set over the base metric:
/// discreteness gap at least 1, domination d >= d0 / C with the minimal C,
/// and the ball-count profile standing in for bounded geometry.
struct MetricCert {
  double gap = kInf;
  double C = 1.0;
  GrowthProfile profile;
};

enum class MembershipViolationKind {
  gap_below_one,           // some pair closer than 1
  finite_on_infinite_base, // d finite where the base is inf
};

struct MembershipViolation {
  MembershipViolationKind kind;
  std::string x, y;
  double value = 0.0;

  std::string rule() const;
  std::string message() const;
};

struct MembershipResult {
  std::optional<MetricCert> cert;
  std::vector<MembershipViolation> violations;

  bool ok() const { return cert.has_value(); }
};

/// Certifies d against the base metric. The reported C is the maximum of
/// d0(x,y) / d(x,y) over pairs with finite base distance (1 when there are
/// none), which is the smallest constant with d >= d0 / C.
MembershipResult check_membership(const ExtMetric& base, const ExtMetric& d);

/// d1 precedes d2 iff d2 <= d1 pointwise (inf on top).
bool precedes(const ExtMetric& d1, const ExtMetric& d2);

struct MembershipError : std::runtime_error {
  MembershipError(std::string what, int input, std::vector<MembershipViolation> v)
      : std::runtime_error(std::move(what)), input_index(input), violations(std::move(v)) {}
  int input_index;  // 1 or 2
  std::vector<MembershipViolation> violations;
};

/// Geodesic join: the path metric of the complete graph with edge lengths
/// min(d1, d2). Dominates both inputs in the order above and stays in the
/// directed set with C <= max(C1, C2). Throws MembershipError when an input
/// fails check_membership, std::invalid_argument beyond max_points.
ExtMetric join_metric(const ExtMetric& base, const ExtMetric& d1, const ExtMetric& d2,
                      std::size_t max_points = 2048,
                      kernels::Exec exec = kernels::default_exec());

/// Keeps the base metric on Y x Y and puts every pair touching the
/// complement at inf.
ExtMetric restriction_metric(const ExtMetric& base, std::span<const std::size_t> subset);
ExtMetric restriction_metric(const ExtMetric& base, const std::vector<std::string>& subset_ids);

/// A pair (Y, d) for the order that moves points and metric together.
struct EPair {
  std::vector<std::size_t> subset;  // ascending
  ExtMetric metric;
};

/// (Y1,d1) precedes (Y2,d2) iff Y1 is contained in Y2 and d1 precedes d2.
bool epair_precedes(const EPair& p1, const EPair& p2);

struct EPairReport {
  MembershipResult membership;  // (D1), (D2) of the metric against the base
  GrowthProfile subset_profile; // ball counts of (Y, d|_Y)
  bool ok() const { return membership.ok(); }
};

/// Checks the pair conditions: (D1) and (D2) for the metric, plus the
/// subset's own ball-count profile in place of full bounded geometry.
EPairReport epair_check(const ExtMetric& base, const EPair& p);

}  // namespace roe
