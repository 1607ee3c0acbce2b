#pragma once

#include <vector>

#include "roe/ext_metric.hpp"

namespace roe {

/// Closed ball {y : d(x,y) <= r}, indices ascending. Closed is the
/// convention everywhere in this library. r may be inf (the whole space).
std::vector<std::size_t> ball(const ExtMetric& d, std::size_t center, double radius);
std::vector<std::size_t> ball(const ExtMetric& d, std::string_view center, double radius);
std::size_t ball_size(const ExtMetric& d, std::size_t center, double radius);

/// Ball-count profile: counts[t] = max over centers of |B(x, breakpoints[t])|,
/// evaluated at 0 and at every distinct finite distance value. This is the
/// quantitative form of bounded geometry at finite scale.
struct GrowthProfile {
  std::vector<double> breakpoints;  // ascending, starts at 0
  std::vector<std::size_t> counts;  // monotone nondecreasing

  /// Count at the largest breakpoint <= r (0 when r < 0).
  std::size_t count_at(double r) const;
};

GrowthProfile growth_profile(const ExtMetric& d, kernels::Exec exec = kernels::default_exec());

/// Minimum off-diagonal distance; inf for a singleton or an everywhere-inf
/// metric.
double discreteness_gap(const ExtMetric& d);

/// Classes of pairwise-finite distance, each ascending, ordered by smallest
/// member.
std::vector<std::vector<std::size_t>> coarse_components(const ExtMetric& d);

/// Largest finite distance inside one coarse component (0 for singletons).
double component_diameter(const ExtMetric& d, const std::vector<std::size_t>& component);

struct NetData {
  double l = 0.0;
  std::vector<std::size_t> net;         // scan order = point order
  std::vector<std::size_t> assignment;  // p(x): first net point within l
};

/// Greedy maximal l-separated subset in point order. Every point gets the
/// first net point within l assigned; net points map to themselves.
NetData greedy_net(const ExtMetric& d, double l);

/// Chain of disjoint clusters with strictly increasing sizes, built by
/// repeatedly accepting the first center outside all previous 2r-balls whose
/// r-ball beats the last accepted size. `radius` stores the diameter bound
/// 2r of the accepted balls; centers are pairwise more than 2r apart.
struct ClusterChain {
  double radius = 0.0;  // diameter bound (= 2r for input radius r)
  std::vector<std::size_t> centers;
  std::vector<std::vector<std::size_t>> clusters;
};

ClusterChain greedy_clusters(const ExtMetric& d, double r);

}  // namespace roe
