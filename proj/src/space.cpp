#include "roe/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roe {

std::vector<std::size_t> ball(const ExtMetric& d, std::size_t center, double radius) {
  if (center >= d.size()) throw std::invalid_argument("ball center index out of range");
  if (std::isnan(radius) || radius < 0.0)
    throw std::invalid_argument("ball radius must be nonnegative");
  std::vector<std::size_t> out;
  auto row = d.row(center);
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (row[j] <= radius) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> ball(const ExtMetric& d, std::string_view center, double radius) {
  return ball(d, d.points().index_of(center), radius);
}

std::size_t ball_size(const ExtMetric& d, std::size_t center, double radius) {
  if (center >= d.size()) throw std::invalid_argument("ball center index out of range");
  std::size_t count = 0;
  auto row = d.row(center);
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (row[j] <= radius) ++count;
  }
  return count;
}

std::size_t GrowthProfile::count_at(double r) const {
  if (breakpoints.empty() || r < breakpoints.front()) return 0;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
  return counts[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

GrowthProfile growth_profile(const ExtMetric& d, kernels::Exec exec) {
  GrowthProfile profile;
  const std::size_t n = d.size();
  std::vector<double> values;
  values.reserve(n * n / 2 + 1);
  values.push_back(0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = d.at(i, j);
      if (v != kInf) values.push_back(v);
    }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  profile.breakpoints = std::move(values);
  profile.counts = kernels::max_ball_counts(d.matrix(), n, profile.breakpoints, exec);
  return profile;
}

double discreteness_gap(const ExtMetric& d) {
  double gap = kInf;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) gap = std::min(gap, d.at(i, j));
  return gap;
}

std::vector<std::vector<std::size_t>> coarse_components(const ExtMetric& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> label(n, n);
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != n) continue;
    std::size_t c = classes.size();
    classes.emplace_back();
    label[i] = c;
    stack.assign(1, i);
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      classes[c].push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (label[v] == n && d.at(u, v) != kInf) {
          label[v] = c;
          stack.push_back(v);
        }
      }
    }
    std::sort(classes[c].begin(), classes[c].end());
  }
  return classes;
}

double component_diameter(const ExtMetric& d, const std::vector<std::size_t>& component) {
  double diam = 0.0;
  for (std::size_t a = 0; a < component.size(); ++a)
    for (std::size_t b = a + 1; b < component.size(); ++b)
      diam = std::max(diam, d.at(component[a], component[b]));
  return diam;
}

NetData greedy_net(const ExtMetric& d, double l) {
  if (!(l > 0.0)) throw std::invalid_argument("net radius must be positive");
  const std::size_t n = d.size();
  NetData out;
  out.l = l;
  for (std::size_t x = 0; x < n; ++x) {
    bool separated = true;
    for (std::size_t u : out.net) {
      if (d.at(u, x) <= l) {
        separated = false;
        break;
      }
    }
    if (separated) out.net.push_back(x);
  }
  out.assignment.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t u : out.net) {
      if (d.at(x, u) <= l) {
        out.assignment[x] = u;
        break;
      }
    }
  }
  return out;
}

ClusterChain greedy_clusters(const ExtMetric& d, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("cluster radius must be positive");
  const std::size_t n = d.size();
  ClusterChain chain;
  chain.radius = 2.0 * r;
  std::vector<char> covered(n, 0);  // within 2r of an accepted center
  std::size_t last_size = 0;
  for (;;) {
    std::size_t pick = n;
    for (std::size_t x = 0; x < n; ++x) {
      if (covered[x]) continue;
      if (ball_size(d, x, r) > last_size) {
        pick = x;
        break;
      }
    }
    if (pick == n) break;
    auto cluster = ball(d, pick, r);
    last_size = cluster.size();
    chain.centers.push_back(pick);
    chain.clusters.push_back(std::move(cluster));
    for (std::size_t y = 0; y < n; ++y) {
      if (d.at(pick, y) <= 2.0 * r) covered[y] = 1;
    }
  }
  return chain;
}

}  // namespace roe
