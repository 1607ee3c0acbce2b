#include "roe/schur.hpp"

#include <algorithm>
#include <cmath>

namespace roe {

namespace {

constexpr double kUnitNormTol = 1e-12;

double sparse_norm(const HRFamily::Vec& v) {
  double acc = 0.0;
  for (const auto& [idx, val] : v) acc += val * val;
  return std::sqrt(acc);
}

double deviation(const HRFamily::Vec& a, const HRFamily::Vec& b) {
  double acc = 0.0;
  std::size_t p = 0, q = 0;
  while (p < a.size() || q < b.size()) {
    if (q == b.size() || (p < a.size() && a[p].first < b[q].first)) {
      acc += a[p].second * a[p].second;
      ++p;
    } else if (p == a.size() || b[q].first < a[p].first) {
      acc += b[q].second * b[q].second;
      ++q;
    } else {
      double diff = a[p].second - b[q].second;
      acc += diff * diff;
      ++p;
      ++q;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

HRFamily::HRFamily(PointSet points, std::vector<Vec> xi, HRParams params)
    : points_(std::move(points)), xi_(std::move(xi)), params_(params) {
  const std::size_t n = points_.size();
  if (xi_.size() != n) throw std::invalid_argument("family size mismatch");
  for (auto& vec : xi_) {
    std::sort(vec.begin(), vec.end());
    vec.erase(std::remove_if(vec.begin(), vec.end(), [](const auto& p) { return p.second == 0.0; }),
              vec.end());
    for (std::size_t p = 0; p < vec.size(); ++p) {
      if (vec[p].first >= n) throw std::invalid_argument("family vector index out of range");
      if (p > 0 && vec[p].first == vec[p - 1].first)
        throw std::invalid_argument("family vector lists an index twice");
      if (std::isnan(vec[p].second)) throw std::invalid_argument("family vector value is NaN");
    }
  }
}

std::size_t HRFamily::defined_count() const {
  std::size_t c = 0;
  for (const auto& v : xi_)
    if (!v.empty()) ++c;
  return c;
}

HRReport hr_check(const HRFamily& xi, const ExtMetric& d, double R, double eps) {
  if (!(xi.points() == d.points())) throw std::invalid_argument("hr_check: point sets differ");
  const std::size_t n = xi.size();
  HRReport report;
  report.R = R;
  report.eps = eps;

  for (std::size_t x = 0; x < n; ++x) {
    if (!xi.defined(x)) continue;
    for (const auto& [idx, val] : xi.vec(x)) {
      if (val < 0.0) {
        report.hr1_violations.push_back({x, "xi_" + xi.points().id(x) + " has negative value " +
                                                format_scalar(val) + " at " + xi.points().id(idx)});
      } else if (val > 1.0) {
        report.hr1_violations.push_back({x, "xi_" + xi.points().id(x) + " has value " +
                                                format_scalar(val) + " > 1 at " +
                                                xi.points().id(idx)});
      }
    }
    double norm = sparse_norm(xi.vec(x));
    if (std::abs(norm - 1.0) > kUnitNormTol) {
      report.hr1_violations.push_back(
          {x, "||xi_" + xi.points().id(x) + "|| = " + format_scalar(norm)});
    }
  }
  report.hr1_ok = report.hr1_violations.empty();

  for (std::size_t x = 0; x < n; ++x) {
    if (!xi.defined(x)) continue;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!xi.defined(y) || d.at(x, y) > R) continue;
      double dev = deviation(xi.vec(x), xi.vec(y));
      if (dev > report.eps_star) {
        report.eps_star = dev;
        report.eps_witness = {x, y};
      }
    }
    for (const auto& [idx, val] : xi.vec(x)) {
      (void)val;
      if (d.at(x, idx) > report.s_star) {
        report.s_star = d.at(x, idx);
        report.s_witness = x;
      }
    }
  }
  report.pass = report.hr1_ok && report.eps_star < eps && report.s_star <= xi.params().S;
  return report;
}

HRFamily uniform_hr_family(const ExtMetric& d) {
  const std::size_t n = d.size();
  auto components = coarse_components(d);
  std::vector<HRFamily::Vec> xi(n);
  double max_diam = 0.0;
  for (const auto& comp : components) {
    max_diam = std::max(max_diam, component_diameter(d, comp));
    double value = 1.0 / std::sqrt(static_cast<double>(comp.size()));
    HRFamily::Vec vec;
    vec.reserve(comp.size());
    for (std::size_t z : comp) vec.push_back({z, value});
    for (std::size_t x : comp) xi[x] = vec;
  }
  return HRFamily(d.points(), std::move(xi), HRParams{kInf, 0.0, max_diam});
}

HRFamily ball_averaging_family(const ExtMetric& d, const NetData& net, double S) {
  if (S < net.l)
    throw std::invalid_argument("ball_averaging_family: S must be at least the net radius");
  const std::size_t n = d.size();
  std::vector<char> in_net(n, 0);
  for (std::size_t u : net.net) in_net[u] = 1;
  std::vector<HRFamily::Vec> xi(n);
  for (std::size_t x = 0; x < n; ++x) {
    HRFamily::Vec vec;
    for (std::size_t z = 0; z < n; ++z) {
      if (in_net[z] && d.at(x, z) <= S) vec.push_back({z, 1.0});
    }
    double value = 1.0 / std::sqrt(static_cast<double>(vec.size()));
    for (auto& [idx, val] : vec) val = value;
    xi[x] = std::move(vec);
  }
  return HRFamily(d.points(), std::move(xi), HRParams{kInf, kInf, S});
}

HRFamily net_transport(const HRFamily& xi_on_net, const NetData& net, double R, double eps,
                       double S) {
  const std::size_t n = xi_on_net.size();
  if (net.assignment.size() != n) throw std::invalid_argument("net_transport: net size mismatch");
  std::vector<char> in_net(n, 0);
  for (std::size_t u : net.net) in_net[u] = 1;
  for (std::size_t u : net.net) {
    if (!xi_on_net.defined(u))
      throw std::invalid_argument("net_transport: missing vector for net point '" +
                                  xi_on_net.points().id(u) + "'");
    for (const auto& [idx, val] : xi_on_net.vec(u)) {
      (void)val;
      if (!in_net[idx])
        throw std::invalid_argument("net_transport: support of xi_" + xi_on_net.points().id(u) +
                                    " leaves the net at '" + xi_on_net.points().id(idx) + "'");
    }
  }
  std::vector<HRFamily::Vec> eta(n);
  for (std::size_t x = 0; x < n; ++x) eta[x] = xi_on_net.vec(net.assignment[x]);
  return HRFamily(xi_on_net.points(), std::move(eta), HRParams{R - 2.0 * net.l, eps, S + net.l});
}

SchurKernel::SchurKernel(PointSet points, std::vector<double> values, bool from_unit_family)
    : points_(std::move(points)), values_(std::move(values)), from_unit_family_(from_unit_family) {
  const std::size_t n = points_.size();
  if (values_.size() != n * n) throw std::invalid_argument("kernel shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = values_[i * n + j];
      if (std::isnan(v)) throw std::invalid_argument("kernel value is NaN");
      if (v != values_[j * n + i]) throw std::invalid_argument("kernel is not symmetric");
    }
}

SchurKernel gram_kernel(const HRFamily& xi, kernels::Exec exec) {
  const std::size_t n = xi.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!xi.defined(x))
      throw std::invalid_argument("gram_kernel: family undefined at '" + xi.points().id(x) + "'");
    double norm = sparse_norm(xi.vec(x));
    if (std::abs(norm - 1.0) > kUnitNormTol)
      throw std::invalid_argument("gram_kernel: ||xi_" + xi.points().id(x) +
                                  "|| = " + format_scalar(norm) + ", expected 1");
    for (const auto& [idx, val] : xi.vec(x)) {
      (void)idx;
      if (val < 0.0)
        throw std::invalid_argument("gram_kernel: negative value in xi_" + xi.points().id(x));
    }
  }
  auto k = kernels::gram_matrix(xi.all(), n, exec);
  // Unit-family semantics: identical vectors have Gram value exactly 1, and
  // rounding may not push any entry outside [-1, 1].
  for (std::size_t x = 0; x < n; ++x) {
    k[x * n + x] = 1.0;
    for (std::size_t y = x + 1; y < n; ++y) {
      double v = xi.vec(x) == xi.vec(y) ? 1.0 : std::clamp(k[x * n + y], -1.0, 1.0);
      k[x * n + y] = k[y * n + x] = v;
    }
  }
  return SchurKernel(xi.points(), std::move(k), true);
}

SparseOp schur_apply(const SchurKernel& k, const SparseOp& T) {
  if (!(k.points() == T.points())) throw std::invalid_argument("schur_apply: point sets differ");
  std::vector<OpEntry> entries;
  entries.reserve(T.entries().size());
  for (const auto& e : T.entries()) {
    std::complex<double> value = k.at(e.row, e.col) * e.value;
    if (value != std::complex<double>{0.0, 0.0}) entries.push_back({e.row, e.col, value});
  }
  return SparseOp(T.points(), std::move(entries));
}

CPTerms cp_decomposition(const HRFamily& xi, const ExtMetric& d, double S) {
  if (!(xi.points() == d.points()))
    throw std::invalid_argument("cp_decomposition: point sets differ");
  const std::size_t n = xi.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!xi.defined(x))
      throw std::invalid_argument("cp_decomposition: family undefined at '" + xi.points().id(x) +
                                  "'");
    for (const auto& [idx, val] : xi.vec(x)) {
      (void)val;
      if (d.at(x, idx) > S)
        throw std::invalid_argument("cp_decomposition: support of xi_" + xi.points().id(x) +
                                    " leaves the declared radius at '" + xi.points().id(idx) +
                                    "'");
    }
  }

  CPTerms out;
  // Raw terms: one per point of the union of supports, in point order.
  std::vector<HRFamily::Vec> phi_by_z(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& [z, val] : xi.vec(x)) phi_by_z[z].push_back({x, val});
  }
  std::vector<std::size_t> term_of_z(n, n);
  for (std::size_t z = 0; z < n; ++z) {
    if (phi_by_z[z].empty()) continue;
    term_of_z[z] = out.zs.size();
    out.zs.push_back(z);
    out.phi.push_back(std::move(phi_by_z[z]));
  }

  // Conflict graph: z ~ z' when some xi_x carries both.
  const std::size_t m = out.zs.size();
  std::vector<std::vector<std::size_t>> conflicts(m);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& vec = xi.vec(x);
    for (std::size_t p = 0; p < vec.size(); ++p)
      for (std::size_t q = p + 1; q < vec.size(); ++q) {
        conflicts[term_of_z[vec[p].first]].push_back(term_of_z[vec[q].first]);
        conflicts[term_of_z[vec[q].first]].push_back(term_of_z[vec[p].first]);
      }
  }
  std::size_t max_degree = 0;
  for (auto& list : conflicts) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    max_degree = std::max(max_degree, list.size());
  }
  out.coloring_bound = max_degree + 1;

  // Greedy first-fit over z in point order.
  out.group_of.assign(m, 0);
  std::vector<char> taken;
  for (std::size_t i = 0; i < m; ++i) {
    taken.assign(out.group_count + 1, 0);
    for (std::size_t j : conflicts[i]) {
      if (j < i) taken[out.group_of[j]] = 1;
    }
    std::size_t cls = 0;
    while (taken[cls]) ++cls;
    out.group_of[i] = cls;
    out.group_count = std::max(out.group_count, cls + 1);
  }
  return out;
}

SparseOp apply_cp(const CPTerms& terms, const SparseOp& T) {
  const std::size_t n = T.size();
  std::vector<double> phi_dense(n, 0.0);
  std::vector<OpEntry> acc;
  for (std::size_t i = 0; i < terms.phi.size(); ++i) {
    for (const auto& [x, val] : terms.phi[i]) phi_dense[x] = val;
    for (const auto& e : T.entries()) {
      double left = phi_dense[e.row], right = phi_dense[e.col];
      if (left != 0.0 && right != 0.0) acc.push_back({e.row, e.col, left * e.value * right});
    }
    for (const auto& [x, val] : terms.phi[i]) {
      (void)val;
      phi_dense[x] = 0.0;
    }
  }
  return SparseOp(T.points(), std::move(acc));
}

std::vector<double> convergence_run(const ExtMetric& d, const SparseOp& T,
                                    const std::vector<ConvergenceStage>& schedule, double tol) {
  std::vector<double> deviations;
  deviations.reserve(schedule.size());
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    const auto& stage = schedule[s];
    auto report = hr_check(stage.family, d, stage.R, stage.eps);
    if (!report.pass) throw StageFailure(s, std::move(report));
    auto mk = schur_apply(gram_kernel(stage.family), T);
    deviations.push_back(op_norm(mk - T, tol).value);
  }
  return deviations;
}

}  // namespace roe
