#include "roe/coarse.hpp"

#include <algorithm>
#include <cmath>

namespace roe {

namespace {

void check_map_shape(const CoarseMapData& data) {
  if (data.f.size() != data.X.size()) throw std::invalid_argument("map f is not total on X");
  for (std::size_t y : data.f)
    if (y >= data.Y.size()) throw std::invalid_argument("map f image index out of range");
  if (data.g) {
    if (data.g->size() != data.Y.size()) throw std::invalid_argument("map g is not total on Y");
    for (std::size_t x : *data.g)
      if (x >= data.X.size()) throw std::invalid_argument("map g image index out of range");
  }
}

}  // namespace

double ExpansionProfile::bound_at(double r) const {
  if (breakpoints.empty() || r < breakpoints.front()) return 0.0;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
  return bounds[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

ExpansionProfile expansion_profile(const std::vector<std::size_t>& map, const ExtMetric& d_from,
                                   const ExtMetric& d_to) {
  const std::size_t n = d_from.size();
  if (map.size() != n) throw std::invalid_argument("expansion_profile: map is not total");

  ExpansionProfile profile;
  std::vector<double> values;
  values.push_back(0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = d_from.at(i, j);
      if (v != kInf) values.push_back(v);
    }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  profile.breakpoints = std::move(values);
  profile.bounds.assign(profile.breakpoints.size(), 0.0);

  // One pass over pairs: each pair charges the first breakpoint covering it;
  // a running maximum finishes the monotone profile.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = d_from.at(i, j);
      if (v == kInf) continue;
      double image = d_to.at(map[i], map[j]);
      auto it = std::lower_bound(profile.breakpoints.begin(), profile.breakpoints.end(), v);
      std::size_t t = static_cast<std::size_t>(it - profile.breakpoints.begin());
      profile.bounds[t] = std::max(profile.bounds[t], image);
    }
  for (std::size_t t = 1; t < profile.bounds.size(); ++t)
    profile.bounds[t] = std::max(profile.bounds[t], profile.bounds[t - 1]);
  profile.all_finite =
      profile.bounds.empty() || profile.bounds.back() != kInf;
  return profile;
}

double expansion_at(const std::vector<std::size_t>& map, const ExtMetric& d_from,
                    const ExtMetric& d_to, double R) {
  const std::size_t n = d_from.size();
  if (map.size() != n) throw std::invalid_argument("expansion_at: map is not total");
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d_from.at(i, j) <= R) bound = std::max(bound, d_to.at(map[i], map[j]));
    }
  return bound;
}

CoarseReport check_coarse_equivalence(const CoarseMapData& data, const ExtMetric& dX,
                                      const ExtMetric& dY) {
  if (!(data.X == dX.points()) || !(data.Y == dY.points()))
    throw std::invalid_argument("check_coarse_equivalence: point sets differ");
  check_map_shape(data);
  if (!data.g)
    throw std::invalid_argument("check_coarse_equivalence: a coarse inverse g is required");

  CoarseReport report;
  report.rho_f = expansion_profile(data.f, dX, dY);
  report.rho_g = expansion_profile(*data.g, dY, dX);

  if (!report.rho_f.all_finite) {
    for (std::size_t i = 0; i < dX.size(); ++i)
      for (std::size_t j = i + 1; j < dX.size(); ++j) {
        if (dX.at(i, j) != kInf && dY.at(data.f[i], data.f[j]) == kInf) {
          report.witnesses.push_back(
              {"coarse.expansion-f", "f maps (" + data.X.id(i) + "," + data.X.id(j) +
                                         ") at distance " + format_scalar(dX.at(i, j)) +
                                         " to an inf-distant pair"});
        }
      }
  }
  if (!report.rho_g.all_finite) {
    const auto& g = *data.g;
    for (std::size_t i = 0; i < dY.size(); ++i)
      for (std::size_t j = i + 1; j < dY.size(); ++j) {
        if (dY.at(i, j) != kInf && dX.at(g[i], g[j]) == kInf) {
          report.witnesses.push_back(
              {"coarse.expansion-g", "g maps (" + data.Y.id(i) + "," + data.Y.id(j) +
                                         ") at distance " + format_scalar(dY.at(i, j)) +
                                         " to an inf-distant pair"});
        }
      }
  }

  const auto& g = *data.g;
  for (std::size_t x = 0; x < dX.size(); ++x)
    report.C_gf = std::max(report.C_gf, dX.at(g[data.f[x]], x));
  for (std::size_t y = 0; y < dY.size(); ++y)
    report.C_fg = std::max(report.C_fg, dY.at(data.f[g[y]], y));

  double allowed = data.C ? *data.C : kInf;
  if (report.C_gf > allowed || report.C_gf == kInf) {
    std::size_t worst = 0;
    for (std::size_t x = 0; x < dX.size(); ++x)
      if (dX.at(g[data.f[x]], x) == report.C_gf) {
        worst = x;
        break;
      }
    report.witnesses.push_back({"coarse.closeness-gf",
                                "d_X(g(f(" + data.X.id(worst) + ")), " + data.X.id(worst) +
                                    ") = " + format_scalar(report.C_gf) +
                                    (data.C ? " exceeds C = " + format_scalar(*data.C)
                                            : " is not finite")});
  }
  if (report.C_fg > allowed || report.C_fg == kInf) {
    std::size_t worst = 0;
    for (std::size_t y = 0; y < dY.size(); ++y)
      if (dY.at(data.f[g[y]], y) == report.C_fg) {
        worst = y;
        break;
      }
    report.witnesses.push_back({"coarse.closeness-fg",
                                "d_Y(f(g(" + data.Y.id(worst) + ")), " + data.Y.id(worst) +
                                    ") = " + format_scalar(report.C_fg) +
                                    (data.C ? " exceeds C = " + format_scalar(*data.C)
                                            : " is not finite")});
  }

  if (data.claims_surjective) {
    std::vector<char> hit(dY.size(), 0);
    for (std::size_t y : data.f) hit[y] = 1;
    for (std::size_t y = 0; y < dY.size(); ++y) {
      if (!hit[y])
        report.witnesses.push_back(
            {"coarse.surjectivity", "'" + data.Y.id(y) + "' has no preimage"});
    }
  }

  report.pass = report.witnesses.empty();
  return report;
}

BGBoundReport image_bg_bound(const CoarseMapData& data, std::span<const std::size_t> A,
                             const ExtMetric& dX, const ExtMetric& dY, double R) {
  BGBoundReport report;
  auto equivalence = check_coarse_equivalence(data, dX, dY);
  if (!equivalence.pass) {
    report.witnesses = equivalence.witnesses;
    report.witnesses.push_back(
        {"bg-bound.precondition", "the coarse equivalence check fails"});
    return report;
  }
  std::vector<char> hit(dY.size(), 0);
  for (std::size_t y : data.f) hit[y] = 1;
  for (std::size_t y = 0; y < dY.size(); ++y) {
    if (!hit[y]) {
      report.witnesses.push_back({"bg-bound.precondition",
                                  "f is not surjective: '" + data.Y.id(y) + "' has no preimage"});
      return report;
    }
  }

  double C = data.C ? *data.C : std::max(equivalence.C_gf, equivalence.C_fg);
  report.rho_g_at_R = expansion_at(*data.g, dY, dX, R);
  report.transfer_radius = report.rho_g_at_R + 2.0 * C;

  std::vector<char> in_A(dX.size(), 0);
  std::vector<char> in_fA(dY.size(), 0);
  for (std::size_t x : A) {
    if (x >= dX.size()) throw std::invalid_argument("image_bg_bound: subset index out of range");
    in_A[x] = 1;
    in_fA[data.f[x]] = 1;
  }

  bool ok = true;
  for (std::size_t x : A) {
    BGBoundRow row{x, 0, 0};
    std::size_t fx = data.f[x];
    for (std::size_t y = 0; y < dY.size(); ++y)
      if (in_fA[y] && dY.at(fx, y) <= R) ++row.lhs;
    for (std::size_t z = 0; z < dX.size(); ++z)
      if (in_A[z] && dX.at(x, z) <= report.transfer_radius) ++row.rhs;
    if (row.lhs > row.rhs) {
      ok = false;
      report.witnesses.push_back(
          {"bg-bound.inequality", "at '" + data.X.id(x) + "': image ball has " +
                                      std::to_string(row.lhs) + " points, source ball only " +
                                      std::to_string(row.rhs)});
    }
    report.rows.push_back(row);
  }
  report.pass = ok;
  return report;
}

std::vector<std::size_t> choose_section(const CoarseMapData& data,
                                        std::span<const std::size_t> B) {
  check_map_shape(data);
  std::vector<std::size_t> first_preimage(data.Y.size(), data.X.size());
  for (std::size_t x = data.X.size(); x-- > 0;) first_preimage[data.f[x]] = x;
  std::vector<std::size_t> A;
  A.reserve(B.size());
  for (std::size_t y : B) {
    if (y >= data.Y.size()) throw std::invalid_argument("choose_section: index out of range");
    if (first_preimage[y] == data.X.size())
      throw std::invalid_argument("choose_section: '" + data.Y.id(y) + "' has no preimage");
    A.push_back(first_preimage[y]);
  }
  std::sort(A.begin(), A.end());
  A.erase(std::unique(A.begin(), A.end()), A.end());
  return A;
}

SurjectiveReduction restrict_to_image(const CoarseMapData& data) {
  check_map_shape(data);
  SurjectiveReduction out;
  std::vector<char> hit(data.Y.size(), 0);
  for (std::size_t y : data.f) hit[y] = 1;
  std::vector<std::size_t> new_index(data.Y.size(), data.Y.size());
  std::vector<std::string> ids;
  for (std::size_t y = 0; y < data.Y.size(); ++y) {
    if (hit[y]) {
      new_index[y] = out.image.size();
      out.image.push_back(y);
      ids.push_back(data.Y.id(y));
    } else {
      out.dropped.push_back(y);
    }
  }
  out.data.X = data.X;
  out.data.Y = PointSet(std::move(ids));
  out.data.f.reserve(data.f.size());
  for (std::size_t y : data.f) out.data.f.push_back(new_index[y]);
  if (data.g) {
    out.data.g.emplace();
    out.data.g->reserve(out.image.size());
    for (std::size_t y : out.image) out.data.g->push_back((*data.g)[y]);
  }
  out.data.C = data.C;
  out.data.claims_surjective = true;
  return out;
}

bool MoritaIndex::in_A(std::size_t x) const {
  return std::binary_search(A.begin(), A.end(), x);
}

MoritaIndex morita_index(const CoarseMapData& data, std::span<const std::size_t> A) {
  check_map_shape(data);
  MoritaIndex idx;
  idx.X = data.X;
  idx.Y = data.Y;
  idx.f = data.f;
  idx.A.assign(A.begin(), A.end());
  std::sort(idx.A.begin(), idx.A.end());
  idx.A.erase(std::unique(idx.A.begin(), idx.A.end()), idx.A.end());
  for (std::size_t x : idx.A)
    if (x >= data.X.size()) throw std::invalid_argument("morita_index: subset index out of range");

  idx.fiber_count.assign(data.Y.size(), 0);
  idx.fibers.assign(data.Y.size(), {});
  idx.pi.assign(data.X.size(), 0);
  for (std::size_t x : idx.A) {
    std::size_t y = data.f[x];
    idx.pi[x] = idx.fiber_count[y]++;
    idx.fibers[y].push_back(x);
  }
  for (std::size_t count : idx.fiber_count) idx.max_fiber = std::max(idx.max_fiber, count);
  return idx;
}

std::pair<std::size_t, std::size_t> morita_forward(const MoritaIndex& idx, std::size_t x,
                                                   std::size_t j) {
  if (x >= idx.f.size() || !idx.in_A(x))
    throw std::invalid_argument("morita_forward: point is outside A");
  std::size_t y = idx.f[x];
  return {y, idx.pi[x] + j * idx.fiber_count[y]};
}

std::pair<std::size_t, std::size_t> morita_inverse(const MoritaIndex& idx, std::size_t y,
                                                   std::size_t m) {
  if (y >= idx.fiber_count.size() || idx.fiber_count[y] == 0)
    throw std::invalid_argument("morita_inverse: point is outside f(A)");
  std::size_t N = idx.fiber_count[y];
  return {idx.fibers[y][m % N], m / N};
}

PointSet window_points(const PointSet& base, std::span<const std::size_t> subset, std::size_t J) {
  std::vector<std::string> ids;
  ids.reserve(subset.size() * J);
  for (std::size_t x : subset)
    for (std::size_t j = 0; j < J; ++j) ids.push_back(base.id(x) + "#" + std::to_string(j));
  return PointSet(std::move(ids));
}

SparseOp induced_conjugation(const MoritaIndex& idx, const SparseOp& T, std::size_t J,
                             std::optional<std::size_t> out_window) {
  if (J == 0) throw std::invalid_argument("induced_conjugation: window must be positive");
  PointSet in_points = window_points(idx.X, idx.A, J);
  if (!(T.points() == in_points))
    throw std::invalid_argument("induced_conjugation: operator is not on the A-window point set");

  std::vector<std::size_t> image;  // Y indices hit by A, ascending
  for (std::size_t y = 0; y < idx.fiber_count.size(); ++y)
    if (idx.fiber_count[y] > 0) image.push_back(y);
  const std::size_t Jout = out_window.value_or(J * std::max<std::size_t>(idx.max_fiber, 1));
  PointSet out_points = window_points(idx.Y, image, Jout);
  std::vector<std::size_t> out_pos(idx.fiber_count.size(), 0);
  for (std::size_t p = 0; p < image.size(); ++p) out_pos[image[p]] = p * Jout;

  auto relabel = [&](std::size_t flat) {
    std::size_t x = idx.A[flat / J];
    std::size_t j = flat % J;
    auto [y, m] = morita_forward(idx, x, j);
    if (m >= Jout)
      throw WindowError("image index " + std::to_string(m) + " for (" + idx.X.id(x) + "," +
                        std::to_string(j) + ") leaves the output window of size " +
                        std::to_string(Jout));
    return out_pos[y] + m;
  };

  std::vector<OpEntry> entries;
  entries.reserve(T.entries().size());
  for (const auto& e : T.entries()) entries.push_back({relabel(e.row), relabel(e.col), e.value});
  return SparseOp(std::move(out_points), std::move(entries));
}

}  // namespace roe
