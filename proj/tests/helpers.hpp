#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "roe/coarse.hpp"
#include "roe/io.hpp"
#include "roe/numeric.hpp"
#include "roe/schur.hpp"

namespace testhelpers {

using namespace roe;

// mt19937_64 raw output is pinned by the standard; staying away from
// std::uniform_int_distribution keeps the streams identical across compilers.
using Rng = std::mt19937_64;

inline std::size_t rand_below(Rng& rng, std::size_t n) { return rng() % n; }

inline std::size_t rand_range(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + rand_below(rng, hi - lo + 1);
}

inline double rand_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool rand_chance(Rng& rng, double p) { return rand_unit(rng) < p; }

// ---------------------------------------------------------------------------
// Fixtures

inline PointSet numbered_points(std::size_t n, const std::string& prefix = "") {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return PointSet(std::move(ids));
}

/// The line {0..n-1} with d(i,j) = |i-j|.
inline ExtMetric line_metric(std::size_t n) {
  PointSet points = numbered_points(n);
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = static_cast<double>(i > j ? i - j : j - i);
  return ExtMetric(std::move(points), std::move(m));
}

inline ExtMetric clique_metric(std::size_t n, double dist = 1.0) {
  return ExtMetric::constant(numbered_points(n), dist);
}

/// Disjoint cliques of sizes 1..max_n at mutual distance inf; point ids
/// "b<n>_<i>". Block k (1-based) occupies a contiguous index range.
inline ExtMetric block_cliques(std::size_t max_n, double inner = 1.0) {
  std::vector<std::string> ids;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t b = 1; b <= max_n; ++b) {
    std::size_t start = ids.size();
    for (std::size_t i = 0; i < b; ++i)
      ids.push_back("b" + std::to_string(b) + "_" + std::to_string(i));
    spans.push_back({start, ids.size()});
  }
  const std::size_t n = ids.size();
  std::vector<double> m(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.0;
  for (auto [lo, hi] : spans)
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = lo; j < hi; ++j)
        if (i != j) m[i * n + j] = inner;
  return ExtMetric(PointSet(std::move(ids)), std::move(m));
}

inline ExtMetric metric_from_triples(
    std::vector<std::string> ids,
    const std::vector<std::tuple<std::string, std::string, double>>& triples) {
  PointSet points(std::move(ids));
  const std::size_t n = points.size();
  std::vector<double> m(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.0;
  for (const auto& [x, y, v] : triples) {
    std::size_t i = points.index_of(x), j = points.index_of(y);
    m[i * n + j] = m[j * n + i] = v;
  }
  return ExtMetric(std::move(points), std::move(m));
}

// ---------------------------------------------------------------------------
// Random generators (integer-valued metrics so the acceptance inequalities
// can be checked in exact arithmetic)

/// Connected random graph geodesic metric on the index range [lo, hi) of a
/// shared matrix, with integer edge weights in [1, max_w].
inline void fill_component(Rng& rng, std::vector<double>& m, std::size_t n, std::size_t lo,
                           std::size_t hi, std::size_t max_w) {
  // Random spanning tree plus a few chords, then closure.
  for (std::size_t v = lo + 1; v < hi; ++v) {
    std::size_t u = rand_range(rng, lo, v - 1);
    double w = static_cast<double>(rand_range(rng, 1, max_w));
    m[u * n + v] = m[v * n + u] = w;
  }
  std::size_t chords = (hi - lo) / 2;
  for (std::size_t c = 0; c < chords; ++c) {
    std::size_t u = rand_range(rng, lo, hi - 1), v = rand_range(rng, lo, hi - 1);
    if (u == v) continue;
    double w = static_cast<double>(rand_range(rng, 1, max_w));
    if (w < m[u * n + v]) m[u * n + v] = m[v * n + u] = w;
  }
}

/// Random integer-valued extended metric with the given component split.
inline ExtMetric random_metric(Rng& rng, std::size_t n, std::size_t components = 1,
                               std::size_t max_w = 8, const std::string& prefix = "p") {
  components = std::max<std::size_t>(1, std::min(components, n));
  std::vector<double> m(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.0;
  // Component boundaries: split [0, n) into `components` nonempty ranges.
  std::vector<std::size_t> cuts = {0, n};
  while (cuts.size() < components + 1) {
    std::size_t c = rand_range(rng, 1, n - 1);
    cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b)
    fill_component(rng, m, n, cuts[b], cuts[b + 1], max_w);
  kernels::geodesic_closure(m, n);
  return ExtMetric(numbered_points(n, prefix), std::move(m));
}

/// A random member of the directed set over `base`: refines the component
/// split (optionally) and redraws geodesic distances with integer weights,
/// so (D1) holds and pairs at base distance inf stay inf.
inline ExtMetric random_dominating_metric(Rng& rng, const ExtMetric& base, std::size_t max_w = 8) {
  const std::size_t n = base.size();
  auto components = coarse_components(base);
  std::vector<double> m(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.0;
  std::vector<std::size_t> part(n, 0);
  std::size_t parts = 0;
  for (const auto& comp : components) {
    // Split this component into 1 or 2 finite classes.
    std::size_t split = comp.size() > 1 && rand_chance(rng, 0.3)
                            ? rand_range(rng, 1, comp.size() - 1)
                            : comp.size();
    for (std::size_t p = 0; p < comp.size(); ++p) part[comp[p]] = parts + (p < split ? 0 : 1);
    parts += split == comp.size() ? 1 : 2;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (part[i] == part[j] && rand_chance(rng, 0.8)) {
        double w = static_cast<double>(rand_range(rng, 1, max_w));
        m[i * n + j] = m[j * n + i] = w;
      }
    }
  kernels::geodesic_closure(m, n);
  // Geodesic closure may still leave some same-part pair unreachable; that is
  // fine (a finer split), membership only needs base-inf pairs to stay inf.
  return ExtMetric(base.points(), std::move(m));
}

inline std::complex<double> random_value(Rng& rng) {
  double re = 0.25 + 2.75 * rand_unit(rng);
  double im = rand_chance(rng, 0.5) ? 0.0 : -1.0 + 2.0 * rand_unit(rng);
  if (rand_chance(rng, 0.5)) re = -re;
  return {re, im};
}

/// Random operator in the k-band class with propagation at most S under d:
/// a superposition of up to k partial permutations supported on pairs with
/// d(x,y) <= S.
inline SparseOp random_banded_op(Rng& rng, const ExtMetric& d, std::size_t k, double S) {
  const std::size_t n = d.size();
  std::vector<OpEntry> entries;
  std::vector<std::vector<std::size_t>> allowed(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d.at(i, j) <= S) allowed[i].push_back(j);
  for (std::size_t layer = 0; layer < k; ++layer) {
    std::vector<char> row_used(n, 0), col_used(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (rand_chance(rng, 0.35)) continue;
      const auto& cols = allowed[i];
      if (cols.empty()) continue;
      std::size_t j = cols[rand_below(rng, cols.size())];
      if (row_used[i] || col_used[j]) continue;
      row_used[i] = 1;
      col_used[j] = 1;
      entries.push_back({i, j, random_value(rng)});
    }
  }
  return SparseOp(d.points(), std::move(entries));
}

/// Random unit family with supports in ball(x, S) and values in (0, 1].
inline HRFamily random_hr_family(Rng& rng, const ExtMetric& d, double S) {
  const std::size_t n = d.size();
  std::vector<HRFamily::Vec> xi(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto b = ball(d, x, S);
    HRFamily::Vec vec;
    for (std::size_t z : b) {
      if (z == x || rand_chance(rng, 0.6)) vec.push_back({z, 0.05 + rand_unit(rng)});
    }
    double norm = 0.0;
    for (auto& [idx, val] : vec) norm += val * val;
    norm = std::sqrt(norm);
    for (auto& [idx, val] : vec) val /= norm;
    xi[x] = std::move(vec);
  }
  return HRFamily(d.points(), std::move(xi), HRParams{kInf, kInf, S});
}

// ---------------------------------------------------------------------------
// Random coarse equivalences

struct Equivalence {
  ExtMetric dX, dY;
  CoarseMapData data;
};

/// Fiber blow-up of a random base: every Y-point y gets 1..max_fiber copies
/// in X at mutual distance 1, distances between fibers inherit from Y. The
/// first copy is the section, so g o f moves points at most 1.
inline Equivalence random_equivalence(Rng& rng, std::size_t ny, std::size_t max_fiber) {
  auto dY = random_metric(rng, ny, rand_range(rng, 1, 2), 8, "y");
  std::vector<std::size_t> fiber_of;  // X index -> Y index
  std::vector<std::string> ids;
  std::vector<std::size_t> first(ny);
  for (std::size_t y = 0; y < ny; ++y) {
    first[y] = ids.size();
    std::size_t count = rand_range(rng, 1, max_fiber);
    for (std::size_t t = 0; t < count; ++t) {
      ids.push_back("x" + std::to_string(y) + "_" + std::to_string(t));
      fiber_of.push_back(y);
    }
  }
  const std::size_t nx = ids.size();
  std::vector<double> m(nx * nx);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) {
      if (i == j)
        m[i * nx + j] = 0.0;
      else if (fiber_of[i] == fiber_of[j])
        m[i * nx + j] = 1.0;
      else
        m[i * nx + j] = dY.at(fiber_of[i], fiber_of[j]);
    }
  ExtMetric dX(PointSet(ids), std::move(m));

  CoarseMapData data;
  data.X = dX.points();
  data.Y = dY.points();
  data.f = fiber_of;
  data.g.emplace(first);
  data.C = 1.0;
  data.claims_surjective = true;
  return {std::move(dX), std::move(dY), std::move(data)};
}

/// Gaussian-integer entry: products and sums stay exact in doubles.
inline std::complex<double> random_gaussian_int(Rng& rng) {
  return {static_cast<double>(rand_range(rng, 0, 8)) - 4.0,
          static_cast<double>(rand_range(rng, 0, 8)) - 4.0};
}

// ---------------------------------------------------------------------------
// Oracles

/// Exhaustive shortest-path oracle over all simple paths; independent of the
/// closure kernel. Only sane for small n.
inline double brute_geodesic(const std::vector<double>& lengths, std::size_t n, std::size_t from,
                             std::size_t to) {
  if (from == to) return 0.0;
  std::vector<char> used(n, 0);
  used[from] = 1;
  double best = kInf;
  // Depth-first over simple paths.
  auto dfs = [&](auto&& self, std::size_t at, double total) -> void {
    if (total >= best) return;
    if (at == to) {
      best = total;
      return;
    }
    for (std::size_t next = 0; next < n; ++next) {
      if (used[next] || next == at) continue;
      double step = lengths[at * n + next];
      if (step == kInf) continue;
      used[next] = 1;
      self(self, next, total + step);
      used[next] = 0;
    }
  };
  dfs(dfs, from, 0.0);
  return best;
}

/// Dense norm oracle through the eigensolver.
inline double dense_norm(const SparseOp& T) {
  return numeric::dense_operator_norm(T.to_dense(), T.size(), T.size());
}

inline SparseOp op_from_triples(
    const PointSet& points,
    const std::vector<std::tuple<std::string, std::string, std::complex<double>>>& triples) {
  std::vector<OpEntry> entries;
  for (const auto& [x, y, v] : triples)
    entries.push_back({points.index_of(x), points.index_of(y), v});
  return SparseOp(points, std::move(entries));
}

inline std::vector<std::size_t> indices_of(const PointSet& points,
                                           const std::vector<std::string>& ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(points.index_of(id));
  return out;
}

// ---------------------------------------------------------------------------
// Group fixtures for block representations

struct GroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table;
};

/// The symmetric group on {0..k-1}; element names are one-line images, e.g.
/// "102" for the transposition of 0 and 1. Composition is left-to-right
/// action composition: (g*h)(i) = g(h(i)).
inline GroupTable symmetric_group(std::size_t k) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> base(k);
  for (std::size_t i = 0; i < k; ++i) base[i] = i;
  std::vector<std::size_t> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  GroupTable group;
  for (const auto& perm : perms) {
    std::string name;
    for (std::size_t v : perm) name += std::to_string(v);
    group.names.push_back(name);
  }
  auto index_of = [&](const std::vector<std::size_t>& q) {
    return static_cast<std::size_t>(
        std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  group.table.assign(perms.size(), std::vector<std::size_t>(perms.size()));
  std::vector<std::size_t> composed(k);
  for (std::size_t g = 0; g < perms.size(); ++g)
    for (std::size_t h = 0; h < perms.size(); ++h) {
      for (std::size_t i = 0; i < k; ++i) composed[i] = perms[g][perms[h][i]];
      group.table[g][h] = index_of(composed);
    }
  return group;
}

/// Left-regular action: g sends position h to position g*h.
inline std::vector<std::vector<std::size_t>> regular_action(const GroupTable& group) {
  const std::size_t m = group.names.size();
  std::vector<std::vector<std::size_t>> perms(m, std::vector<std::size_t>(m));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h) perms[g][h] = group.table[g][h];
  return perms;
}

/// Action on left cosets of the subgroup spanned by the given elements:
/// g sends the coset of h to the coset of g*h.
inline std::vector<std::vector<std::size_t>> coset_action(const GroupTable& group,
                                                          const std::vector<std::size_t>& subgroup,
                                                          std::size_t* coset_count = nullptr) {
  const std::size_t m = group.names.size();
  std::vector<std::size_t> coset_of(m, m);
  std::size_t cosets = 0;
  for (std::size_t g = 0; g < m; ++g) {
    if (coset_of[g] != m) continue;
    for (std::size_t s : subgroup) coset_of[group.table[g][s]] = cosets;
    ++cosets;
  }
  std::vector<std::vector<std::size_t>> perms(m, std::vector<std::size_t>(cosets));
  for (std::size_t g = 0; g < m; ++g) {
    std::vector<char> seen(cosets, 0);
    for (std::size_t h = 0; h < m; ++h) {
      std::size_t from = coset_of[h];
      if (seen[from]) continue;
      seen[from] = 1;
      perms[g][from] = coset_of[group.table[g][h]];
    }
  }
  if (coset_count) *coset_count = cosets;
  return perms;
}

}  // namespace testhelpers
