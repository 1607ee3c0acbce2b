#include "roe/operators.hpp"

#include <algorithm>
#include <cmath>

namespace roe {

double propagation(const SparseOp& T, const ExtMetric& d) {
  if (!(T.points() == d.points())) throw std::invalid_argument("propagation: point sets differ");
  double prop = 0.0;
  for (const auto& e : T.entries()) prop = std::max(prop, d.at(e.row, e.col));
  return prop;
}

std::size_t band_sparsity(const SparseOp& T) {
  const std::size_t n = T.size();
  std::vector<std::size_t> rows(n, 0), cols(n, 0);
  std::size_t k = 0;
  for (const auto& e : T.entries()) {
    k = std::max(k, ++rows[e.row]);
    k = std::max(k, ++cols[e.col]);
  }
  return k;
}

ExtMetric support_metric(const SparseOp& T, const ExtMetric& base, double S, kernels::Exec exec) {
  if (!(T.points() == base.points()))
    throw std::invalid_argument("support_metric: point sets differ");
  double prop = propagation(T, base);
  if (prop > S)
    throw std::invalid_argument("support_metric: propagation " + format_scalar(prop) +
                                " exceeds the declared bound " + format_scalar(S));
  const std::size_t n = T.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : T.entries()) {
    if (e.row != e.col) {
      adj[e.row].push_back(e.col);
      adj[e.col].push_back(e.row);
    }
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return ExtMetric(base.points(), kernels::unit_distances(adj, exec));
}

CertifyResult certify_membership(const SparseOp& T, const ExtMetric& base, kernels::Exec exec) {
  if (!(T.points() == base.points()))
    throw std::invalid_argument("certify_membership: point sets differ");
  CertifyResult result;
  for (const auto& e : T.entries()) {
    if (base.at(e.row, e.col) == kInf) {
      result.infinite_pair = {e.row, e.col};
      return result;
    }
  }
  double S = propagation(T, base);
  ExtMetric d = support_metric(T, base, S, exec);
  auto membership = check_membership(base, d);
  // The support metric always certifies: integer gap 1 and hop bounds give
  // (D1) and (D2) whenever the propagation is finite.
  if (!membership.ok()) throw std::logic_error("support metric failed membership");
  result.cert = MembershipCert{band_sparsity(T), S, std::move(d), std::move(*membership.cert)};
  return result;
}

// ---------------------------------------------------------------------------
// Banded decomposition by regularized bipartite edge coloring.

namespace {

struct BipartiteEdge {
  std::size_t row, col;
  std::size_t entry;  // index into T.entries(), or npos for padding
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Kuhn's augmenting-path matching on the rows of a multigraph given by
// adjacency lists of edge indices. Deterministic: rows and their edge lists
// are scanned in ascending order.
class Matcher {
 public:
  Matcher(std::size_t n, const std::vector<BipartiteEdge>& edges,
          const std::vector<char>& alive)
      : n_(n), edges_(edges), alive_(alive), adj_(n) {
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
      if (alive[idx]) adj_[edges[idx].row].push_back(idx);
    }
  }

  // Returns, for each row, the matched edge index (npos if unmatched).
  std::vector<std::size_t> perfect_matching() {
    row_match_.assign(n_, npos);
    col_match_.assign(n_, npos);
    visited_.assign(n_, 0);
    tick_ = 0;
    for (std::size_t r = 0; r < n_; ++r) {
      if (adj_[r].empty()) continue;  // isolated row: degree 0 on both sides
      ++tick_;
      augment(r);
    }
    return row_match_;
  }

 private:
  bool augment(std::size_t r) {
    for (std::size_t idx : adj_[r]) {
      std::size_t c = edges_[idx].col;
      if (visited_[c] == tick_) continue;
      visited_[c] = tick_;
      if (col_match_[c] == npos || augment(edges_[col_match_[c]].row)) {
        row_match_[r] = idx;
        col_match_[c] = idx;
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  const std::vector<BipartiteEdge>& edges_;
  const std::vector<char>& alive_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> row_match_, col_match_;
  std::vector<std::size_t> visited_;
  std::size_t tick_ = 0;
};

}  // namespace

Decomposition decompose_banded(const SparseOp& T) {
  Decomposition dec;
  if (T.empty()) return dec;
  const std::size_t n = T.size();
  const std::size_t width = band_sparsity(T);

  std::vector<BipartiteEdge> edges;
  edges.reserve(T.entries().size());
  std::vector<std::size_t> row_deg(n, 0), col_deg(n, 0);
  for (std::size_t idx = 0; idx < T.entries().size(); ++idx) {
    const auto& e = T.entries()[idx];
    edges.push_back({e.row, e.col, idx});
    ++row_deg[e.row];
    ++col_deg[e.col];
  }

  // Pad with parallel dummy edges until every vertex has degree `width`.
  // Vertices already at full degree receive none, so each perfect matching
  // covers all maximum-degree vertices through real edges.
  std::size_t r = 0, c = 0;
  for (;;) {
    while (r < n && row_deg[r] == width) ++r;
    while (c < n && col_deg[c] == width) ++c;
    if (r == n || c == n) break;
    edges.push_back({r, c, npos});
    ++row_deg[r];
    ++col_deg[c];
  }

  std::vector<char> alive(edges.size(), 1);
  for (std::size_t round = 0; round < width; ++round) {
    Matcher matcher(n, edges, alive);
    auto matched = matcher.perfect_matching();
    DecompositionTerm term;
    for (std::size_t row = 0; row < n; ++row) {
      std::size_t idx = matched[row];
      if (idx == npos) continue;
      alive[idx] = 0;
      if (edges[idx].entry == npos) continue;  // padding carries no value
      const auto& e = T.entries()[edges[idx].entry];
      term.f.push_back({e.row, e.value});
      term.v.push_back({e.col, e.row});
    }
    std::sort(term.v.begin(), term.v.end());
    if (!term.f.empty()) dec.terms.push_back(std::move(term));
  }
  return dec;
}

SparseOp term_matrix(const PointSet& points, const DecompositionTerm& term) {
  std::vector<OpEntry> entries;
  entries.reserve(term.v.size());
  for (const auto& [col, row] : term.v) {
    auto it = std::lower_bound(term.f.begin(), term.f.end(), row,
                               [](const auto& p, std::size_t r) { return p.first < r; });
    if (it == term.f.end() || it->first != row)
      throw std::invalid_argument("decomposition term misses a diagonal value");
    entries.push_back({row, col, it->second});
  }
  return SparseOp(points, std::move(entries));
}

SparseOp decomposition_sum(const PointSet& points, const Decomposition& dec) {
  SparseOp acc(points);
  for (const auto& term : dec.terms) acc = acc + term_matrix(points, term);
  return acc;
}

// ---------------------------------------------------------------------------
// Operator norm

namespace {

double norm2(std::span<const std::complex<double>> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

}  // namespace

NormResult op_norm(const SparseOp& T, double tol, std::size_t max_iterations,
                   kernels::Exec exec) {
  if (!(tol > 0.0)) throw std::invalid_argument("op_norm: tolerance must be positive");
  NormResult result;
  if (T.empty()) return result;

  const std::size_t n = T.size();
  const std::size_t band = band_sparsity(T);
  if (band <= 1) {
    // Diagonal-times-partial-permutation: the singular values are the entry
    // magnitudes.
    double best = 0.0;
    for (const auto& e : T.entries()) best = std::max(best, std::abs(e.value));
    result.value = best;
    return result;
  }

  // Flatten T and T* once; the iteration applies both per step.
  std::vector<std::size_t> cols(T.entries().size());
  std::vector<std::complex<double>> vals(T.entries().size());
  for (std::size_t p = 0; p < T.entries().size(); ++p) {
    cols[p] = T.entries()[p].col;
    vals[p] = T.entries()[p].value;
  }
  SparseOp adj = T.adjoint();
  std::vector<std::size_t> acols(adj.entries().size());
  std::vector<std::complex<double>> avals(adj.entries().size());
  for (std::size_t p = 0; p < adj.entries().size(); ++p) {
    acols[p] = adj.entries()[p].col;
    avals[p] = adj.entries()[p].value;
  }

  std::vector<std::complex<double>> v(n, {1.0 / std::sqrt(static_cast<double>(n)), 0.0});
  std::vector<std::complex<double>> w(n), u(n);
  std::size_t restart = 0;
  double lambda = 0.0;
  bool have_prev = false;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    ++result.iterations;
    kernels::spmv(T.row_ptr(), cols, vals, v, w, exec);
    kernels::spmv(adj.row_ptr(), acols, avals, w, u, exec);
    double wn = norm2(w);
    double next = wn * wn;  // Rayleigh quotient of T*T at the unit vector v
    double un = norm2(u);
    if (un == 0.0) {
      // v lies in the kernel of T*T; restart from the next basis vector.
      if (restart >= n) break;
      std::fill(v.begin(), v.end(), std::complex<double>{0.0, 0.0});
      v[restart++] = {1.0, 0.0};
      have_prev = false;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / un;
    if (have_prev && std::abs(next - lambda) <= tol * std::max(1.0, next)) {
      lambda = next;
      result.value = std::sqrt(lambda);
      return result;
    }
    lambda = next;
    have_prev = true;
  }
  result.value = std::sqrt(lambda);
  result.converged = false;
  return result;
}

// ---------------------------------------------------------------------------
// Block representations

BlockRep::BlockRep(PointSet points, std::vector<std::string> elements,
                   std::vector<std::vector<std::size_t>> table, std::vector<Block> blocks)
    : points_(std::move(points)),
      elements_(std::move(elements)),
      table_(std::move(table)),
      blocks_(std::move(blocks)) {
  const std::size_t m = elements_.size();
  if (m == 0) throw std::invalid_argument("group has no elements");
  if (table_.size() != m) throw std::invalid_argument("multiplication table shape mismatch");
  for (const auto& row : table_) {
    if (row.size() != m) throw std::invalid_argument("multiplication table shape mismatch");
    for (std::size_t v : row)
      if (v >= m) throw std::invalid_argument("multiplication table entry out of range");
  }

  // Group axioms from the table: identity, associativity, inverses.
  std::size_t id = m;
  for (std::size_t e = 0; e < m; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < m; ++g) {
      if (table_[e][g] != g || table_[g][e] != g) {
        ok = false;
        break;
      }
    }
    if (ok) {
      id = e;
      break;
    }
  }
  if (id == m) throw std::invalid_argument("multiplication table has no identity");
  identity_ = id;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw std::invalid_argument("multiplication table is not associative");
  for (std::size_t a = 0; a < m; ++a) {
    bool has_inverse = false;
    for (std::size_t b = 0; b < m; ++b) {
      if (table_[a][b] == id && table_[b][a] == id) {
        has_inverse = true;
        break;
      }
    }
    if (!has_inverse) throw std::invalid_argument("group element without inverse");
  }

  // Blocks: disjoint point subsets with homomorphic permutation actions.
  std::vector<char> used(points_.size(), 0);
  for (const auto& blk : blocks_) {
    const std::size_t s = blk.block.size();
    for (std::size_t p : blk.block) {
      if (p >= points_.size()) throw std::invalid_argument("block point index out of range");
      if (used[p]) throw std::invalid_argument("blocks are not disjoint");
      used[p] = 1;
    }
    if (blk.perms.size() != m) throw std::invalid_argument("block action misses elements");
    for (const auto& perm : blk.perms) {
      if (perm.size() != s) throw std::invalid_argument("block permutation size mismatch");
      std::vector<char> seen(s, 0);
      for (std::size_t img : perm) {
        if (img >= s || seen[img]) throw std::invalid_argument("block action is not a permutation");
        seen[img] = 1;
      }
    }
    for (std::size_t g = 0; g < m; ++g) {
      for (std::size_t h = 0; h < m; ++h) {
        const auto& pg = blk.perms[g];
        const auto& ph = blk.perms[h];
        const auto& pgh = blk.perms[table_[g][h]];
        for (std::size_t i = 0; i < s; ++i) {
          if (pgh[i] != pg[ph[i]])
            throw std::invalid_argument("block action is not a homomorphism at (" +
                                        elements_[g] + "," + elements_[h] + ")");
        }
      }
    }
  }
}

std::size_t BlockRep::element_index(std::string_view name) const {
  for (std::size_t g = 0; g < elements_.size(); ++g)
    if (elements_[g] == name) return g;
  throw std::invalid_argument("unknown group element '" + std::string(name) + "'");
}

SparseOp block_embedding(const BlockRep& rep, std::size_t g) {
  if (g >= rep.elements().size()) throw std::invalid_argument("group element index out of range");
  const std::size_t n = rep.points().size();
  std::vector<char> in_block(n, 0);
  std::vector<OpEntry> entries;
  for (const auto& blk : rep.blocks()) {
    const auto& perm = blk.perms[g];
    for (std::size_t i = 0; i < blk.block.size(); ++i) {
      in_block[blk.block[i]] = 1;
      entries.push_back({blk.block[perm[i]], blk.block[i], {1.0, 0.0}});
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (!in_block[p]) entries.push_back({p, p, {1.0, 0.0}});
  }
  return SparseOp(rep.points(), std::move(entries));
}

SparseOp block_embedding(const BlockRep& rep, std::string_view g) {
  return block_embedding(rep, rep.element_index(g));
}

}  // namespace roe
