#include "roe/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <queue>

#include "roe/scalar.hpp"

namespace roe::kernels {

namespace {

Exec g_default =
#ifdef _OPENMP
    Exec::parallel;
#else
    Exec::serial;
#endif

}  // namespace

Exec default_exec() noexcept { return g_default; }
void set_default_exec(Exec e) noexcept { g_default = e; }

bool openmp_compiled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

// ---------------------------------------------------------------------------
// Floyd--Warshall closure

namespace {

inline void closure_relax_row(double* row, const double* rowk, double dik, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double cand = dik + rowk[j];
    if (cand < row[j]) row[j] = cand;
  }
}

}  // namespace

void geodesic_closure_serial(std::vector<double>& dist, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double* rowk = dist.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      double dik = dist[i * n + k];
      if (dik == kInf || i == k) continue;
      closure_relax_row(dist.data() + i * n, rowk, dik, n);
    }
  }
}

void geodesic_closure_parallel(std::vector<double>& dist, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double* rowk = dist.data() + k * n;
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      double dik = dist[i * n + k];
      if (dik == kInf || i == k) continue;
      closure_relax_row(dist.data() + i * n, rowk, dik, n);
    }
  }
}

void geodesic_closure(std::vector<double>& dist, std::size_t n, Exec exec) {
  if (exec == Exec::parallel)
    geodesic_closure_parallel(dist, n);
  else
    geodesic_closure_serial(dist, n);
}

// ---------------------------------------------------------------------------
// Unit-length all-pairs distances

namespace {

void bfs_row(const std::vector<std::vector<std::size_t>>& adj, std::size_t src, double* row,
             std::vector<std::size_t>& queue) {
  const std::size_t n = adj.size();
  std::fill(row, row + n, kInf);
  row[src] = 0.0;
  queue.clear();
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t u = queue[head];
    double du = row[u];
    for (std::size_t v : adj[u]) {
      if (row[v] == kInf) {
        row[v] = du + 1.0;
        queue.push_back(v);
      }
    }
  }
}

}  // namespace

std::vector<double> unit_distances_serial(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<double> dist(n * n, kInf);
  std::vector<std::size_t> queue;
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) bfs_row(adj, s, dist.data() + s * n, queue);
  return dist;
}

std::vector<double> unit_distances_parallel(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<double> dist(n * n, kInf);
#pragma omp parallel
  {
    std::vector<std::size_t> queue;
    queue.reserve(n);
#pragma omp for schedule(static)
    for (std::size_t s = 0; s < n; ++s) bfs_row(adj, s, dist.data() + s * n, queue);
  }
  return dist;
}

std::vector<double> unit_distances(const std::vector<std::vector<std::size_t>>& adj, Exec exec) {
  return exec == Exec::parallel ? unit_distances_parallel(adj) : unit_distances_serial(adj);
}

// ---------------------------------------------------------------------------
// Ball counts

namespace {

// Counts for one row against all thresholds; counts[t] is monotone in t.
void row_counts(const double* row, std::size_t n, std::span<const double> thresholds,
                std::vector<double>& scratch, std::vector<std::size_t>& counts) {
  scratch.assign(row, row + n);
  std::sort(scratch.begin(), scratch.end());
  std::size_t p = 0;
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    while (p < n && scratch[p] <= thresholds[t]) ++p;
    counts[t] = std::max(counts[t], p);
  }
}

}  // namespace

std::vector<std::size_t> max_ball_counts_serial(const std::vector<double>& dist, std::size_t n,
                                                std::span<const double> thresholds) {
  std::vector<std::size_t> counts(thresholds.size(), 0);
  std::vector<double> scratch;
  for (std::size_t i = 0; i < n; ++i) row_counts(dist.data() + i * n, n, thresholds, scratch, counts);
  return counts;
}

std::vector<std::size_t> max_ball_counts_parallel(const std::vector<double>& dist, std::size_t n,
                                                  std::span<const double> thresholds) {
  std::vector<std::size_t> counts(thresholds.size(), 0);
#pragma omp parallel
  {
    std::vector<std::size_t> local(thresholds.size(), 0);
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) row_counts(dist.data() + i * n, n, thresholds, scratch, local);
#pragma omp critical(roe_ball_counts)
    for (std::size_t t = 0; t < counts.size(); ++t) counts[t] = std::max(counts[t], local[t]);
  }
  return counts;
}

std::vector<std::size_t> max_ball_counts(const std::vector<double>& dist, std::size_t n,
                                         std::span<const double> thresholds, Exec exec) {
  return exec == Exec::parallel ? max_ball_counts_parallel(dist, n, thresholds)
                                : max_ball_counts_serial(dist, n, thresholds);
}

// ---------------------------------------------------------------------------
// Triangle scan

namespace {

// Violations with first index i, capped. dist(x,y) > dist(x,via) + dist(via,y)
// with inf absorbing on the right-hand side.
void triangle_bucket(const std::vector<double>& dist, std::size_t n, std::size_t i,
                     std::size_t cap, std::vector<TriangleWitness>& out, bool& overflowed) {
  const double* rowi = dist.data() + i * n;
  for (std::size_t j = i + 1; j < n; ++j) {
    double dij = rowi[j];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      if (dij > rowi[k] + dist[k * n + j]) {
        if (out.size() >= cap) {
          overflowed = true;
          return;
        }
        out.push_back({i, j, k});
      }
    }
  }
}

}  // namespace

TriangleScan triangle_violations_serial(const std::vector<double>& dist, std::size_t n,
                                        std::size_t max_witnesses) {
  TriangleScan scan;
  for (std::size_t i = 0; i < n; ++i) {
    bool over = false;
    triangle_bucket(dist, n, i, max_witnesses, scan.witnesses, over);
    if (over) {
      scan.truncated = true;
      break;
    }
  }
  return scan;
}

TriangleScan triangle_violations_parallel(const std::vector<double>& dist, std::size_t n,
                                          std::size_t max_witnesses) {
  std::vector<std::vector<TriangleWitness>> buckets(n);
  std::vector<char> overflow(n, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    bool over = false;
    triangle_bucket(dist, n, i, max_witnesses, buckets[i], over);
    overflow[i] = over ? 1 : 0;
  }
  TriangleScan scan;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& w : buckets[i]) {
      if (scan.witnesses.size() >= max_witnesses) {
        scan.truncated = true;
        return scan;
      }
      scan.witnesses.push_back(w);
    }
    if (overflow[i]) scan.truncated = true;
  }
  return scan;
}

TriangleScan triangle_violations(const std::vector<double>& dist, std::size_t n,
                                 std::size_t max_witnesses, Exec exec) {
  return exec == Exec::parallel ? triangle_violations_parallel(dist, n, max_witnesses)
                                : triangle_violations_serial(dist, n, max_witnesses);
}

// ---------------------------------------------------------------------------
// Gram matrix

namespace {

double sparse_dot(const SparseVec& a, const SparseVec& b) {
  double acc = 0.0;
  std::size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p].first < b[q].first)
      ++p;
    else if (b[q].first < a[p].first)
      ++q;
    else {
      acc += a[p].second * b[q].second;
      ++p;
      ++q;
    }
  }
  return acc;
}

void gram_row(const std::vector<SparseVec>& vecs, std::size_t n, std::size_t x, double* k) {
  for (std::size_t y = x; y < n; ++y) k[x * n + y] = sparse_dot(vecs[x], vecs[y]);
}

void gram_mirror(std::vector<double>& k, std::size_t n) {
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < x; ++y) k[x * n + y] = k[y * n + x];
}

}  // namespace

std::vector<double> gram_matrix_serial(const std::vector<SparseVec>& vecs, std::size_t n) {
  std::vector<double> k(n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x) gram_row(vecs, n, x, k.data());
  gram_mirror(k, n);
  return k;
}

std::vector<double> gram_matrix_parallel(const std::vector<SparseVec>& vecs, std::size_t n) {
  std::vector<double> k(n * n, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t x = 0; x < n; ++x) gram_row(vecs, n, x, k.data());
  gram_mirror(k, n);
  return k;
}

std::vector<double> gram_matrix(const std::vector<SparseVec>& vecs, std::size_t n, Exec exec) {
  return exec == Exec::parallel ? gram_matrix_parallel(vecs, n) : gram_matrix_serial(vecs, n);
}

// ---------------------------------------------------------------------------
// Sparse matrix-vector product

namespace {

inline std::complex<double> spmv_row(std::size_t lo, std::size_t hi,
                                     std::span<const std::size_t> cols,
                                     std::span<const std::complex<double>> vals,
                                     std::span<const std::complex<double>> x) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t p = lo; p < hi; ++p) acc += vals[p] * x[cols[p]];
  return acc;
}

}  // namespace

void spmv_serial(std::span<const std::size_t> row_ptr, std::span<const std::size_t> cols,
                 std::span<const std::complex<double>> vals,
                 std::span<const std::complex<double>> x, std::span<std::complex<double>> y) {
  const std::size_t n = row_ptr.size() - 1;
  for (std::size_t i = 0; i < n; ++i) y[i] = spmv_row(row_ptr[i], row_ptr[i + 1], cols, vals, x);
}

void spmv_parallel(std::span<const std::size_t> row_ptr, std::span<const std::size_t> cols,
                   std::span<const std::complex<double>> vals,
                   std::span<const std::complex<double>> x, std::span<std::complex<double>> y) {
  const std::size_t n = row_ptr.size() - 1;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) y[i] = spmv_row(row_ptr[i], row_ptr[i + 1], cols, vals, x);
}

void spmv(std::span<const std::size_t> row_ptr, std::span<const std::size_t> cols,
          std::span<const std::complex<double>> vals, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y, Exec exec) {
  if (exec == Exec::parallel)
    spmv_parallel(row_ptr, cols, vals, x, y);
  else
    spmv_serial(row_ptr, cols, vals, x, y);
}

}  // namespace roe::kernels
