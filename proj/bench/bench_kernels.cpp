// Timing harness comparing the serial reference kernels against the OpenMP
// versions. Usage: bench_kernels [n] [repeats]; defaults n=512, repeats=3.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "roe/kernels.hpp"
#include "roe/scalar.hpp"

using namespace roe;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Fn>
double best_of(int repeats, Fn&& fn) {
  double best = 1e100;
  for (int r = 0; r < repeats; ++r) {
    auto start = Clock::now();
    fn();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-18s serial %8.4fs   parallel %8.4fs   speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 512;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("n = %zu, repeats = %d, openmp %s\n", n, repeats,
              kernels::openmp_compiled() ? "on" : "off");

  std::mt19937_64 rng(42);
  auto coin = [&rng](double p) { return (rng() >> 11) * 0x1.0p-53 < p; };

  // Sparse random symmetric distance matrix.
  std::vector<double> dist(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(0.02)) dist[i * n + j] = dist[j * n + i] = 1.0 + double(rng() % 16);

  {
    auto a = dist, b = dist;
    double s = best_of(repeats, [&] {
      a = dist;
      kernels::geodesic_closure_serial(a, n);
    });
    double p = best_of(repeats, [&] {
      b = dist;
      kernels::geodesic_closure_parallel(b, n);
    });
    if (a != b) std::printf("MISMATCH in geodesic_closure\n");
    report("geodesic_closure", s, p);
    dist = a;  // closed matrix for the ball-count pass
  }

  {
    std::vector<double> thresholds;
    for (double t = 0.0; t <= 64.0; t += 0.5) thresholds.push_back(t);
    std::vector<std::size_t> a, b;
    double s = best_of(repeats, [&] { a = kernels::max_ball_counts_serial(dist, n, thresholds); });
    double p = best_of(repeats, [&] { b = kernels::max_ball_counts_parallel(dist, n, thresholds); });
    if (a != b) std::printf("MISMATCH in max_ball_counts\n");
    report("max_ball_counts", s, p);
  }

  {
    kernels::TriangleScan a, b;
    double s = best_of(repeats, [&] { a = kernels::triangle_violations_serial(dist, n, 1000); });
    double p = best_of(repeats, [&] { b = kernels::triangle_violations_parallel(dist, n, 1000); });
    if (!(a.witnesses == b.witnesses)) std::printf("MISMATCH in triangle_violations\n");
    report("triangle_scan", s, p);
  }

  {
    std::vector<kernels::SparseVec> vecs(n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t z = x < 8 ? 0 : x - 8; z < std::min(n, x + 8); ++z)
        vecs[x].push_back({z, 0.25});
    }
    std::vector<double> a, b;
    double s = best_of(repeats, [&] { a = kernels::gram_matrix_serial(vecs, n); });
    double p = best_of(repeats, [&] { b = kernels::gram_matrix_parallel(vecs, n); });
    if (a != b) std::printf("MISMATCH in gram_matrix\n");
    report("gram_matrix", s, p);
  }

  {
    // Banded complex matrix in CSR, applied many times.
    std::vector<std::size_t> row_ptr(n + 1, 0), cols;
    std::vector<std::complex<double>> vals;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i < 4 ? 0 : i - 4; j < std::min(n, i + 4); ++j) {
        cols.push_back(j);
        vals.push_back({1.0 / double(1 + i + j), 0.5});
      }
      row_ptr[i + 1] = cols.size();
    }
    std::vector<std::complex<double>> x(n, {1.0, 0.0}), y1(n), y2(n);
    const int sweeps = 2000;
    double s = best_of(repeats, [&] {
      for (int t = 0; t < sweeps; ++t) kernels::spmv_serial(row_ptr, cols, vals, x, y1);
    });
    double p = best_of(repeats, [&] {
      for (int t = 0; t < sweeps; ++t) kernels::spmv_parallel(row_ptr, cols, vals, x, y2);
    });
    if (y1 != y2) std::printf("MISMATCH in spmv\n");
    report("spmv x2000", s, p);
  }

  return 0;
}
