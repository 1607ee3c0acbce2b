#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace roe;
using namespace testhelpers;
using kernels::Exec;

// The OpenMP kernels must reproduce the serial reference bitwise: every
// parallel loop writes disjoint rows and keeps per-row arithmetic in the
// serial order.

TEST_CASE("geodesic_closure: serial and parallel agree bitwise") {
  Rng rng(13001);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = rand_range(rng, 1, 48);
    std::vector<double> m(n * n, kInf);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rand_chance(rng, 0.5)) continue;
        double w = 0.25 * static_cast<double>(rand_range(rng, 1, 64));
        m[i * n + j] = m[j * n + i] = w;
      }
    auto serial = m, parallel = m;
    kernels::geodesic_closure_serial(serial, n);
    kernels::geodesic_closure_parallel(parallel, n);
    CHECK(serial == parallel);
    // Closure is idempotent.
    auto again = serial;
    kernels::geodesic_closure_serial(again, n);
    CHECK(again == serial);
  }
}

TEST_CASE("unit_distances: serial and parallel agree") {
  Rng rng(13002);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = rand_range(rng, 1, 60);
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rand_chance(rng, 0.1)) {
          adj[i].push_back(j);
          adj[j].push_back(i);
        }
      }
    CHECK(kernels::unit_distances_serial(adj) == kernels::unit_distances_parallel(adj));
  }
}

TEST_CASE("max_ball_counts: serial and parallel agree and match brute force") {
  Rng rng(13003);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = rand_range(rng, 1, 32);
    auto d = random_metric(rng, n, rand_range(rng, 1, 3));
    std::vector<double> thresholds;
    for (double t = 0.0; t <= 12.0; t += 1.0) thresholds.push_back(t);
    auto serial = kernels::max_ball_counts_serial(d.matrix(), n, thresholds);
    auto parallel = kernels::max_ball_counts_parallel(d.matrix(), n, thresholds);
    CHECK(serial == parallel);
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      std::size_t brute = 0;
      for (std::size_t x = 0; x < n; ++x) brute = std::max(brute, ball_size(d, x, thresholds[t]));
      CHECK(serial[t] == brute);
    }
  }
}

TEST_CASE("triangle_violations: serial and parallel agree including truncation") {
  Rng rng(13004);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = rand_range(rng, 3, 24);
    std::vector<double> m(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.0;
    // Plant violations by inflating a few pairs.
    for (int k = 0; k < 6; ++k) {
      std::size_t i = rand_below(rng, n), j = rand_below(rng, n);
      if (i == j) continue;
      m[i * n + j] = m[j * n + i] = 10.0 + static_cast<double>(k);
    }
    for (std::size_t cap : {std::size_t{3}, std::size_t{1000}}) {
      auto serial = kernels::triangle_violations_serial(m, n, cap);
      auto parallel = kernels::triangle_violations_parallel(m, n, cap);
      CHECK(serial.witnesses == parallel.witnesses);
      CHECK(serial.truncated == parallel.truncated);
      CHECK(serial.witnesses.size() <= cap);
    }
  }
}

TEST_CASE("gram_matrix: serial and parallel agree bitwise") {
  Rng rng(13005);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = rand_range(rng, 1, 40);
    auto d = clique_metric(n);
    auto fam = random_hr_family(rng, d, 1.0);
    CHECK(kernels::gram_matrix_serial(fam.all(), n) == kernels::gram_matrix_parallel(fam.all(), n));
  }
}

TEST_CASE("spmv: serial and parallel agree bitwise") {
  Rng rng(13006);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = rand_range(rng, 1, 64);
    auto d = clique_metric(n);
    auto T = random_banded_op(rng, d, rand_range(rng, 1, 5), 1.0);
    std::vector<std::complex<double>> x(n), y1(n), y2(n);
    for (auto& z : x) z = {rand_unit(rng) - 0.5, rand_unit(rng) - 0.5};
    std::vector<std::size_t> cols;
    std::vector<std::complex<double>> vals;
    for (const auto& e : T.entries()) {
      cols.push_back(e.col);
      vals.push_back(e.value);
    }
    kernels::spmv_serial(T.row_ptr(), cols, vals, x, y1);
    kernels::spmv_parallel(T.row_ptr(), cols, vals, x, y2);
    CHECK(y1 == y2);
  }
}

TEST_CASE("default_exec dispatch honors the override") {
  auto before = kernels::default_exec();
  kernels::set_default_exec(Exec::serial);
  CHECK(kernels::default_exec() == Exec::serial);
  kernels::set_default_exec(before);
}
