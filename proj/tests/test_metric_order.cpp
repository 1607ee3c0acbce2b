#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace roe;
using namespace testhelpers;

TEST_CASE("check_membership: self-domination gives C = 1") {
  auto d = clique_metric(4, 2.0);
  auto result = check_membership(d, d);
  REQUIRE(result.ok());
  CHECK(result.cert->C == 1.0);
  CHECK(result.cert->gap == 2.0);
}

TEST_CASE("check_membership: max-ratio constant over finite pairs") {
  // Base clique at 1; candidate keeps only one finite pair at 3. The max of
  // d0/d over finite-base pairs is 1/3 (inf candidate entries contribute 0).
  auto base = clique_metric(3);
  auto d = metric_from_triples({"0", "1", "2"}, {{"0", "1", 3.0}});
  auto result = check_membership(base, d);
  REQUIRE(result.ok());
  CHECK(result.cert->C == 1.0 / 3.0);
}

TEST_CASE("check_membership: finite distance over an inf base pair violates (D2)") {
  auto base = metric_from_triples({"a", "b", "c"}, {{"b", "c", 1.0}});
  auto d = metric_from_triples({"a", "b", "c"}, {{"a", "b", 7.0}, {"b", "c", 1.0}});
  auto result = check_membership(base, d);
  REQUIRE(!result.ok());
  REQUIRE(result.violations.size() == 1);
  CHECK(result.violations[0].kind == MembershipViolationKind::finite_on_infinite_base);
  CHECK(result.violations[0].x == "a");
  CHECK(result.violations[0].y == "b");
}

TEST_CASE("check_membership: gap below one is a (D1) violation") {
  auto base = clique_metric(3);
  auto d = clique_metric(3, 0.5);
  auto result = check_membership(base, d);
  REQUIRE(!result.ok());
  CHECK(result.violations[0].kind == MembershipViolationKind::gap_below_one);
}

TEST_CASE("precedes: reflexive; restriction metrics nest") {
  auto line = line_metric(4);
  CHECK(precedes(line, line));

  // Larger subsets give pointwise smaller (finer) restriction metrics.
  auto small = restriction_metric(line, {"0", "1"});
  auto large = restriction_metric(line, {"0", "1", "2"});
  CHECK(precedes(small, large));
  CHECK(!precedes(large, small));
}

TEST_CASE("precedes: incomparable pair is rejected both ways") {
  auto d1 = metric_from_triples({"a", "b", "c"}, {{"a", "b", 1.0}, {"b", "c", 9.0}, {"a", "c", 9.0}});
  auto d2 = metric_from_triples({"a", "b", "c"}, {{"a", "b", 2.0}, {"b", "c", 3.0}, {"a", "c", 4.0}});
  // Pointwise comparison oracle: d2(a,b) > d1(a,b) but d2(b,c) < d1(b,c).
  CHECK(!precedes(d1, d2));
  CHECK(!precedes(d2, d1));
}

TEST_CASE("precedes is a partial order on random dominating metrics") {
  Rng rng(8001);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = rand_range(rng, 2, 16);
    auto base = random_metric(rng, n, rand_range(rng, 1, 3));
    auto a = random_dominating_metric(rng, base);
    auto b = random_dominating_metric(rng, base);
    auto c = random_dominating_metric(rng, base);
    CHECK(precedes(a, a));
    // Antisymmetry: mutual precedence forces equality.
    if (precedes(a, b) && precedes(b, a)) CHECK(a == b);
    // Transitivity.
    if (precedes(a, b) && precedes(b, c)) CHECK(precedes(a, c));
  }
}

TEST_CASE("join_metric: idempotent on a single metric") {
  auto base = clique_metric(5);
  Rng rng(8002);
  auto d = random_dominating_metric(rng, base);
  auto join = join_metric(base, d, d);
  CHECK(join == d);
}

TEST_CASE("join_metric: frozen three-point example") {
  // Floyd-Warshall oracle on edge lengths min(d1,d2) = {ab:1, bc:1, ac:5}:
  // ac improves through b to 2.
  auto base = clique_metric(3);
  auto d1 = metric_from_triples({"0", "1", "2"}, {{"0", "1", 1.0}, {"1", "2", 5.0}, {"0", "2", 5.0}});
  auto d2 = metric_from_triples({"0", "1", "2"}, {{"0", "1", 5.0}, {"1", "2", 1.0}, {"0", "2", 5.0}});
  auto join = join_metric(base, d1, d2);
  CHECK(join.at_ids("0", "1") == 1.0);
  CHECK(join.at_ids("1", "2") == 1.0);
  CHECK(join.at_ids("0", "2") == 2.0);
}

TEST_CASE("join_metric: everywhere-inf inputs give the inf join") {
  auto base = ExtMetric::constant(numbered_points(3), kInf);
  auto d = ExtMetric::constant(numbered_points(3), kInf);
  auto join = join_metric(base, d, d);
  CHECK(join.at(0, 1) == kInf);
  CHECK(join.at(0, 2) == kInf);
}

TEST_CASE("join_metric propagates membership failures") {
  auto base = clique_metric(3);
  auto bad = clique_metric(3, 0.25);
  auto good = clique_metric(3, 2.0);
  CHECK_THROWS_AS(join_metric(base, bad, good), MembershipError);
  try {
    join_metric(base, good, bad);
    FAIL("expected MembershipError");
  } catch (const MembershipError& e) {
    CHECK(e.input_index == 2);
    CHECK(!e.violations.empty());
  }
}

TEST_CASE("join_metric matches the exhaustive path oracle on small spaces") {
  Rng rng(8003);
  for (int rep = 0; rep < 25; ++rep) {
    std::size_t n = rand_range(rng, 2, 6);
    auto base = random_metric(rng, n, rand_range(rng, 1, 2));
    auto d1 = random_dominating_metric(rng, base);
    auto d2 = random_dominating_metric(rng, base);
    auto join = join_metric(base, d1, d2);
    std::vector<double> lengths(n * n);
    for (std::size_t p = 0; p < lengths.size(); ++p)
      lengths[p] = std::min(d1.matrix()[p], d2.matrix()[p]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(join.at(i, j) == brute_geodesic(lengths, n, i, j));
  }
}

TEST_CASE("join_metric invariants: order, domination, growth bound") {
  Rng rng(8004);
  for (int rep = 0; rep < 30; ++rep) {
    std::size_t n = rand_range(rng, 2, 20);
    auto base = random_metric(rng, n, rand_range(rng, 1, 3));
    auto d1 = random_dominating_metric(rng, base);
    auto d2 = random_dominating_metric(rng, base);
    auto join = join_metric(base, d1, d2);
    auto m1 = check_membership(base, d1);
    auto m2 = check_membership(base, d2);
    auto mj = check_membership(base, join);
    REQUIRE(m1.ok());
    REQUIRE(m2.ok());
    REQUIRE(mj.ok());

    CHECK(precedes(d1, join));
    CHECK(precedes(d2, join));
    for (std::size_t p = 0; p < join.matrix().size(); ++p)
      CHECK(join.matrix()[p] <= std::min(d1.matrix()[p], d2.matrix()[p]));

    double cmax = std::max(m1.cert->C, m2.cert->C);
    CHECK(mj.cert->C <= cmax + 1e-12);

    for (int R = 1; R <= 4; ++R) {
      std::size_t M = 0;
      for (std::size_t x = 0; x < n; ++x) {
        M = std::max(M, ball_size(d1, x, R + 1.0));
        M = std::max(M, ball_size(d2, x, R + 1.0));
      }
      double bound = std::pow(2.0 * static_cast<double>(M), R + 1.0);
      for (std::size_t x = 0; x < n; ++x)
        CHECK(static_cast<double>(ball_size(join, x, R)) <= bound);
    }
  }
}

TEST_CASE("restriction_metric: full, empty, and partial subsets") {
  auto line = line_metric(4);
  auto full = restriction_metric(line, {"0", "1", "2", "3"});
  CHECK(full == line);

  auto empty = restriction_metric(line, std::vector<std::string>{});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(empty.at(i, j) == kInf);

  // Pointwise application of the definition: d0 inside Y, inf anywhere else.
  auto part = restriction_metric(line, {"0", "1"});
  CHECK(part.at_ids("0", "1") == 1.0);
  CHECK(part.at_ids("0", "2") == kInf);
  CHECK(part.at_ids("2", "3") == kInf);

  CHECK_THROWS_AS(restriction_metric(line, {"zz"}), std::invalid_argument);
}

TEST_CASE("restriction_metric passes membership with C = 1 when the base has unit gap") {
  Rng rng(8005);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = rand_range(rng, 1, 14);
    auto base = random_metric(rng, n, rand_range(rng, 1, 3));
    std::vector<std::size_t> subset;
    for (std::size_t x = 0; x < n; ++x)
      if (rand_chance(rng, 0.6)) subset.push_back(x);
    auto restricted = restriction_metric(base, subset);
    auto result = check_membership(base, restricted);
    REQUIRE(result.ok());
    CHECK(result.cert->C == 1.0);
  }
}

TEST_CASE("epair_precedes: reflexivity, subset test, nested restrictions") {
  auto line = line_metric(4);
  EPair p{{0, 1}, restriction_metric(line, std::vector<std::size_t>{0, 1})};
  EPair q{{0, 1, 2}, restriction_metric(line, std::vector<std::size_t>{0, 1, 2})};
  CHECK(epair_precedes(p, p));
  CHECK(epair_precedes(p, q));
  CHECK(!epair_precedes(q, p));  // subset containment fails regardless of the metrics

  EPair r{{0, 3}, restriction_metric(line, std::vector<std::size_t>{0, 3})};
  CHECK(!epair_precedes(r, q));
}

TEST_CASE("epair_check reports membership and the subset profile") {
  auto line = line_metric(5);
  EPair p{{0, 1, 2}, restriction_metric(line, std::vector<std::size_t>{0, 1, 2})};
  auto report = epair_check(line, p);
  CHECK(report.ok());
  CHECK(report.subset_profile.count_at(2.0) == 3);

  EPair bad{{0, 1}, clique_metric(5, 0.5)};
  CHECK(!epair_check(line, bad).ok());
}
