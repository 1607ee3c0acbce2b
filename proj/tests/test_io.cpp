#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace roe;
using namespace testhelpers;

TEST_CASE("emx: parse, defaults, canonical round trip") {
  std::string text =
      "# comment\n"
      "points: a b c\n"
      "b a 1\n";
  auto file = io::parse_emx(text);
  auto result = validate_metric(file.points, file.table);
  REQUIRE(result.ok());
  const auto& d = *result.metric;
  CHECK(d.at_ids("a", "b") == 1.0);
  CHECK(d.at_ids("a", "c") == kInf);  // unlisted pairs default to inf
  CHECK(d.at_ids("b", "c") == kInf);

  // Canonical form: pairs once, ascending, inf omitted, comments dropped.
  std::string canonical = io::write_emx(d);
  CHECK(canonical == "points: a b c\na b 1\n");
  auto reparsed = validate_metric(io::parse_emx(canonical).points, io::parse_emx(canonical).table);
  REQUIRE(reparsed.ok());
  CHECK(io::write_emx(*reparsed.metric) == canonical);
}

TEST_CASE("emx: inf token and parse errors") {
  auto file = io::parse_emx("points: a b\na b inf\n");
  auto result = validate_metric(file.points, file.table);
  REQUIRE(result.ok());
  CHECK(result.metric->at_ids("a", "b") == kInf);

  CHECK_THROWS_AS(io::parse_emx("a b 1\n"), io::ParseError);             // missing header
  CHECK_THROWS_AS(io::parse_emx("points: a b\na b\n"), io::ParseError);  // short line
  CHECK_THROWS_AS(io::parse_emx("points: a b\na zz 1\n"), io::ParseError);
  CHECK_THROWS_AS(io::parse_emx("points: a b\na b x7\n"), io::ParseError);
  CHECK_THROWS_AS(io::parse_emx("points: a a\n"), io::ParseError);       // duplicate id
}

TEST_CASE("smx: complex entries, optional imaginary part, canonical order") {
  std::string text =
      "points: a b\n"
      "b a 3 -1\n"
      "a b 2\n";
  auto op = io::parse_smx(text);
  CHECK(op.at(0, 1) == std::complex<double>{2.0, 0.0});
  CHECK(op.at(1, 0) == std::complex<double>{3.0, -1.0});
  CHECK(io::write_smx(op) == "points: a b\na b 2 0\nb a 3 -1\n");

  // Duplicate triplets accumulate; zeros vanish.
  auto summed = io::parse_smx("points: a\na a 1\na a -1\n");
  CHECK(summed.empty());

  CHECK_THROWS_AS(io::parse_smx("points: a\na a inf\n"), io::ParseError);
  CHECK_THROWS_AS(io::parse_smx("points: a\na a 1 2 3\n"), io::ParseError);
}

TEST_CASE("hrf: x-major canonical order") {
  auto line = line_metric(3);
  auto fam = uniform_hr_family(line);
  std::string text = io::write_hrf(fam);
  auto reparsed = io::parse_hrf(text);
  for (std::size_t x = 0; x < 3; ++x) CHECK(reparsed.vec(x) == fam.vec(x));
  CHECK(io::write_hrf(reparsed) == text);

  CHECK_THROWS_AS(io::parse_hrf("points: a\na a 1\na a 0.5\n"), io::ParseError);
}

TEST_CASE("map: sections, closeness line, canonical round trip") {
  std::string text =
      "a -> u\n"
      "b -> u\n"
      "g:\n"
      "u -> a\n"
      "C: 1\n";
  auto file = io::parse_map(text);
  REQUIRE(file.f.size() == 2);
  REQUIRE(file.g.has_value());
  CHECK(*file.C == 1.0);

  PointSet X({"a", "b"}), Y({"u"});
  auto data = io::bind_map(file, X, Y);
  CHECK(data.f == std::vector<std::size_t>{0, 0});
  CHECK(io::write_map(data) == text);

  CHECK_THROWS_AS(io::parse_map("a > u\n"), io::ParseError);
  CHECK_THROWS_AS(io::parse_map("C: 1\nC: 2\n"), io::ParseError);
  auto missing = io::parse_map("a -> u\n");
  CHECK_THROWS_AS(io::bind_map(missing, X, Y), std::invalid_argument);
}

TEST_CASE("grp: block representation descriptor round trip") {
  auto group = symmetric_group(2);
  PointSet points({"p", "q", "r"});
  BlockRep rep(points, group.names, group.table,
               {BlockRep::Block{{0, 1}, regular_action(group)}});
  std::string text = io::write_grp(rep);
  auto reparsed = io::parse_grp(text);
  CHECK(reparsed.elements() == rep.elements());
  CHECK(reparsed.table() == rep.table());
  CHECK(io::write_grp(reparsed) == text);

  CHECK_THROWS_AS(io::parse_grp("{"), io::ParseError);
  CHECK_THROWS_AS(io::parse_grp("{\"points\": []}"), io::ParseError);
}

TEST_CASE("round trips are byte-stable on random fixtures") {
  Rng rng(12001);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = rand_range(rng, 1, 20);
    auto d = random_metric(rng, n, rand_range(rng, 1, 3));
    std::string text = io::write_emx(d);
    auto file = io::parse_emx(text);
    auto parsed = validate_metric(file.points, file.table);
    REQUIRE(parsed.ok());
    CHECK(*parsed.metric == d);
    CHECK(io::write_emx(*parsed.metric) == text);

    auto T = random_banded_op(rng, d, rand_range(rng, 1, 4), kInf);
    std::string smx = io::write_smx(T);
    CHECK(io::parse_smx(smx) == T);
    CHECK(io::write_smx(io::parse_smx(smx)) == smx);

    auto fam = random_hr_family(rng, d, 3.0);
    std::string hrf = io::write_hrf(fam);
    auto fam2 = io::parse_hrf(hrf);
    CHECK(io::write_hrf(fam2) == hrf);
  }
}

TEST_CASE("scalar formatting is shortest round-trip decimal") {
  CHECK(format_scalar(1.0) == "1");
  CHECK(format_scalar(2.5) == "2.5");
  CHECK(format_scalar(kInf) == "inf");
  CHECK(format_scalar(1.0 / 3.0) == "0.3333333333333333");
  double v;
  REQUIRE(parse_scalar(format_scalar(1.0 / 3.0), v));
  CHECK(v == 1.0 / 3.0);
  CHECK(!parse_scalar("nan", v));
  CHECK(!parse_scalar("1x", v));
  CHECK(!parse_scalar("", v));
}
