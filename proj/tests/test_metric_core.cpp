#include <catch_amalgamated.hpp>

#include <vector>

#include "mlines/instances.hpp"
#include "mlines/metric_core.hpp"
#include "support/oracles.hpp"

using namespace mlines;

namespace {

RationalMatrix rationals(const std::vector<std::vector<std::int64_t>>& d) {
  RationalMatrix out;
  for (const auto& row : d) {
    out.emplace_back();
    for (auto v : row) out.back().push_back(Rational{v, 1});
  }
  return out;
}

ErrorKind kind_of(const std::vector<std::vector<std::int64_t>>& d) {
  try {
    validate_metric(d);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("rational parsing normalizes") {
  CHECK(Rational::parse("3") == Rational{3, 1});
  CHECK(Rational::parse(" 6/4 ") == Rational{3, 2});
  CHECK(Rational::parse("-2/-4") == Rational{1, 2});
  CHECK(Rational::parse("+5") == Rational{5, 1});
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational::parse(""), Error);
  CHECK_THROWS_AS(Rational::parse("1.5"), Error);
}

TEST_CASE("validate_metric accepts the path on three points") {
  const auto s = validate_metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  REQUIRE(s.size() == 3);
  CHECK(s(0, 2) == 2);
  CHECK(s.scale() == 1);
}

TEST_CASE("validate_metric reports the violated axiom") {
  try {
    validate_metric({{0, 5, 10}, {5, 0, 1}, {10, 1, 0}});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TriangleViolation);
    CHECK(e.indices() == std::vector<std::size_t>{0, 1, 2});
  }
  try {
    validate_metric({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroOffDiagonal);
    CHECK(e.indices() == std::vector<std::size_t>{0, 1});
  }
  CHECK(kind_of({{0}}) == ErrorKind::TooFewPoints);
  CHECK(kind_of({{0, 1}, {1}}) == ErrorKind::NotSquare);
  CHECK(kind_of({{1, 1}, {1, 0}}) == ErrorKind::NonzeroDiagonal);
  CHECK(kind_of({{0, 1}, {2, 0}}) == ErrorKind::Asymmetric);
  CHECK(kind_of({{0, -1}, {-1, 0}}) == ErrorKind::NegativeEntry);
  CHECK(kind_of({{0, kMaxDistance + 1}, {kMaxDistance + 1, 0}}) == ErrorKind::Overflow);
}

TEST_CASE("rational matrices are scaled to integers by the common denominator") {
  RationalMatrix m = {{Rational{0, 1}, Rational{1, 2}, Rational{5, 6}},
                      {Rational{1, 2}, Rational{0, 1}, Rational{1, 3}},
                      {Rational{5, 6}, Rational{1, 3}, Rational{0, 1}}};
  const auto s = validate_metric(m);
  CHECK(s.scale() == 6);
  CHECK(s(0, 1) == 3);
  CHECK(s(1, 2) == 2);
  CHECK(s(0, 2) == 5);
  CHECK(between(s, 0, 1, 2));
}

TEST_CASE("validate_metric keeps labels") {
  const auto s = validate_metric(rationals({{0, 1}, {1, 0}}), {"a", "b"});
  CHECK(s.label(1) == "b");
  const auto t = validate_metric({{0, 1}, {1, 0}});
  CHECK(t.label(1) == "1");
}

TEST_CASE("betweenness on small graphs") {
  const auto p4 = graph_metric(path_graph(4));
  CHECK(between(p4, 0, 1, 2));
  CHECK_FALSE(between(p4, 1, 0, 2));
  const auto c4 = graph_metric(cycle_graph(4));
  CHECK(between(c4, 0, 1, 2));
  CHECK(between(c4, 0, 3, 2));
  CHECK_THROWS_AS(between(p4, 0, 0, 2), Error);
}

TEST_CASE("collinear triples") {
  const auto c4 = graph_metric(cycle_graph(4));
  CHECK(is_collinear_triple(c4, 0, 2, 1));
  const auto c5 = graph_metric(cycle_graph(5));
  CHECK_FALSE(is_collinear_triple(c5, 0, 1, 3));
  const auto k3 = graph_metric(complete_graph(3));
  CHECK_FALSE(is_collinear_triple(k3, 0, 1, 2));
}

TEST_CASE("collinear sequences") {
  const auto p4 = graph_metric(path_graph(4));
  const std::vector<PointId> ok{0, 1, 2, 3}, bad{0, 2, 1, 3};
  CHECK(check_collinear_sequence(p4, ok));
  CHECK_FALSE(check_collinear_sequence(p4, bad));
  const auto c6 = graph_metric(cycle_graph(6));
  const std::vector<PointId> wrap{5, 0, 2};
  CHECK(check_collinear_sequence(c6, wrap));
  const std::vector<PointId> dup{0, 1, 0}, one{0};
  CHECK_THROWS_AS(check_collinear_sequence(p4, dup), Error);
  CHECK_THROWS_AS(check_collinear_sequence(p4, one), Error);
}

TEST_CASE("line_of on paths and cycles") {
  const auto p4 = graph_metric(path_graph(4));
  CHECK(line_of(p4, 1, 2) == PointSet{0, 1, 2, 3});
  const auto c5 = graph_metric(cycle_graph(5));
  CHECK(line_of(c5, 0, 2) == PointSet{0, 1, 2});
  CHECK(line_of(c5, 0, 1) == PointSet{0, 1, 2, 4});
}

TEST_CASE("line_of agrees with the definition on random metrics") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto s = random_metric(3 + seed % 8, seed, 1 + static_cast<Distance>(seed % 6));
    const auto d = oracle::matrix_of(s);
    for (PointId a = 0; a < s.size(); ++a) {
      for (PointId b = 0; b < s.size(); ++b) {
        if (a == b) continue;
        const auto line = line_of(s, a, b);
        REQUIRE(line == oracle::line(d, a, b));
        CHECK(line == line_of(s, b, a));
        CHECK(std::is_sorted(line.begin(), line.end()));
      }
    }
  }
}

TEST_CASE("betweenness implies collinearity of every permutation") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto s = random_metric(6, seed, 4);
    for (PointId a = 0; a < 6; ++a)
      for (PointId b = 0; b < 6; ++b)
        for (PointId c = 0; c < 6; ++c) {
          if (a == b || b == c || a == c) continue;
          CHECK(is_collinear_triple(s, a, b, c) == is_collinear_triple(s, c, a, b));
          CHECK(is_collinear_triple(s, a, b, c) == is_collinear_triple(s, b, a, c));
          if (between(s, a, b, c)) CHECK(is_collinear_triple(s, a, b, c));
        }
  }
}
