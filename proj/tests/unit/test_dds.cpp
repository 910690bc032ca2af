#include "ffgeom/dds.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ffgeom;

namespace {

Point pt(std::initializer_list<Residue> c) { return Point{std::vector<Residue>(c)}; }

std::vector<Point> random_points(std::uint32_t q, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<Point> s;
  while (s.size() < count) s.insert(pt({static_cast<Residue>(rng() % q), static_cast<Residue>(rng() % q)}));
  return {s.begin(), s.end()};
}

Hypergraph4 random_hypergraph(std::uint32_t n, std::uint64_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Hypergraph4 h(n);
  while (h.edge_count() < m) {
    std::set<std::uint32_t> s;
    while (s.size() < 4) s.insert(static_cast<std::uint32_t>(rng() % n));
    Quad e;
    std::copy(s.begin(), s.end(), e.begin());
    h.insert(e);
  }
  return h;
}

const std::vector<Point> kCollinear{pt({0, 0}), pt({1, 0}), pt({2, 0}), pt({3, 0})};

}  // namespace

TEST_SUITE("dds") {

TEST_CASE("colex ranks enumerate 4-subsets") {
  std::set<std::uint64_t> ranks;
  for (std::uint32_t d = 3; d < 9; ++d)
    for (std::uint32_t c = 2; c < d; ++c)
      for (std::uint32_t b = 1; b < c; ++b)
        for (std::uint32_t a = 0; a < b; ++a) ranks.insert(colex_rank({a, b, c, d}));
  CHECK(ranks.size() == 126);
  CHECK(*ranks.rbegin() == 125);
}

TEST_CASE("hypergraph storage") {
  Hypergraph4 h(8);
  CHECK(h.insert({3, 1, 4, 2}));
  CHECK_FALSE(h.insert({1, 2, 3, 4}));
  CHECK(h.contains({4, 3, 2, 1}));
  CHECK_FALSE(h.contains({0, 1, 2, 3}));
  CHECK(h.edge_count() == 1);
  CHECK(h.edges() == std::vector<Quad>{{1, 2, 3, 4}});
  CHECK_THROWS_AS(h.insert({1, 1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(h.insert({1, 2, 3, 8}), InvalidArgument);
}

TEST_CASE("singular quadruples") {
  const PrimeField f(7);
  const auto h = singular_quadruples(f, kCollinear);
  CHECK(h.contains({0, 1, 2, 3}));
  CHECK(singular_quadruples(f, {pt({0, 0}), pt({1, 0}), pt({2, 0})}).edge_count() == 0);
}

TEST_CASE("pruned path equals the naive loop") {
  for (std::uint32_t q : {7u, 11u})
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const PrimeField f(q);
      const auto pts = random_points(q, 40, seed);
      const auto pruned = singular_quadruples(f, pts, {}, 3);
      CHECK(pruned == singular_quadruples_naive(f, pts));
      CHECK(pruned == singular_quadruples(f, pts, {}, 1));
    }
}

TEST_CASE("point cap") {
  const PrimeField f(11);
  CHECK_THROWS_AS(singular_quadruples(f, random_points(11, 30, 1), DdsCaps{20}), CapExceeded);
}

TEST_CASE("breakdown partitions the edges") {
  const PrimeField f(11);
  const auto pts = random_points(11, 30, 4);
  const auto h = singular_quadruples(f, pts);
  const auto b = singular_breakdown(f, pts, h);
  CHECK(b.edges == h.edge_count());
  CHECK(b.hinge_edges + b.hinge_free_edges == b.edges);
}

TEST_CASE("Spencer floor arithmetic") {
  const auto a = spencer_floor(8, 4, 2);
  CHECK(a.hypothesis_ok);
  CHECK(a.root == 8);
  CHECK(*a.value == 6);
  const auto b = spencer_floor(16, 4, 4);
  CHECK(b.root == 16);
  CHECK(*b.value == 12);
  const auto c = spencer_floor(16, 4, 3);
  CHECK_FALSE(c.hypothesis_ok);
  CHECK_FALSE(c.value.has_value());
  const auto none = spencer_floor(10, 4, 0);
  CHECK(none.no_edges);
  CHECK(*none.value == 10);
  CHECK_THROWS_AS(spencer_floor(10, 1, 3), InvalidArgument);
}

TEST_CASE("independent sets") {
  const auto empty = independent_set(Hypergraph4(9), 1);
  CHECK(empty.vertices.size() == 9);

  Hypergraph4 one(8);
  one.insert({1, 2, 3, 4});
  const auto r = independent_set(one, 1);
  CHECK(r.vertices.size() == 7);
  CHECK(spans_no_edge(one, r.vertices));

  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto h = random_hypergraph(60, 200, seed);
    const auto s = independent_set(h, seed);
    CHECK(spans_no_edge(h, s.vertices));
    REQUIRE(s.floor.value.has_value());
    CHECK(Rational(Int(s.vertices.size())) >= *s.floor.value);
    CHECK(s.rounds >= 1);
    CHECK(s.rounds <= 64);
  }
}

TEST_CASE("independent sets without completion still meet the floor") {
  const auto h = random_hypergraph(60, 200, 11);
  IndependentSetOptions opt;
  opt.greedy_completion = false;
  const auto s = independent_set(h, 3, opt);
  CHECK(spans_no_edge(h, s.vertices));
  CHECK(Rational(Int(s.vertices.size())) >= *s.floor.value);
}

TEST_CASE("round limit") {
  // Every 4-subset of 12 vertices is an edge, so no set of 4 or more is
  // independent, while the floor asks for more than 3.
  Hypergraph4 full(12);
  for (std::uint32_t d = 3; d < 12; ++d)
    for (std::uint32_t c = 2; c < d; ++c)
      for (std::uint32_t b = 1; b < c; ++b)
        for (std::uint32_t a = 0; a < b; ++a) full.insert({a, b, c, d});
  const auto floor = spencer_floor(12, 4, full.edge_count());
  if (floor.value && *floor.value > 3) {
    CHECK_THROWS_AS(independent_set(full, 1), RoundLimitExceeded);
  } else {
    CHECK(spans_no_edge(full, independent_set(full, 1).vertices));
  }
}

TEST_CASE("distinct distance predicate") {
  const PrimeField f(7);
  CHECK(verify_distinct_distance(f, {pt({0, 0}), pt({1, 0}), pt({2, 0})}).ok);
  const auto bad = verify_distinct_distance(f, kCollinear);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
  const auto& w = *bad.witness;
  CHECK(distance(f, w[0], w[1]) == distance(f, w[2], w[3]));
  CHECK(std::set<Point>(w.begin(), w.end()).size() == 4);
}

TEST_CASE("extraction pipeline") {
  const PrimeField f11(11);
  const auto pts = random_points(11, 100, 17);
  const auto r = dds_extract(f11, pts, 5);
  CHECK(r.verified());
  REQUIRE(r.floor.value.has_value());
  CHECK(Rational(Int(r.subset.size())) >= *r.floor.value);
  CHECK(verify_distinct_distance(f11, r.subset).ok);
  CHECK(r.pigeonhole_threshold == 6);

  const auto again = dds_extract(f11, pts, 5, {}, 4);
  CHECK(again.indices == r.indices);

  const PrimeField f7(7);
  const std::vector<Point> clean{pt({0, 0}), pt({1, 0}), pt({0, 2}), pt({3, 3})};
  if (singular_quadruples(f7, clean).edge_count() == 0) CHECK(dds_extract(f7, clean, 1).subset == clean);
  const auto line = dds_extract(f7, kCollinear, 1);
  CHECK(line.subset.size() == 3);
  CHECK(line.verified());

  CHECK_THROWS_AS(dds_extract(f7, {pt({0, 0, 0})}, 1), InvalidArgument);
}

}
