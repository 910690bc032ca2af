#include "ffgeom/error.hpp"
#include "ffgeom/pointset.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

using namespace ffgeom;

namespace {

Point pt(std::initializer_list<Residue> c) { return Point{std::vector<Residue>(c)}; }

std::vector<Point> random_points(std::uint32_t q, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<Point> s;
  while (s.size() < count) s.insert(pt({static_cast<Residue>(rng() % q), static_cast<Residue>(rng() % q)}));
  return {s.begin(), s.end()};
}

}  // namespace

TEST_SUITE("pointset") {

TEST_CASE("csv and json parsing") {
  std::istringstream csv("# q=3 d=2\n0,1\n2,2\n");
  const auto e = parse_pointset(csv);
  CHECK(e.kind() == PointSet::Kind::explicit_list);
  CHECK(e.size() == 2);

  std::istringstream bad("# q=3 d=2\n0,3\n");
  CHECK_THROWS_AS(parse_pointset(bad), ParseError);

  std::istringstream js(R"({"q": 3, "sets": [[0, 1, 2], [0, 1, 2]]})");
  const auto g = parse_pointset(js);
  CHECK(g.is_product());
  CHECK(g.size() == 9);
  CHECK(g.points().size() == 9);
}

TEST_CASE("csv round trip") {
  const PrimeField f(5);
  const auto s = PointSet::from_points(f, 2, random_points(5, 7, 1));
  std::istringstream in(format_pointset_csv(s));
  const auto back = parse_pointset(in);
  CHECK(back.points() == s.points());
}

TEST_CASE("distances") {
  CHECK(distance(PrimeField(3), pt({0, 0}), pt({1, 1})) == 2);
  CHECK(distance(PrimeField(5), pt({0, 0}), pt({1, 2})) == 0);
  CHECK(distance(PrimeField(3), pt({2, 1}), pt({2, 1})) == 0);
  CHECK_THROWS_AS(distance(PrimeField(3), pt({0, 0}), pt({0, 0, 0})), InvalidArgument);
}

TEST_CASE("distance distribution") {
  const PrimeField f(3);
  const auto grid = PointSet::full_grid(f, 2);
  const auto nu = distance_distribution_direct(f, grid.points());
  CHECK(nu.counts == std::vector<std::uint64_t>{9, 36, 36});
  CHECK(distance_distribution_direct(f, {pt({1, 2})}).counts == std::vector<std::uint64_t>{1, 0, 0});
  CHECK(distance_distribution_direct(f, {pt({0, 0}), pt({1, 0})}).counts == std::vector<std::uint64_t>{2, 2, 0});
  CHECK(nu.total() == 81);
  CHECK(nu.distinct_distances() == 3);
}

TEST_CASE("product path matches the direct path") {
  const PrimeField f3(3);
  CHECK(distance_distribution_product(f3, {{0, 1, 2}, {0, 1, 2}}).counts == std::vector<std::uint64_t>{9, 36, 36});
  CHECK(distance_distribution_product(f3, {{0}}).counts == std::vector<std::uint64_t>{1, 0, 0});
  const auto small = PointSet::from_product(f3, {{0, 1}, {0, 1, 2}});
  CHECK(small.size() == 6);
  CHECK(distance_distribution(small) == distance_distribution_direct(f3, small.points()));

  std::mt19937_64 rng(7);
  const PrimeField f7(7);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<Residue>> factors;
    const unsigned d = 1 + rng() % 3;
    for (unsigned i = 0; i < d; ++i) {
      std::set<Residue> a;
      const auto size = 1 + rng() % 7;
      while (a.size() < size) a.insert(static_cast<Residue>(rng() % 7));
      factors.emplace_back(a.begin(), a.end());
    }
    const auto s = PointSet::from_product(f7, factors);
    CHECK(distance_distribution(s) == distance_distribution_direct(f7, s.points(), 3));
  }
}

TEST_CASE("quadruple counts") {
  const PrimeField f(3);
  const auto nu = distance_distribution(PointSet::full_grid(f, 2));
  CHECK(quadruple_count(nu) == 2673);
  CHECK(quadruple_count(nu, true) == 2592);
  CHECK(quadruple_count(distance_distribution_direct(f, {pt({0, 0})})) == 1);
}

TEST_CASE("hinge counts") {
  const PrimeField f(3);
  const auto h = hinge_counts(f, PointSet::full_grid(f, 2).points());
  CHECK(h.cross_checked);
  CHECK(h.by_lambda[1] == 144);
  CHECK(h.by_lambda[2] == 144);
  CHECK(h.total_nonzero() == 288);

  const auto two = hinge_counts(f, {pt({0, 0}), pt({1, 0})});
  CHECK(two.by_lambda[1] == 2);
  CHECK(two.by_lambda[2] == 0);

  const PrimeField f11(11);
  const auto r = hinge_counts(f11, random_points(11, 40, 3));
  CHECK(r.cross_checked);
}

TEST_CASE("bisector lines") {
  const PrimeField f3(3), f5(5);
  CHECK(bisector_line(f3, pt({0, 0}), pt({2, 0})) == Line{1, 0, 2});
  CHECK(bisector_line(f5, pt({0, 0}), pt({0, 2})) == Line{0, 1, 4});
  const auto l = bisector_line(f3, pt({0, 0}), pt({1, 1}));
  CHECK(l == Line{1, 1, 2});
  for (const auto& x : PointSet::full_grid(f3, 2).points())
    CHECK(l.contains(f3, x) == (distance(f3, x, pt({0, 0})) == distance(f3, x, pt({1, 1}))));
}

TEST_CASE("bisector is the equidistant locus") {
  for (std::uint32_t q : {5u, 7u, 11u}) {
    const PrimeField f(q);
    const auto pts = random_points(q, 6, q);
    const auto grid = PointSet::full_grid(f, 2).points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const auto l = bisector_line(f, pts[i], pts[j]);
        for (const auto& x : grid)
          CHECK(l.contains(f, x) == (distance(f, x, pts[i]) == distance(f, x, pts[j])));
      }
  }
}

TEST_CASE("isotropic pairs") {
  const PrimeField f3(3), f5(5);
  CHECK(isotropic_report(f3, PointSet::full_grid(f3, 2).points()).ordered_pairs == 0);
  const auto r5 = isotropic_report(f5, PointSet::full_grid(f5, 2).points());
  CHECK(r5.ordered_pairs > 0);
  CHECK(r5.isotropic_directions_exist);
  CHECK(isotropic_report(f5, {pt({1, 1})}).ordered_pairs == 0);
  const auto stripped = strip_isotropic(f5, PointSet::full_grid(f5, 2).points());
  CHECK(isotropic_report(f5, stripped).ordered_pairs == 0);
}

}
