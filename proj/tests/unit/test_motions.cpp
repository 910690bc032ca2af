#include "ffgeom/error.hpp"
#include "ffgeom/motions.hpp"

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

}  // namespace

TEST_SUITE("motions") {

TEST_CASE("orthogonal group orders") {
  const auto o1 = enumerate_orthogonal(PrimeField(3), 1);
  CHECK(o1.size() == 2);
  CHECK(enumerate_orthogonal(PrimeField(3), 0).size() == 1);
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    const auto g = enumerate_orthogonal(PrimeField(q), 2);
    CHECK(g.size() == 2 * (q % 4 == 3 ? q + 1 : q - 1));
  }
  CHECK(enumerate_orthogonal(PrimeField(3), 3).size() == 48);
  CHECK(enumerate_orthogonal(PrimeField(5), 3).size() == 240);
}

TEST_CASE("orthogonal group is closed") {
  const PrimeField f(7);
  const auto g = enumerate_orthogonal(f, 2);
  const std::set<OrthMatrix> s(g.begin(), g.end());
  CHECK(s.size() == g.size());
  for (const auto& a : g) {
    CHECK(s.count(a.transpose()) == 1);
    CHECK(a.compose(f, a.transpose()) == OrthMatrix::identity(2));
    const auto det = a.determinant(f);
    CHECK((det == 1 || det == 6));
    for (const auto& b : g) CHECK(s.count(a.compose(f, b)) == 1);
  }
  CHECK_THROWS_AS(OrthMatrix::from_entries(f, 2, {1, 1, 0, 1}), InvalidArgument);
}

TEST_CASE("dimension caps") {
  CHECK_THROWS_AS(enumerate_orthogonal(PrimeField(3), 4), CapExceeded);
  CHECK_THROWS_AS(enumerate_orthogonal(PrimeField(17), 3), CapExceeded);
}

TEST_CASE("unit circles") {
  using P = std::pair<Residue, Residue>;
  CHECK(unit_circle(PrimeField(3)) == std::vector<P>{{0, 1}, {0, 2}, {1, 0}, {2, 0}});
  CHECK(unit_circle(PrimeField(5)).size() == 4);
  CHECK(unit_circle(PrimeField(7)).size() == 8);
}

TEST_CASE("point reflections") {
  const PrimeField f(7);
  const auto axis = make_reflection(f, 1, 0, pt({0, 0}));
  CHECK(apply_reflection(f, axis, pt({3, 2})) == pt({3, 5}));
  for (const auto& r : enumerate_reflections(f))
    for (const auto& x : random_points(7, 5, 11)) CHECK(apply_reflection(f, r, apply_reflection(f, r, x)) == x);
  CHECK(enumerate_reflections(f).size() == 7 * 8);
  CHECK(enumerate_reflections(PrimeField(5)).size() == 5 * 4);

  const PrimeField f3(3);
  const auto r = make_reflection(f3, 0, 1, pt({1, 1}));
  CHECK(apply_reflection(f3, r, pt({0, 0})) == pt({0, 0}));
  CHECK_THROWS_AS(make_reflection(f3, 1, 1, pt({0, 0})), InvalidArgument);
}

TEST_CASE("w counts") {
  const PrimeField f(3);
  const auto grid = PointSet::full_grid(f, 2).points();
  const auto pts = random_points(3, 4, 5);
  CHECK(w_count(f, pts, Motion{OrthMatrix::identity(2), pt({0, 0})}) == 4);
  CHECK(w_count(f, {pt({0, 0}), pt({0, 1})}, Motion{OrthMatrix::identity(2), pt({1, 1})}) == 0);
  for (const auto& theta : enumerate_orthogonal(f, 2)) CHECK(w_count(f, grid, Motion{theta, pt({2, 1})}) == 9);
}

TEST_CASE("motion sweep statistics") {
  const PrimeField f(3);
  const auto grid = motion_statistics(f, PointSet::full_grid(f, 2).points(), 2, 1);
  CHECK(grid.motions == 72);
  CHECK(grid.s1 == 5832);
  CHECK(grid.max_w == 9);
  CHECK(motion_statistics(f, {pt({1, 2})}, 2, 1).s1 == 8);

  const PrimeField f7(7);
  for (unsigned k : {1u, 2u, 3u}) {
    const auto s = motion_statistics(f7, random_points(7, 15, k), 2, k);
    CHECK(s.s2 <= ipow(Int(s.max_w), k - 1) * s.s1);
  }
}

TEST_CASE("profiles agree with w counts") {
  const PrimeField f(5);
  const auto pts = random_points(5, 8, 9);
  const auto group = enumerate_orthogonal(f, 2);
  const auto profiles = motion_profiles(f, pts, group, 3);
  CHECK(profiles == motion_profiles(f, pts, group, 1));
  for (std::size_t i = 0; i < group.size(); ++i)
    for (std::uint64_t z = 0; z < 25; ++z)
      CHECK(profiles[i][z] == w_count(f, pts, Motion{group[i], decode_point(5, 2, z)}));
}

TEST_CASE("stabilizers") {
  const PrimeField f(3);
  const auto group = enumerate_orthogonal(f, 2);
  const std::vector<Point> one{pt({1, 2})};
  CHECK(stabilizer_size(f, one, group) == 8);
  const std::vector<Point> pair{pt({0, 0}), pt({1, 0})};
  CHECK(stabilizer_size(f, pair, group) == 2);
  const std::vector<Point> degenerate{pt({2, 2}), pt({2, 2})};
  CHECK(stabilizer_size(f, degenerate, group) == 8);
  const std::vector<Point> triangle{pt({0, 0}), pt({1, 0}), pt({0, 1})};
  CHECK(stabilizer_size(f, triangle, group) == 1);
  CHECK(affine_rank(f, triangle) == 2);
  CHECK(affine_rank(f, degenerate) == 0);
}

TEST_CASE("congruence keys are motion invariant") {
  const PrimeField f(7);
  const auto group = enumerate_orthogonal(f, 2);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto tri = random_points(7, 3, rng());
    const Motion m{group[rng() % group.size()], pt({static_cast<Residue>(rng() % 7), static_cast<Residue>(rng() % 7)})};
    std::vector<Point> moved;
    for (const auto& x : tri) moved.push_back(m.apply(f, x));
    CHECK(congruence_key(f, tri, group) == congruence_key(f, moved, group));
  }
}

}
