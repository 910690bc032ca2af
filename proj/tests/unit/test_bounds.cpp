#include "ffgeom/bounds.hpp"
#include "ffgeom/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace ffgeom;

namespace {

std::vector<Residue> random_factor(std::uint32_t q, std::mt19937_64& rng) {
  std::set<Residue> a;
  const auto size = 1 + rng() % q;
  while (a.size() < size) a.insert(static_cast<Residue>(rng() % q));
  return {a.begin(), a.end()};
}

std::vector<Point> random_points(std::uint32_t q, std::size_t count, std::mt19937_64& rng) {
  std::set<Point> s;
  while (s.size() < count) s.insert(Point{{static_cast<Residue>(rng() % q), static_cast<Residue>(rng() % q)}});
  return {s.begin(), s.end()};
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("embedding reproduces the quadruple count") {
  const PrimeField f(3);
  const auto grid = PointSet::full_grid(f, 2);
  const auto er = build_er_graph(f, 4);
  for (Residue a = 0; a < 3; ++a)
    for (Residue b = 0; b < 3; ++b) {
      const auto r = mainlm_embedding(grid, a, b, &er);
      CHECK(r.n_direct == r.n_graph);
      CHECK(r.max_mult_u <= 2);
      CHECK(r.max_mult_v <= 2);
      CHECK(r.dot_identity_ok);
      CHECK(r.dot_identity_checks > 0);
      CHECK(r.size_u == 27);
      CHECK(r.pass());
    }
}

TEST_CASE("embedding on random products") {
  const PrimeField f(5);
  const auto er = build_er_graph(f, 4);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    const auto set = PointSet::from_product(f, {random_factor(5, rng), random_factor(5, rng)});
    const auto& last = set.factors().back();
    const auto r = mainlm_embedding(set, last.front(), last.back(), &er);
    CHECK(r.n_direct == r.n_graph);
    CHECK(r.dot_identity_ok);
  }
  const auto loose = PointSet::from_points(f, 2, {Point{{0, 0}}, Point{{1, 2}}});
  CHECK_THROWS_AS(mainlm_embedding(loose, 0, 0), InvalidArgument);
}

TEST_CASE("smallest factor is rotated last") {
  const PrimeField f(7);
  const auto s = PointSet::from_product(f, {{0, 1, 2}, {4}, {1, 5}});
  const auto r = rotate_min_factor_last(s);
  CHECK(r.factors() == std::vector<std::vector<Residue>>{{0, 1, 2}, {1, 5}, {4}});
}

TEST_CASE("product nu-square bound") {
  const PrimeField f(3);
  const auto g = nu_square_bound_product(PointSet::full_grid(f, 2));
  CHECK(g.lhs == 2673);
  CHECK(g.rhs == 3645);
  CHECK(g.pass);
  CHECK(g.rotation_invariant);
  CHECK(nu_square_bound_product(PointSet::from_product(f, {{0}, {0, 1, 2}})).pass);

  const PrimeField f7(7);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t)
    CHECK(nu_square_bound_product(PointSet::from_product(f7, {random_factor(7, rng), random_factor(7, rng)})).pass);
}

TEST_CASE("planar nu-square bound at C = 4") {
  for (std::uint32_t q : {5u, 7u, 11u}) {
    const PrimeField f(q);
    const auto r = nu_square_bound_planar(f, PointSet::full_grid(f, 2).points());
    CHECK(r.pass);
    CHECK(r.eq5_holds);
  }
  const PrimeField f11(11);
  const auto one = nu_square_bound_planar(f11, {Point{{3, 4}}});
  CHECK(one.lhs == 0);
  CHECK(one.pass);

  std::mt19937_64 rng(8);
  const auto size = static_cast<std::size_t>(std::ceil(4 * std::pow(11.0, 4.0 / 3)));
  for (int t = 0; t < 20; ++t) {
    const auto r = nu_square_bound_planar(f11, random_points(11, size, rng));
    CHECK(r.pass);
    CHECK(r.chain_holds);
  }
}

TEST_CASE("hinge bounds") {
  const PrimeField f3(3);
  const auto g = hinge_upper_bound(f3, PointSet::full_grid(f3, 2).points());
  CHECK(g.hinge_total == 288);
  CHECK(g.pass);
  CHECK(hinge_upper_bound(f3, {Point{{0, 0}}}).hinge_total == 0);

  const PrimeField f7(7);
  std::mt19937_64 rng(6);
  const auto size = static_cast<std::size_t>(std::ceil(std::pow(7.0, 4.0 / 3)));
  for (int t = 0; t < 20; ++t) CHECK(hinge_upper_bound(f7, random_points(7, size, rng)).pass);
}

TEST_CASE("hinge lemma forms") {
  const PrimeField f(7);
  const auto r = hinge_lemma_check(f, PointSet::full_grid(f, 2).points());
  CHECK(r.eq5);
  CHECK(r.quarter_unordered);
  CHECK(r.identity_cross_checked);
  CHECK(r.q_three_mod_four);
}

}
