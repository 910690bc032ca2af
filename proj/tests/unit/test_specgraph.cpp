#include "ffgeom/error.hpp"
#include "ffgeom/specgraph.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ffgeom;

namespace {

VertexMultiset random_multiset(std::mt19937_64& rng, std::size_t n) {
  VertexMultiset m;
  const auto size = 1 + rng() % n;
  for (std::size_t i = 0; i < size; ++i) m[static_cast<std::uint32_t>(rng() % n)] = 1 + rng() % 3;
  return m;
}

Int direct_edges(const NDLGraph& g, const VertexMultiset& b, const VertexMultiset& c) {
  Int e = 0;
  for (const auto& [x, mx] : b)
    for (const auto& [y, my] : c)
      if (g.adjacent(x, y)) e += Int(mx) * my;
  return e;
}

}  // namespace

TEST_SUITE("specgraph") {

TEST_CASE("ER graph on PG(3, 2)") {
  const auto er = build_er_graph(PrimeField(3), 2);
  const auto& g = er.graph;
  CHECK(g.size() == 4);
  CHECK(g.declared().n == 4);
  CHECK(g.declared().degree == 1);
  CHECK(g.declared().lambda_sq == 1);
  const auto s = second_eigenvalue(g);
  CHECK(s.eigenvalues.size() == 4);
  CHECK(std::abs(s.eigenvalues.front() - 1) < 1e-8);
  CHECK(std::abs(s.eigenvalues.back() + 1) < 1e-8);
  CHECK(std::abs(s.lambda2 - 1) < 1e-8);
  CHECK(check_parameters(g).pass());
}

TEST_CASE("complete graph") {
  const auto s = second_eigenvalue(complete_graph(4));
  CHECK(std::abs(s.perron - 3) < 1e-8);
  CHECK(std::abs(s.lambda2 - 1) < 1e-8);
}

TEST_CASE("ER graph parameters") {
  for (std::uint32_t q : {3u, 5u, 7u})
    for (unsigned m : {2u, 3u}) {
      const auto er = build_er_graph(PrimeField(q), m);
      CHECK(er.graph.size() == pg_size(q, m));
      CHECK(er.graph.is_symmetric());
      const auto c = check_parameters(er.graph);
      CHECK(c.pass());
      CHECK(c.degree_min == pg_size(q, m - 1));
    }
}

TEST_CASE("isotropic points carry loops") {
  const auto er = build_er_graph(PrimeField(5), 2);
  const std::vector<Residue> iso{1, 2};
  const auto v = er.index_of(normalize_projective(PrimeField(5), iso));
  CHECK(er.graph.adjacent(v, v));
  const VertexMultiset one{{v, 1}};
  CHECK(mixing_edges(er.graph, one, one).edges == 1);
  CHECK(build_er_graph(PrimeField(3), 3).graph.loop_count() == 4);
}

TEST_CASE("reflection graphs") {
  const auto r3 = build_reflection_graph(PrimeField(3), 1);
  CHECK(r3.graph.size() == 36);
  CHECK(r3.branch == 1);
  CHECK(r3.graph.declared().degree == 12);
  CHECK(r3.graph.declared().lambda_sq == 64);
  CHECK(check_parameters(r3.graph).pass());

  const auto r3b = build_reflection_graph(PrimeField(3), 2);
  CHECK(r3b.graph.declared().n == r3.graph.declared().n);
  CHECK(r3b.graph.declared().degree == r3.graph.declared().degree);
  CHECK(r3b.graph.declared().lambda_sq == r3.graph.declared().lambda_sq);

  const auto r5 = build_reflection_graph(PrimeField(5), 1);
  CHECK(r5.graph.size() == 100);
  CHECK(r5.branch == -1);
  CHECK(r5.graph.declared().degree == 20);
  CHECK(r5.graph.declared().lambda_sq == 64);
  CHECK(check_parameters(r5.graph).pass());
}

TEST_CASE("vertex caps") {
  CHECK_THROWS_AS(build_er_graph(PrimeField(11), 4, 100), CapExceeded);
  CHECK_THROWS_AS(second_eigenvalue(complete_graph(20), 10), CapExceeded);
}

TEST_CASE("mixing: handshake identity") {
  const auto er = build_er_graph(PrimeField(5), 3);
  VertexMultiset all;
  for (std::uint32_t i = 0; i < er.graph.size(); ++i) all[i] = 1;
  const auto r = mixing_edges(er.graph, all, all);
  CHECK(r.edges == Int(er.graph.size()) * er.graph.declared().degree);
  CHECK(r.holds);
}

TEST_CASE("mixing holds on random multisets") {
  const auto er = build_er_graph(PrimeField(7), 3);
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const auto b = random_multiset(rng, er.graph.size());
    const auto c = random_multiset(rng, er.graph.size());
    const auto r = mixing_edges(er.graph, b, c);
    CHECK(r.edges == direct_edges(er.graph, b, c));
    CHECK(r.holds);
  }
}

TEST_CASE("a wrong lambda declaration is caught") {
  auto er = build_er_graph(PrimeField(3), 3);
  er.graph.declared().lambda_sq = Rational(1, 4);
  CHECK_FALSE(check_parameters(er.graph).pass());
}

}
