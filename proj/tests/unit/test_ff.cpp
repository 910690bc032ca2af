#include "ffgeom/error.hpp"
#include "ffgeom/ff.hpp"

#include <doctest.h>

#include <set>

using namespace ffgeom;

TEST_SUITE("ff") {

TEST_CASE("field arithmetic on small primes") {
  CHECK(field_arith(FieldElement(2, 3), FieldElement(2, 3), ArithOp::mul).value() == 1);
  CHECK(field_arith(FieldElement(1, 5), FieldElement(2, 5), ArithOp::div).value() == 3);
  CHECK(field_arith(FieldElement(3, 7), FieldElement(5, 7), ArithOp::sub).value() == 5);
  CHECK((FieldElement(4, 7) + FieldElement(5, 7)).value() == 2);
  CHECK((-FieldElement(0, 7)).value() == 0);
  CHECK(FieldElement(-1, 5).value() == 4);
}

TEST_CASE("division by zero and mixed moduli are rejected") {
  CHECK_THROWS_AS(FieldElement(1, 5) / FieldElement(0, 5), DivisionByZero);
  CHECK_THROWS_AS(PrimeField(7).inv(0), DivisionByZero);
  CHECK_THROWS_AS(FieldElement(1, 5) + FieldElement(1, 7), InvalidArgument);
}

TEST_CASE("only odd primes make fields") {
  CHECK_THROWS_AS(PrimeField(2), InvalidArgument);
  CHECK_THROWS_AS(PrimeField(9), InvalidArgument);
  CHECK_THROWS_AS(PrimeField(1), InvalidArgument);
  CHECK_NOTHROW(PrimeField(2147483647u));
  CHECK(is_prime(101));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("inverse, power and squares agree with brute force") {
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u, 101u}) {
    const PrimeField f(q);
    std::set<Residue> squares;
    for (Residue x = 1; x < q; ++x) squares.insert(f.square(x));
    for (Residue x = 1; x < q; ++x) {
      CHECK(f.mul(x, f.inv(x)) == 1);
      CHECK(f.pow(x, q - 1) == 1);
      CHECK(f.is_nonzero_square(x) == (squares.count(x) == 1));
    }
    CHECK_FALSE(f.is_nonzero_square(0));
    CHECK(f.minus_one_is_square() == (squares.count(q - 1) == 1));
  }
}

TEST_CASE("projective normalization scales the leading entry to 1") {
  const PrimeField f3(3), f5(5);
  const std::vector<Residue> a{2, 2, 0}, b{0, 3, 1}, c{1, 0}, d{2, 0};
  CHECK(normalize_projective(f3, a).coords() == std::vector<Residue>{1, 1, 0});
  CHECK(normalize_projective(f5, b).coords() == std::vector<Residue>{0, 1, 2});
  CHECK(normalize_projective(f3, c) == normalize_projective(f3, d));
  const std::vector<Residue> zero{0, 0}, bad{3, 1};
  CHECK_THROWS_AS(normalize_projective(f3, zero), InvalidArgument);
  CHECK_THROWS_AS(normalize_projective(f3, bad), InvalidArgument);
}

TEST_CASE("projective space sizes and order") {
  CHECK(enumerate_pg(PrimeField(3), 2).size() == 4);
  CHECK(enumerate_pg(PrimeField(3), 3).size() == 13);
  const auto pg = enumerate_pg(PrimeField(5), 2);
  std::vector<std::vector<Residue>> got;
  for (const auto& p : pg) got.push_back(p.coords());
  CHECK(got == std::vector<std::vector<Residue>>{{1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}, {0, 1}});
}

TEST_CASE("enumerated projective points are canonical and distinct") {
  for (std::uint32_t q : {3u, 5u, 7u})
    for (unsigned m : {2u, 3u, 4u}) {
      const PrimeField f(q);
      const auto pg = enumerate_pg(f, m);
      CHECK(pg.size() == pg_size(q, m));
      std::set<ProjPoint> seen(pg.begin(), pg.end());
      CHECK(seen.size() == pg.size());
      for (const auto& p : pg) CHECK(normalize_projective(f, p.coords()) == p);
    }
}

}
