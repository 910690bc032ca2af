#include "ffgeom/exact.hpp"

#include <doctest.h>

#include <cmath>

using namespace ffgeom;

TEST_SUITE("exact") {

TEST_CASE("integer roots are floors") {
  CHECK(integer_root(Int(512), 3) == 8);
  CHECK(integer_root(Int(511), 3) == 7);
  CHECK(integer_root(Int(4096), 3) == 16);
  CHECK(integer_root(Int(0), 5) == 0);
  CHECK(integer_root(Int(99), 1) == 99);
  const Int big = ipow(Int(10), 40) + 7;
  const Int r = integer_root(big, 2);
  CHECK(r * r <= big);
  CHECK((r + 1) * (r + 1) > big);
}

TEST_CASE("offset plus square root comparisons are exact") {
  CHECK(le_offset_plus_sqrt(Rational(3), Rational(1), Rational(4)));
  CHECK_FALSE(le_offset_plus_sqrt(Rational(3), Rational(1), Rational(3)));
  CHECK(le_offset_plus_sqrt(Rational(-5), Rational(0), Rational(0)));
  CHECK(le_offset_plus_sqrt(Rational(1), Rational(2), Rational(0)));
  // 1.7320508 < sqrt(3) < 1.7320509
  CHECK(le_offset_plus_sqrt(Rational(17320508, 10000000), Rational(0), Rational(3)));
  CHECK_FALSE(le_offset_plus_sqrt(Rational(17320509, 10000000), Rational(0), Rational(3)));
  CHECK(le_scaled_sqrt(Rational(6), Rational(2), Rational(9)));
  CHECK_FALSE(le_scaled_sqrt(Rational(7), Rational(2), Rational(9)));
}

TEST_CASE("rationals print in lowest terms") {
  CHECK(to_string(Rational(6561, 2673)) == "27/11");
  CHECK(to_string(Rational(4)) == "4");
  CHECK(std::abs(to_double(Rational(1, 3)) - 1.0 / 3) < 1e-15);
}

}
