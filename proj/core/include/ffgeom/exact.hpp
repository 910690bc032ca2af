#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ffgeom {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& r);
std::string to_string(const Int& v);

double to_double(const Rational& r);

/// Exact test of `lhs <= offset + sqrt(radicand)` for radicand >= 0.
bool le_offset_plus_sqrt(const Rational& lhs, const Rational& offset, const Rational& radicand);

/// Exact test of `lhs <= coeff * sqrt(radicand)` for coeff, radicand >= 0.
bool le_scaled_sqrt(const Rational& lhs, const Rational& coeff, const Rational& radicand);

/// Largest r >= 0 with r^k <= value (k >= 1).
Int integer_root(const Int& value, unsigned k);

Int ipow(const Int& base, unsigned exp);
Rational rpow(const Rational& base, unsigned exp);

}  // namespace ffgeom
