#include "ffgeom/exact.hpp"

#include "ffgeom/error.hpp"

namespace ffgeom {

std::string to_string(const Int& v) { return v.str(); }

std::string to_string(const Rational& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool le_offset_plus_sqrt(const Rational& lhs, const Rational& offset, const Rational& radicand) {
  if (radicand < 0) throw InvalidArgument("negative radicand");
  if (lhs <= offset) return true;
  const Rational gap = lhs - offset;
  return gap * gap <= radicand;
}

bool le_scaled_sqrt(const Rational& lhs, const Rational& coeff, const Rational& radicand) {
  if (coeff < 0 || radicand < 0) throw InvalidArgument("negative coefficient or radicand");
  if (lhs <= 0) return true;
  return lhs * lhs <= coeff * coeff * radicand;
}

Int ipow(const Int& base, unsigned exp) {
  Int result = 1;
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

Rational rpow(const Rational& base, unsigned exp) {
  Rational result = 1;
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

Int integer_root(const Int& value, unsigned k) {
  if (k == 0) throw InvalidArgument("zeroth root");
  if (value < 0) throw InvalidArgument("root of a negative number");
  if (value < 2 || k == 1) return value;
  // Binary search on [0, 2^(bits/k + 1)].
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(value)) + 1;
  Int lo = 0;
  Int hi = Int(1) << (bits / k + 1);
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    if (ipow(mid, k) <= value)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace ffgeom
