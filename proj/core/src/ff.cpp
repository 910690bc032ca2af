#include "ffgeom/ff.hpp"

#include "ffgeom/error.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ffgeom {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (q > static_cast<std::uint32_t>(std::numeric_limits<std::int32_t>::max()))
    throw InvalidArgument("modulus " + std::to_string(q) + " is too large");
  if (q == 2 || !is_prime(q))
    throw InvalidArgument("modulus " + std::to_string(q) + " is not an odd prime");
}

Residue PrimeField::inv(Residue a) const {
  if (a % q_ == 0) throw DivisionByZero();
  std::int64_t r0 = q_, r1 = a % q_;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t quot = r0 / r1;
    std::int64_t t = r0 - quot * r1;
    r0 = r1;
    r1 = t;
    t = s0 - quot * s1;
    s0 = s1;
    s1 = t;
  }
  return reduce(s0);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % q_;
  Residue base = a % q_;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool PrimeField::is_nonzero_square(Residue a) const noexcept {
  a %= q_;
  return a != 0 && pow(a, (q_ - 1) / 2) == 1;
}

FieldElement::FieldElement(std::int64_t value, std::uint32_t modulus)
    : value_(PrimeField(modulus).reduce(value)), modulus_(modulus) {}

void FieldElement::require_same(const FieldElement& o) const {
  if (modulus_ != o.modulus_)
    throw InvalidArgument("field elements over different moduli (" + std::to_string(modulus_) +
                          " vs " + std::to_string(o.modulus_) + ")");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  return {PrimeField(modulus_).add(value_, o.value_), modulus_, true};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  return {PrimeField(modulus_).sub(value_, o.value_), modulus_, true};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  return {PrimeField(modulus_).mul(value_, o.value_), modulus_, true};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same(o);
  return {PrimeField(modulus_).div(value_, o.value_), modulus_, true};
}
FieldElement FieldElement::operator-() const {
  return {PrimeField(modulus_).neg(value_), modulus_, true};
}
FieldElement FieldElement::inverse() const {
  return {PrimeField(modulus_).inv(value_), modulus_, true};
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw InvalidArgument("unknown arithmetic op");
}

std::size_t ProjPoint::lead() const noexcept {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] != 0) return i;
  return coords_.size();
}

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ']';
  return os.str();
}

ProjPoint normalize_projective(const PrimeField& field, std::span<const Residue> v) {
  std::size_t lead = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= field.order())
      throw InvalidArgument("coordinate " + std::to_string(v[i]) + " out of range");
    if (lead == v.size() && v[i] != 0) lead = i;
  }
  if (lead == v.size()) throw InvalidArgument("the zero vector has no projective class");
  const Residue scale = field.inv(v[lead]);
  std::vector<Residue> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = field.mul(v[i], scale);
  return ProjPoint(std::move(out));
}

std::uint64_t pg_size(std::uint32_t q, unsigned m) {
  std::uint64_t total = 0, power = 1;
  for (unsigned i = 0; i < m; ++i) {
    total += power;
    power *= q;
  }
  return total;
}

std::vector<ProjPoint> enumerate_pg(const PrimeField& field, unsigned m) {
  if (m < 2) throw InvalidArgument("projective space needs m >= 2");
  const std::uint32_t q = field.order();
  std::vector<ProjPoint> out;
  out.reserve(pg_size(q, m));
  std::vector<Residue> v(m);
  for (unsigned lead = 0; lead < m; ++lead) {
    const unsigned tail = m - lead - 1;
    std::uint64_t combos = 1;
    for (unsigned i = 0; i < tail; ++i) combos *= q;
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::fill(v.begin(), v.end(), 0);
      v[lead] = 1;
      std::uint64_t rest = c;
      for (unsigned pos = m; pos-- > lead + 1;) {
        v[pos] = static_cast<Residue>(rest % q);
        rest /= q;
      }
      out.push_back(normalize_projective(field, v));
    }
  }
  return out;
}

}  // namespace ffgeom
