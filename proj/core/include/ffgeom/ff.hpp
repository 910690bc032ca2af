#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ffgeom {

using Residue = std::uint32_t;

/// The prime field F_q for an odd prime q. Residues are plain integers in
/// [0, q); the field object owns the modulus and performs the arithmetic.
class PrimeField {
 public:
  /// Throws InvalidArgument unless q is an odd prime below 2^31.
  explicit PrimeField(std::uint32_t q);

  std::uint32_t order() const noexcept { return q_; }

  Residue reduce(std::int64_t v) const noexcept {
    const auto m = static_cast<std::int64_t>(q_);
    const std::int64_t r = v % m;
    return static_cast<Residue>(r < 0 ? r + m : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= q_ ? s - q_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + q_ - b);
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((std::uint64_t{a} * b) % q_);
  }
  Residue square(Residue a) const noexcept { return mul(a, a); }
  /// Extended Euclid. Throws DivisionByZero for a == 0.
  Residue inv(Residue a) const;
  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
  Residue pow(Residue a, std::uint64_t e) const noexcept;

  /// True iff a is a nonzero square (Euler's criterion).
  bool is_nonzero_square(Residue a) const noexcept;
  /// q = 1 mod 4, i.e. -1 is a square and x^2 + y^2 has isotropic vectors.
  bool minus_one_is_square() const noexcept { return q_ % 4 == 1; }

  bool contains(std::int64_t v) const noexcept { return v >= 0 && v < static_cast<std::int64_t>(q_); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

bool is_prime(std::uint64_t n) noexcept;

/// A residue tagged with its modulus, for value-level arithmetic where the
/// field is not otherwise in scope. Mixing moduli throws InvalidArgument.
class FieldElement {
 public:
  FieldElement(std::int64_t value, std::uint32_t modulus);

  Residue value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldElement(Residue v, std::uint32_t m, bool) : value_(v), modulus_(m) {}
  void require_same(const FieldElement& o) const;

  Residue value_;
  std::uint32_t modulus_;
};

enum class ArithOp { add, sub, mul, div };

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);

/// A point of PG(q, m): a nonzero vector scaled so its first nonzero
/// coordinate is 1. The ordering is lexicographic on the coordinates.
class ProjPoint {
 public:
  const std::vector<Residue>& coords() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.size(); }
  /// Index of the leading 1.
  std::size_t lead() const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  friend ProjPoint normalize_projective(const PrimeField&, std::span<const Residue>);
  explicit ProjPoint(std::vector<Residue> c) : coords_(std::move(c)) {}
  std::vector<Residue> coords_;
};

/// Throws InvalidArgument for the zero vector or out-of-range coordinates.
ProjPoint normalize_projective(const PrimeField& field, std::span<const Residue> v);

/// (q^m - 1)/(q - 1).
std::uint64_t pg_size(std::uint32_t q, unsigned m);

/// Every point of PG(q, m) in canonical form. Points are grouped by the
/// position of their leading 1 (first position first); within a group the
/// trailing coordinates run lexicographically.
std::vector<ProjPoint> enumerate_pg(const PrimeField& field, unsigned m);

}  // namespace ffgeom
