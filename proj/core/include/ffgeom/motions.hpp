#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/ff.hpp"
#include "ffgeom/pointset.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ffgeom {

struct OrthogonalCaps {
  /// Allows n = 4 (otherwise n <= 3).
  bool allow_dimension_four = false;
  /// Largest q accepted for n >= 3.
  std::uint32_t max_q_dim3 = 13;
};

/// An n x n matrix over F_q with theta^T theta = I, row-major.
class OrthMatrix {
 public:
  /// Validates orthogonality; throws InvalidArgument otherwise.
  static OrthMatrix from_entries(const PrimeField& field, unsigned n, std::vector<Residue> entries);
  static OrthMatrix identity(unsigned n);

  unsigned dimension() const noexcept { return n_; }
  Residue at(unsigned row, unsigned col) const { return entries_[std::size_t{row} * n_ + col]; }
  const std::vector<Residue>& entries() const noexcept { return entries_; }

  Point apply(const PrimeField& field, const Point& x) const;
  OrthMatrix compose(const PrimeField& field, const OrthMatrix& rhs) const;
  /// The inverse of an orthogonal matrix is its transpose.
  OrthMatrix transpose() const;
  Residue determinant(const PrimeField& field) const;

  friend auto operator<=>(const OrthMatrix&, const OrthMatrix&) = default;
  friend bool operator==(const OrthMatrix&, const OrthMatrix&) = default;

 private:
  friend std::vector<OrthMatrix> enumerate_orthogonal(const PrimeField&, unsigned, OrthogonalCaps);
  OrthMatrix(unsigned n, std::vector<Residue> e) : n_(n), entries_(std::move(e)) {}
  unsigned n_ = 0;
  std::vector<Residue> entries_;
};

/// Every element of O(n, F_q) for the form sum x_i^2, found by backtracking
/// over orthonormal column tuples. n = 0 yields the single empty matrix.
std::vector<OrthMatrix> enumerate_orthogonal(const PrimeField& field, unsigned n, OrthogonalCaps caps = {});

/// Solutions of a^2 + b^2 = 1, sorted.
std::vector<std::pair<Residue, Residue>> unit_circle(const PrimeField& field);

/// x -> R(x - u) + u with R = [[a, b], [b, -a]], a^2 + b^2 = 1.
struct Reflection2D {
  Residue a = 1, b = 0;
  Point u{{0, 0}};
};

Reflection2D make_reflection(const PrimeField& field, Residue a, Residue b, Point u);
Point apply_reflection(const PrimeField& field, const Reflection2D& r, const Point& x);
/// The q(q +- 1) distinct point reflections of F_q^2.
std::vector<Reflection2D> enumerate_reflections(const PrimeField& field);

/// x -> theta(x) + z.
struct Motion {
  OrthMatrix theta;
  Point z;

  Point apply(const PrimeField& field, const Point& x) const;
};

/// |{(u, v) in E^2 : theta(u) + z = v}| via hash lookup.
std::uint64_t w_count(const PrimeField& field, const std::vector<Point>& points, const Motion& motion);

/// For each theta in `group`, the profile z -> |w_theta(z)| over all of F_q^d,
/// indexed by encode_point(z).
std::vector<std::vector<std::uint32_t>> motion_profiles(const PrimeField& field, const std::vector<Point>& points,
                                                        const std::vector<OrthMatrix>& group, unsigned threads = 1);

struct MotionStatistics {
  std::uint64_t motions = 0;
  Int s1 = 0;  ///< sum |w|^2
  Int s2 = 0;  ///< sum |w|^{k+1}
  std::uint64_t max_w = 0;
};

MotionStatistics motion_statistics(const std::vector<std::vector<std::uint32_t>>& profiles, unsigned k);

struct MotionCaps {
  std::uint32_t max_q_dim2 = 13;
  std::uint32_t max_q_dim3 = 7;
  bool allow_dimension_three = false;
};

/// Enumerates O(d) and sweeps every motion. d = 3 must be enabled in caps.
MotionStatistics motion_statistics(const PrimeField& field, const std::vector<Point>& points, unsigned d, unsigned k,
                                   MotionCaps caps = {}, unsigned threads = 1);

/// #{(theta, z) : theta(x_i) + z = x_i for all i}.
std::uint64_t stabilizer_size(const PrimeField& field, std::span<const Point> simplex,
                              const std::vector<OrthMatrix>& group);

/// Dimension of the affine span of the simplex.
unsigned affine_rank(const PrimeField& field, std::span<const Point> simplex);

/// Orbit label under rigid motions: the lexicographically smallest
/// (theta(x_i - x_1))_{i >= 2} over theta in the group, packed as codes.
std::vector<std::uint64_t> congruence_key(const PrimeField& field, std::span<const Point> simplex,
                                          const std::vector<OrthMatrix>& group);

}  // namespace ffgeom
