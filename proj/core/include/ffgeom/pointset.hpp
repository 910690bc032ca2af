#pragma once

#include "ffgeom/ff.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ffgeom {

struct Point {
  std::vector<Residue> coords;

  std::size_t dimension() const noexcept { return coords.size(); }
  std::string to_string() const;

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Packs a point of F_q^d into sum_i c_i q^i.
std::uint64_t encode_point(std::uint32_t q, const Point& p);
Point decode_point(std::uint32_t q, unsigned d, std::uint64_t code);
/// q^d, throwing CapExceeded when it does not fit the index type.
std::uint64_t space_size(std::uint32_t q, unsigned d);

/// A finite point set in F_q^d: either an explicit list of distinct points or
/// a symbolic Cartesian product A_1 x ... x A_d that is only materialized on
/// demand.
class PointSet {
 public:
  enum class Kind { explicit_list, product };

  static PointSet from_points(const PrimeField& field, unsigned d, std::vector<Point> points);
  static PointSet from_product(const PrimeField& field, std::vector<std::vector<Residue>> factors);
  /// F_q^d as a product of d full copies of F_q.
  static PointSet full_grid(const PrimeField& field, unsigned d);

  Kind kind() const noexcept { return kind_; }
  bool is_product() const noexcept { return kind_ == Kind::product; }
  const PrimeField& field() const noexcept { return field_; }
  unsigned dimension() const noexcept { return d_; }
  std::uint64_t size() const noexcept { return size_; }

  /// Explicit points; for products, the lexicographic enumeration of the grid.
  std::vector<Point> points() const;
  /// Only valid for products.
  const std::vector<std::vector<Residue>>& factors() const;

 private:
  PointSet(PrimeField field, unsigned d, Kind kind) : field_(field), d_(d), kind_(kind) {}

  PrimeField field_;
  unsigned d_;
  Kind kind_;
  std::uint64_t size_ = 0;
  std::vector<Point> points_;
  std::vector<std::vector<Residue>> factors_;
};

/// Explicit CSV: header "# q=<q> d=<d>", then one point per line.
PointSet parse_pointset_csv(std::istream& in);
/// Product JSON: {"q": int, "sets": [[...], ...]}.
PointSet parse_pointset_json(std::istream& in);
/// Dispatches on the first non-blank character ('{' means JSON).
PointSet parse_pointset(std::istream& in);
PointSet load_pointset(const std::string& path);
std::string format_pointset_csv(const PointSet& set);

/// ||x|| = sum x_i^2.
Residue norm(const PrimeField& field, const Point& x);
/// ||x - y||. Throws InvalidArgument on dimension mismatch.
Residue distance(const PrimeField& field, const Point& x, const Point& y);

/// Ordered-pair distance histogram: counts[t] = #{(x, y) in E^2 : ||x-y|| = t}.
/// Pairs (x, x) are included, so sum(counts) = |E|^2.
struct DistanceDistribution {
  std::vector<std::uint64_t> counts;

  std::uint64_t operator[](Residue t) const { return counts.at(t); }
  std::uint64_t total() const;
  std::size_t distinct_distances() const;
  friend bool operator==(const DistanceDistribution&, const DistanceDistribution&) = default;
};

/// Direct O(|E|^2) sweep, parallel over the first point.
DistanceDistribution distance_distribution_direct(const PrimeField& field, const std::vector<Point>& points,
                                                  unsigned threads = 1);
/// d-fold additive convolution of per-coordinate squared-difference histograms.
DistanceDistribution distance_distribution_product(const PrimeField& field,
                                                   const std::vector<std::vector<Residue>>& factors);
/// Picks the convolution path for products.
DistanceDistribution distance_distribution(const PointSet& set, unsigned threads = 1);

/// W = sum_t nu(t)^2 (or restricted to t != 0).
std::uint64_t quadruple_count(const DistanceDistribution& nu, bool nonzero_only = false);

/// H_lambda(E) for every lambda, indexed by lambda (entry 0 unused).
struct HingeCounts {
  std::vector<std::uint64_t> by_lambda;
  /// circle[p][lambda] = x_p^lambda, the number of points at distance lambda from p.
  std::vector<std::vector<std::uint32_t>> circle_counts;
  /// True when the triple-loop definition was also evaluated and agreed.
  bool cross_checked = false;

  std::uint64_t total_nonzero() const;
};

/// Computes H_lambda = sum_p (x_p^lambda)^2 and, when |E|^3 <= triple_cap, also
/// the triple-loop definition; a disagreement throws std::logic_error.
HingeCounts hinge_counts(const PrimeField& field, const std::vector<Point>& points,
                         std::uint64_t triple_cap = 20'000'000);

/// c*x + d*y + e = 0, scaled so the first nonzero coefficient is 1.
struct Line {
  Residue c = 0, d = 0, e = 0;

  bool contains(const PrimeField& field, const Point& p) const;
  friend auto operator<=>(const Line&, const Line&) = default;
  friend bool operator==(const Line&, const Line&) = default;
};

/// {x : ||x - q1|| = ||x - q2||} for distinct q1, q2 in F_q^2.
Line bisector_line(const PrimeField& field, const Point& q1, const Point& q2);

struct IsotropicReport {
  /// Ordered pairs x != y with ||x - y|| = 0.
  std::uint64_t ordered_pairs = 0;
  std::vector<std::pair<Point, Point>> sample;
  /// q = 1 mod 4: isotropic directions exist in the plane.
  bool isotropic_directions_exist = false;
};

IsotropicReport isotropic_report(const PrimeField& field, const std::vector<Point>& points,
                                 std::size_t sample_limit = 8);

/// Greedily keeps points in input order, dropping any point at distance 0 from
/// an already kept point. The result has no isotropic pairs.
std::vector<Point> strip_isotropic(const PrimeField& field, const std::vector<Point>& points);

}  // namespace ffgeom
