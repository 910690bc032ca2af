#pragma once

#include "ffgeom/error.hpp"
#include "ffgeom/exact.hpp"
#include "ffgeom/ff.hpp"
#include "ffgeom/pointset.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace ffgeom {

using Quad = std::array<std::uint32_t, 4>;

/// A 4-uniform hypergraph on {0, ..., n-1}. Edges are stored as a bitmap over
/// the colex ranks of 4-subsets, so membership is O(1) and duplicates cannot
/// arise.
class Hypergraph4 {
 public:
  Hypergraph4() = default;
  explicit Hypergraph4(std::uint32_t n);

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return edges_; }

  /// Vertices must be distinct and < n; order does not matter.
  bool contains(Quad e) const;
  /// Returns true if the edge was new.
  bool insert(Quad e);
  /// Sorted edges, each sorted ascending.
  std::vector<Quad> edges() const;

  /// Union in place; both graphs must have the same n.
  void merge(const Hypergraph4& other);

  friend bool operator==(const Hypergraph4& a, const Hypergraph4& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  std::uint64_t rank(Quad e) const;

  std::uint32_t n_ = 0;
  std::uint64_t edges_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Rank of a sorted 4-subset in colex order: C(a,1) + C(b,2) + C(c,3) + C(d,4).
std::uint64_t colex_rank(const Quad& sorted);

struct DdsCaps {
  std::uint32_t max_points = 120;
};

/// {p, q, r, s} distinct with the six pairwise distances not pairwise distinct.
/// Buckets unordered pairs by distance and only expands colliding pairs.
Hypergraph4 singular_quadruples(const PrimeField& field, const std::vector<Point>& points, DdsCaps caps = {},
                                unsigned threads = 1);
/// The O(|E|^4) loop over every 4-subset.
Hypergraph4 singular_quadruples_naive(const PrimeField& field, const std::vector<Point>& points, DdsCaps caps = {},
                                      unsigned threads = 1);

/// Split of the edge set: an edge is a hinge edge when two pairs sharing a
/// point have equal distance, a zero edge when some pair is at distance 0.
struct SingularBreakdown {
  std::uint64_t edges = 0;
  std::uint64_t hinge_edges = 0;
  std::uint64_t hinge_free_edges = 0;
  std::uint64_t zero_edges = 0;
};

SingularBreakdown singular_breakdown(const PrimeField& field, const std::vector<Point>& points,
                                     const Hypergraph4& h);

struct SpencerFloor {
  std::uint64_t n = 0;
  unsigned k = 0;
  std::uint64_t m = 0;
  /// m >= n/k.
  bool hypothesis_ok = false;
  /// m == 0: the whole vertex set is independent.
  bool no_edges = false;
  /// floor((n^k/(km))^(1/(k-1))).
  Int root = 0;
  /// (1 - 1/k) * root; n when m == 0; unset when the hypothesis fails.
  std::optional<Rational> value;
  std::optional<Int> ceiling;
};

/// Throws InvalidArgument for k < 2.
SpencerFloor spencer_floor(std::uint64_t n, unsigned k, std::uint64_t m);

struct IndependentSetResult {
  std::vector<std::uint32_t> vertices;  ///< sorted
  unsigned rounds = 0;
  double keep_probability = 0;
  SpencerFloor floor;
};

/// Raised when 64 rounds never reach the floor; carries the best attempt.
class RoundLimitExceeded : public Error {
 public:
  RoundLimitExceeded(std::vector<std::uint32_t> best, std::uint64_t target);
  const std::vector<std::uint32_t>& best() const noexcept { return best_; }
  std::uint64_t target() const noexcept { return target_; }

 private:
  std::vector<std::uint32_t> best_;
  std::uint64_t target_;
};

struct IndependentSetOptions {
  unsigned max_rounds = 64;
  /// After deletion, re-add vertices in index order while independence holds.
  bool greedy_completion = true;
};

/// Sample-and-delete: keep each vertex with probability p, then drop one
/// random vertex of every edge still fully kept. Repeats until the Spencer
/// floor is met.
IndependentSetResult independent_set(const Hypergraph4& h, std::uint64_t seed, IndependentSetOptions options = {});

/// Scans every 4-subset of `vertices` against the edge set.
bool spans_no_edge(const Hypergraph4& h, const std::vector<std::uint32_t>& vertices);

struct DistinctDistanceCertificate {
  bool ok = true;
  /// x, y, z, t distinct with ||x - y|| = ||z - t||.
  std::optional<std::array<Point, 4>> witness;
};

/// No four distinct points x, y, z, t with ||x - y|| = ||z - t||. Equal
/// distances on pairs sharing a point are allowed.
DistinctDistanceCertificate verify_distinct_distance(const PrimeField& field, const std::vector<Point>& subset);

struct DdsResult {
  std::uint64_t n = 0;
  SingularBreakdown breakdown;
  SpencerFloor floor;
  std::vector<std::uint32_t> indices;
  std::vector<Point> subset;
  unsigned rounds = 0;
  /// Subset spans no edge of the hypergraph.
  bool independent = false;
  DistinctDistanceCertificate certificate;
  /// edges * q / |E|^4.
  double edge_constant = 0;
  /// Least x with x(x-1)/2 > q: any x points repeat a distance.
  std::uint64_t pigeonhole_threshold = 0;
  /// ceil(sqrt(2q)) + 1.
  std::uint64_t printed_cap = 0;
  bool within_pigeonhole = false;

  bool verified() const { return independent && certificate.ok; }
};

/// Planar only. Throws InvalidArgument for d != 2.
DdsResult dds_extract(const PrimeField& field, const std::vector<Point>& points, std::uint64_t seed, DdsCaps caps = {},
                      unsigned threads = 1, IndependentSetOptions options = {});

}  // namespace ffgeom
