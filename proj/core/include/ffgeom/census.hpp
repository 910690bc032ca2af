#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/ff.hpp"
#include "ffgeom/motions.hpp"
#include "ffgeom/pointset.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ffgeom {

/// Pairwise distances d_{i,j}, 0 <= i < j <= k, of an ordered (k+1)-tuple,
/// stored as the row-major upper triangle.
struct DistanceMatrix {
  unsigned k = 0;
  std::vector<Residue> upper;

  Residue at(unsigned i, unsigned j) const;
  /// "d01,d02,...,d12,..." in row-major order.
  std::string key() const;

  friend auto operator<=>(const DistanceMatrix&, const DistanceMatrix&) = default;
  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;
};

DistanceMatrix distance_matrix(const PrimeField& field, std::span<const Point> simplex);

/// mu over ordered (k+1)-tuples of E^{k+1}, repetitions allowed. Keys are the
/// row-major upper triangle packed base q with the first entry most
/// significant, so iteration order equals lexicographic order of matrices.
struct Census {
  std::uint32_t q = 0;
  unsigned k = 0;
  std::uint64_t set_size = 0;
  std::map<std::uint64_t, std::uint64_t> mu;
  bool exact = true;
  std::uint64_t samples = 0;

  Int total() const;
  std::size_t support_size() const { return mu.size(); }
  Int sum_squares() const;
  DistanceMatrix matrix(std::uint64_t packed) const;
  /// Classes sorted by count descending, ties by key.
  std::vector<std::pair<DistanceMatrix, std::uint64_t>> top(std::size_t limit) const;
};

std::uint64_t pack_distance_matrix(std::uint32_t q, const DistanceMatrix& m);

/// Throws CapExceeded when |E|^{k+1} exceeds work_cap.
Census simplex_census(const PrimeField& field, const std::vector<Point>& points, unsigned k, unsigned threads = 1,
                      std::uint64_t work_cap = 100'000'000);

/// Seeded uniform tuple sampling; the result has exact = false and counts are
/// raw sample hits, not estimates of mu.
Census sampled_census(const PrimeField& field, const std::vector<Point>& points, unsigned k, std::uint64_t samples,
                      std::uint64_t seed);

struct CauchySchwarzBound {
  Rational lower_bound = 0;  ///< (sum mu)^2 / sum mu^2
  std::uint64_t exact_support = 0;
  bool holds = false;
};

CauchySchwarzBound cauchy_schwarz_lower_bound(std::span<const std::uint64_t> counts);
CauchySchwarzBound cauchy_schwarz_lower_bound(const Census& census);

struct PowerSumCheck {
  Rational lhs = 0;
  Rational rhs = 0;
  bool pass = false;
};

/// sum f^n <= |V| mean^n + n(n-1)/2 max(f)^(n-2) sum (f - mean)^2, for
/// f: V -> R>=0 given as |V| values.
/// Decided in exact rational arithmetic. Throws InvalidArgument for n < 2.
PowerSumCheck power_sum_check(std::span<const std::uint64_t> f, unsigned n);

/// Congruence orbits of E^{k+1} under rigid motions, with stabilizers.
struct OrbitClass {
  std::uint64_t count = 0;
  std::uint64_t stabilizer = 0;
  unsigned affine_rank = 0;
  std::uint64_t distance_key = 0;
};

struct OrbitCensus {
  std::map<std::vector<std::uint64_t>, OrbitClass> orbits;
  /// Per distance class: stabilizer of the first tuple met in enumeration order.
  std::map<std::uint64_t, std::uint64_t> representative_stabilizer;
  /// Per distance class: number of congruence orbits it splits into.
  std::map<std::uint64_t, std::uint64_t> orbits_per_class;
};

OrbitCensus congruence_orbit_census(const PrimeField& field, const std::vector<Point>& points, unsigned k,
                                    const std::vector<OrthMatrix>& group, std::uint64_t work_cap = 20'000'000);

struct ChainLink {
  std::string name;
  Rational lhs = 0;
  Rational rhs = 0;
  bool pass = false;
  /// Gating links decide the report's verdict; the rest are diagnostics.
  bool gating = true;
  std::string note;
};

struct ChainReport {
  std::uint32_t q = 0;
  unsigned d = 0;
  unsigned k = 0;
  std::uint64_t set_size = 0;
  std::uint64_t min_factor = 0;  ///< |A_d| for products, 0 otherwise
  std::uint64_t group_order = 0;      ///< |O(d)|
  std::uint64_t subgroup_order = 0;   ///< |O(d-1)|
  std::uint64_t w = 0;
  Int s1 = 0, s2 = 0;
  std::uint64_t max_w = 0;
  std::uint64_t support_size = 0;
  Int census_total = 0;
  Int census_sum_squares = 0;
  std::vector<ChainLink> links;

  bool pass() const;
};

struct ChainCaps {
  std::uint32_t max_q_dim2 = 13;
  std::uint32_t max_q_dim3 = 7;
  bool allow_dimension_three = false;
  std::uint64_t census_work_cap = 20'000'000;
};

/// Every quantity of the product-set simplex-counting proof, evaluated with
/// enumerated group orders, and each inequality checked exactly.
ChainReport theorem_chain_report(const PointSet& set, unsigned k, ChainCaps caps = {}, unsigned threads = 1);

struct ThresholdItem {
  std::string name;
  bool applicable = false;
  std::string condition;
  Rational exponent = 0;   ///< threshold exponent of q, when the condition is |E| >= q^exponent
  double ratio = 0;        ///< measured / threshold
  bool satisfied = false;  ///< ratio >= 1, decided exactly
  bool boundary = false;   ///< ratio == 1 exactly
  std::string note;
};

struct ThresholdReport {
  std::uint64_t q = 0;
  unsigned d = 0;
  unsigned k = 0;
  std::vector<std::uint64_t> sizes;  ///< |A_i| (product) or {|E|}
  std::uint64_t set_size = 0;
  Int target_classes = 0;  ///< q^{C(k+1,2)}
  std::vector<ThresholdItem> items;
  std::optional<std::uint64_t> measured_classes;
};

/// Pure arithmetic over the hypotheses. q need not be prime here.
ThresholdReport threshold_report(std::uint64_t q, unsigned d, unsigned k, std::vector<std::uint64_t> sizes,
                                 std::optional<std::uint64_t> measured_classes = std::nullopt);

}  // namespace ffgeom
