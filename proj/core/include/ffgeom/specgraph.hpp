#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/ff.hpp"
#include "ffgeom/pointset.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ffgeom {

/// The (n, degree, lambda) parameters a construction claims. lambda is kept as
/// its exact square because q^{(m-2)/2} is irrational for odd m.
struct DeclaredParams {
  std::uint64_t n = 0;
  std::uint64_t degree = 0;
  Rational lambda_sq = 0;
  std::string lambda_text;

  double lambda() const;
};

/// An undirected graph with loops, plus the parameters its construction
/// declares. A loop contributes 1 to its vertex's degree and a 1 on the
/// diagonal of the adjacency matrix.
class NDLGraph {
 public:
  NDLGraph() = default;
  /// Builds from an edge list of unordered pairs (i, j), i == j for loops.
  /// Duplicate edges are merged.
  NDLGraph(std::string name, std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
           DeclaredParams declared);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return neighbors_.size(); }
  bool adjacent(std::uint32_t i, std::uint32_t j) const { return adj_[std::size_t{i} * size() + j]; }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t i) const { return neighbors_.at(i); }
  std::uint64_t degree(std::uint32_t i) const { return neighbors_.at(i).size(); }
  std::uint64_t loop_count() const;
  bool is_symmetric() const;

  const DeclaredParams& declared() const noexcept { return declared_; }
  DeclaredParams& declared() noexcept { return declared_; }

  /// "i j" per line with i <= j.
  std::string edge_list() const;

 private:
  std::string name_;
  std::vector<std::vector<std::uint32_t>> neighbors_;
  std::vector<bool> adj_;
  DeclaredParams declared_;
};

/// ER(F_q^m): vertices PG(q, m), [x] ~ [y] iff x . y = 0 (loops included).
struct ErGraph {
  NDLGraph graph;
  std::vector<ProjPoint> vertices;
  std::map<ProjPoint, std::uint32_t> index;

  std::uint32_t index_of(const ProjPoint& p) const;
};

ErGraph build_er_graph(const PrimeField& field, unsigned m, std::uint64_t vertex_cap = 10'000);

/// RF_lambda(F_q^2): ordered pairs (x, y) with ||x - y|| = lambda, adjacent
/// when one point reflection maps x to z and y to w.
struct ReflectionGraph {
  NDLGraph graph;
  std::vector<std::pair<Point, Point>> vertices;
  /// +1 when q = 3 mod 4 (circle of size q+1), -1 when q = 1 mod 4.
  int branch = 0;
  std::uint64_t reflection_count = 0;
};

ReflectionGraph build_reflection_graph(const PrimeField& field, Residue lambda, std::uint64_t vertex_cap = 10'000);

NDLGraph complete_graph(std::size_t n);

struct Spectrum {
  /// Eigenvalues, descending.
  std::vector<double> eigenvalues;
  double perron = 0;
  /// Second-largest absolute eigenvalue after removing one copy of the
  /// largest-magnitude eigenvalue.
  double lambda2 = 0;
};

/// Dense symmetric eigensolve. Throws CapExceeded above `cap` vertices and
/// std::logic_error if the adjacency is not symmetric.
Spectrum second_eigenvalue(const NDLGraph& g, std::size_t cap = 5000);

struct SpectrumCheck {
  std::uint64_t n = 0;
  std::uint64_t degree_min = 0;
  std::uint64_t degree_max = 0;
  Spectrum spectrum;
  bool n_ok = false;
  bool regular_ok = false;
  bool lambda_ok = false;

  bool pass() const { return n_ok && regular_ok && lambda_ok; }
};

/// Measured against declared parameters; lambda compared at 1e-6.
SpectrumCheck check_parameters(const NDLGraph& g, std::size_t cap = 5000);

using VertexMultiset = std::map<std::uint32_t, std::uint64_t>;

struct MixingResult {
  Int edges = 0;
  Int size_b = 0;
  Int size_c = 0;
  Int sum_sq_b = 0;
  Int sum_sq_c = 0;
  Rational main_term = 0;
  /// lambda^2 * sum m_B^2 * sum m_C^2.
  Rational error_bound_sq = 0;
  bool holds = false;

  double error_bound() const;
};

/// e(B, C) over ordered pairs with multiplicity, against the declared
/// parameters of g. The inequality is decided exactly.
MixingResult mixing_edges(const NDLGraph& g, const VertexMultiset& b, const VertexMultiset& c);

}  // namespace ffgeom
