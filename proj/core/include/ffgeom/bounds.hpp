#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/ff.hpp"
#include "ffgeom/pointset.hpp"
#include "ffgeom/specgraph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ffgeom {

/// Moves the first smallest factor of a product to the last coordinate,
/// keeping the others in order.
PointSet rotate_min_factor_last(const PointSet& product);

/// The quadruple count N(a, b) computed twice: by brute force and as the
/// number of edges between the multisets U and V of PG(q, 2d) in ER(F_q^{2d}).
struct EmbeddingResult {
  Residue a = 0, b = 0;
  Int n_direct = 0;
  Int n_graph = 0;
  std::uint64_t size_u = 0;  ///< |U| with multiplicity
  std::uint64_t size_v = 0;
  std::uint64_t support_u = 0;
  std::uint64_t support_v = 0;
  std::uint64_t max_mult_u = 0;
  std::uint64_t max_mult_v = 0;
  MixingResult mixing;
  /// |E|^4 |A_d|^-2 / q + 2 q^(d-1) |E|^2 |A_d|^-1.
  Rational printed_bound = 0;
  bool within_printed_bound = false;
  /// Number of (u, v) index pairs checked for u.v = 0 <=> ||x-z|| = ||y-t||.
  std::uint64_t dot_identity_checks = 0;
  bool dot_identity_ok = false;

  bool pass() const;
};

/// Requires a product set in F_q^d, d >= 2, with a, b in the last factor.
/// `er` must be ER(F_q^{2d}); pass nullptr to build it.
EmbeddingResult mainlm_embedding(const PointSet& product, Residue a, Residue b, const ErGraph* er = nullptr);

struct ProductNuBound {
  std::uint64_t lhs = 0;  ///< sum_t nu(t)^2
  Rational rhs = 0;       ///< |E|^4 / q + 2 q^(d-1) |E|^2 min|A_i|
  std::uint64_t min_factor = 0;
  bool rotation_invariant = false;
  bool pass = false;  ///< strict
};

ProductNuBound nu_square_bound_product(const PointSet& product);

struct PlanarNuBound {
  std::uint64_t size = 0;
  std::uint64_t lhs = 0;  ///< sum over lambda != 0 of nu^2
  Rational constant = 4;
  double rhs = 0;         ///< C (|E|^4/q + q |E|^(5/2)), display only
  bool pass = false;      ///< decided exactly
  double empirical_constant = 0;
  bool size_hypothesis = false;  ///< |E| >= 4q
  std::uint64_t isotropic_pairs = 0;
  bool isotropic_directions_exist = false;
  std::uint64_t hinge_total = 0;
  bool eq5_holds = false;   ///< lhs <= |E| * hinge_total
  bool chain_holds = false; ///< lhs <= |E|(|E|^3/q + sqrt(q|E|(lhs/q + 2(q-1)|E|^2)))
  double chain_root = 0;    ///< largest S solving the chain with equality
};

PlanarNuBound nu_square_bound_planar(const PrimeField& field, const std::vector<Point>& points, Rational constant = 4);

struct HingeBound {
  std::uint64_t size = 0;
  std::uint64_t hinge_total = 0;
  std::uint64_t nu_sq_nonzero = 0;
  double bound = 0;  ///< display only
  bool pass = false;
  bool corollary_applicable = false;  ///< |E| >= q^(4/3)
  double empirical_constant = 0;      ///< hinge_total / (|E|^3 / q)
  Rational constant = 4;
  bool corollary_pass = false;        ///< hinge_total <= C |E|^3 / q
};

HingeBound hinge_upper_bound(const PrimeField& field, const std::vector<Point>& points, Rational constant = 4);

struct HingeLemmaCheck {
  std::uint64_t size = 0;
  std::uint64_t lhs = 0;          ///< sum over lambda != 0 of nu^2 (ordered pairs)
  std::uint64_t hinge_total = 0;
  bool eq5 = false;               ///< lhs <= |E| * H
  bool quarter_ordered = false;   ///< lhs <= |E| H / 4, ordered nu
  bool quarter_unordered = false; ///< sum (nu/2)^2 <= |E| H / 4
  bool size_hypothesis = false;   ///< |E| >= 4q
  bool no_isotropic_pairs = false;
  bool q_three_mod_four = false;
  bool identity_cross_checked = false;
};

HingeLemmaCheck hinge_lemma_check(const PrimeField& field, const std::vector<Point>& points);

}  // namespace ffgeom
