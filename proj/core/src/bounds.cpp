#include "ffgeom/bounds.hpp"

#include "ffgeom/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ffgeom {

PointSet rotate_min_factor_last(const PointSet& product) {
  auto factors = product.factors();
  const auto smallest = std::min_element(factors.begin(), factors.end(),
                                         [](const auto& x, const auto& y) { return x.size() < y.size(); });
  std::rotate(smallest, smallest + 1, factors.end());
  return PointSet::from_product(product.field(), std::move(factors));
}

bool EmbeddingResult::pass() const {
  return n_direct == n_graph && max_mult_u <= 2 && max_mult_v <= 2 && within_printed_bound && dot_identity_ok;
}

EmbeddingResult mainlm_embedding(const PointSet& product, Residue a, Residue b, const ErGraph* er) {
  const PrimeField& field = product.field();
  const std::uint32_t q = field.order();
  const unsigned d = product.dimension();
  if (d < 2) throw InvalidArgument("embedding needs d >= 2");
  const auto& last = product.factors().back();
  if (!std::binary_search(last.begin(), last.end(), a) || !std::binary_search(last.begin(), last.end(), b))
    throw InvalidArgument("a and b must lie in the last coordinate set");

  ErGraph owned;
  if (er == nullptr) {
    owned = build_er_graph(field, 2 * d);
    er = &owned;
  }
  if (er->vertices.empty() || er->vertices.front().dimension() != 2 * d)
    throw InvalidArgument("embedding needs ER(F_q^{2d})");

  const auto points = product.points();
  std::vector<Point> xs, ys;
  for (const auto& p : points) {
    if (p.coords[d - 1] == a) xs.push_back(p);
    if (p.coords[d - 1] == b) ys.push_back(p);
  }

  EmbeddingResult r;
  r.a = a;
  r.b = b;

  // Brute force over (x, y, z, t).
  for (const auto& x : xs)
    for (const auto& z : points) {
      const Residue dxz = distance(field, x, z);
      for (const auto& y : ys)
        for (const auto& t : points) r.n_direct += distance(field, y, t) == dxz;
    }

  const Residue two = 2 % q;
  auto sum_sq_prefix = [&](const Point& p) {
    Residue s = 0;
    for (unsigned i = 0; i + 1 < d; ++i) s = field.add(s, field.square(p.coords[i]));
    return s;
  };
  // U indexed by (x, t): [-2x_1..-2x_{d-1}, 1, t_1..t_{d-1}, -(t_d-b)^2 - sum t_i^2 + sum x_i^2]
  auto make_u = [&](const Point& x, const Point& t) {
    std::vector<Residue> u;
    u.reserve(2 * d);
    for (unsigned i = 0; i + 1 < d; ++i) u.push_back(field.neg(field.mul(two, x.coords[i])));
    u.push_back(1);
    for (unsigned i = 0; i + 1 < d; ++i) u.push_back(t.coords[i]);
    u.push_back(field.add(field.sub(field.neg(field.square(field.sub(t.coords[d - 1], b))), sum_sq_prefix(t)),
                          sum_sq_prefix(x)));
    return u;
  };
  // V indexed by (z, y): [z_1..z_{d-1}, (z_d-a)^2 + sum z_i^2 - sum y_i^2, 2y_1..2y_{d-1}, 1]
  auto make_v = [&](const Point& z, const Point& y) {
    std::vector<Residue> v;
    v.reserve(2 * d);
    for (unsigned i = 0; i + 1 < d; ++i) v.push_back(z.coords[i]);
    v.push_back(field.sub(field.add(field.square(field.sub(z.coords[d - 1], a)), sum_sq_prefix(z)), sum_sq_prefix(y)));
    for (unsigned i = 0; i + 1 < d; ++i) v.push_back(field.mul(two, y.coords[i]));
    v.push_back(1);
    return v;
  };

  std::vector<std::pair<std::vector<Residue>, Residue>> us, vs;  // vector, ||x - .|| helper
  std::map<ProjPoint, std::uint64_t> mult_u, mult_v;
  std::vector<std::pair<const Point*, const Point*>> u_index, v_index;
  for (const auto& x : xs)
    for (const auto& t : points) {
      auto u = make_u(x, t);
      ++mult_u[normalize_projective(field, u)];
      us.emplace_back(std::move(u), 0);
      u_index.emplace_back(&x, &t);
    }
  for (const auto& z : points)
    for (const auto& y : ys) {
      auto v = make_v(z, y);
      ++mult_v[normalize_projective(field, v)];
      vs.emplace_back(std::move(v), 0);
      v_index.emplace_back(&z, &y);
    }
  r.size_u = us.size();
  r.size_v = vs.size();
  r.support_u = mult_u.size();
  r.support_v = mult_v.size();
  for (const auto& [p, m] : mult_u) r.max_mult_u = std::max(r.max_mult_u, m);
  for (const auto& [p, m] : mult_v) r.max_mult_v = std::max(r.max_mult_v, m);

  r.dot_identity_ok = true;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const auto& [x, t] = u_index[i];
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const auto& [z, y] = v_index[j];
      std::uint64_t dot = 0;
      for (unsigned c = 0; c < 2 * d; ++c) dot += std::uint64_t{us[i].first[c]} * vs[j].first[c] % q;
      const Residue expected = field.sub(distance(field, *x, *z), distance(field, *y, *t));
      r.dot_identity_ok = r.dot_identity_ok && dot % q == expected;
      ++r.dot_identity_checks;
    }
  }

  VertexMultiset bu, bv;
  for (const auto& [p, m] : mult_u) bu[er->index_of(p)] += m;
  for (const auto& [p, m] : mult_v) bv[er->index_of(p)] += m;
  r.mixing = mixing_edges(er->graph, bu, bv);
  r.n_graph = r.mixing.edges;

  const Int e = points.size();
  const Int ad = last.size();
  r.printed_bound = Rational(e * e * e * e, ad * ad * q) + Rational(2 * ipow(Int(q), d - 1) * e * e, ad);
  r.within_printed_bound = Rational(r.n_direct) <= r.printed_bound;
  return r;
}

ProductNuBound nu_square_bound_product(const PointSet& product) {
  const PrimeField& field = product.field();
  const std::uint32_t q = field.order();
  const PointSet rotated = rotate_min_factor_last(product);
  const auto nu = distance_distribution_product(field, rotated.factors());
  ProductNuBound r;
  r.lhs = quadruple_count(nu);
  r.rotation_invariant = nu == distance_distribution_product(field, product.factors());
  r.min_factor = rotated.factors().back().size();
  const Int e = product.size();
  r.rhs = Rational(e * e * e * e, q) + Rational(2 * ipow(Int(q), rotated.dimension() - 1) * e * e * r.min_factor);
  r.pass = Rational(r.lhs) < r.rhs;
  return r;
}

PlanarNuBound nu_square_bound_planar(const PrimeField& field, const std::vector<Point>& points, Rational constant) {
  if (points.empty() || points.front().dimension() != 2) throw InvalidArgument("planar bound needs points in F_q^2");
  const std::uint32_t q = field.order();
  PlanarNuBound r;
  r.size = points.size();
  r.constant = constant;
  const auto nu = distance_distribution_direct(field, points);
  r.lhs = quadruple_count(nu, true);
  r.size_hypothesis = r.size >= 4ull * q;
  const auto iso = isotropic_report(field, points, 0);
  r.isotropic_pairs = iso.ordered_pairs;
  r.isotropic_directions_exist = iso.isotropic_directions_exist;

  const Int e = r.size;
  const Rational e4_over_q(e * e * e * e, q);
  const Rational cq_e2 = constant * Rational(Int(q) * e * e);
  r.pass = le_offset_plus_sqrt(Rational(r.lhs), constant * e4_over_q, cq_e2 * cq_e2 * Rational(e));
  const double ed = static_cast<double>(r.size);
  const double base = std::pow(ed, 4) / q + q * std::pow(ed, 2.5);
  r.rhs = to_double(constant) * base;
  r.empirical_constant = static_cast<double>(r.lhs) / base;

  const auto hinges = hinge_counts(field, points);
  r.hinge_total = hinges.total_nonzero();
  r.eq5_holds = Int(r.lhs) <= e * r.hinge_total;

  // S <= A + sqrt(B2 (S/q + C0)) with A = |E|^4/q, B2 = q|E|^3, C0 = 2(q-1)|E|^2.
  const Rational big_a = e4_over_q;
  const Rational b2(Int(q) * e * e * e);
  const Rational c0(2 * Int(q - 1) * e * e);
  r.chain_holds = le_offset_plus_sqrt(Rational(r.lhs), big_a, b2 * (Rational(r.lhs, q) + c0));
  const double ad = to_double(big_a), b2d = to_double(b2), c0d = to_double(c0);
  const double lin = 2 * ad + b2d / q;
  r.chain_root = (lin + std::sqrt(std::max(0.0, lin * lin - 4 * (ad * ad - b2d * c0d)))) / 2;
  return r;
}

HingeBound hinge_upper_bound(const PrimeField& field, const std::vector<Point>& points, Rational constant) {
  if (points.empty() || points.front().dimension() != 2) throw InvalidArgument("hinge bound needs points in F_q^2");
  const std::uint32_t q = field.order();
  HingeBound r;
  r.size = points.size();
  r.constant = constant;
  const auto hinges = hinge_counts(field, points);
  r.hinge_total = hinges.total_nonzero();
  r.nu_sq_nonzero = quadruple_count(distance_distribution_direct(field, points), true);

  const Int e = r.size;
  const Rational e3_over_q(e * e * e, q);
  const Rational radicand =
      Rational(Int(q) * e) * (Rational(r.nu_sq_nonzero, q) + Rational(2 * Int(q - 1) * e * e));
  r.pass = le_offset_plus_sqrt(Rational(r.hinge_total), e3_over_q, radicand);
  r.bound = to_double(e3_over_q) + std::sqrt(to_double(radicand));
  r.corollary_applicable = e * e * e >= ipow(Int(q), 4);
  r.empirical_constant = static_cast<double>(r.hinge_total) / to_double(e3_over_q);
  r.corollary_pass = Rational(r.hinge_total) <= constant * e3_over_q;
  return r;
}

HingeLemmaCheck hinge_lemma_check(const PrimeField& field, const std::vector<Point>& points) {
  if (points.empty() || points.front().dimension() != 2) throw InvalidArgument("hinge lemma needs points in F_q^2");
  HingeLemmaCheck r;
  r.size = points.size();
  const auto nu = distance_distribution_direct(field, points);
  r.lhs = quadruple_count(nu, true);
  const auto hinges = hinge_counts(field, points);
  r.hinge_total = hinges.total_nonzero();
  r.identity_cross_checked = hinges.cross_checked;
  const Int eh = Int(r.size) * r.hinge_total;
  r.eq5 = Int(r.lhs) <= eh;
  r.quarter_ordered = 4 * Int(r.lhs) <= eh;
  // (nu/2)^2 summed is lhs/4, so the unordered form is lhs/4 <= |E| H / 4.
  r.quarter_unordered = Int(r.lhs) <= eh;
  r.size_hypothesis = r.size >= 4ull * field.order();
  r.no_isotropic_pairs = nu.counts[0] == r.size;
  r.q_three_mod_four = field.order() % 4 == 3;
  return r;
}

}  // namespace ffgeom
