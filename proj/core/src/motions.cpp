#include "ffgeom/motions.hpp"

#include "ffgeom/error.hpp"
#include "ffgeom/parallel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace ffgeom {

OrthMatrix OrthMatrix::from_entries(const PrimeField& field, unsigned n, std::vector<Residue> entries) {
  if (entries.size() != std::size_t{n} * n) throw InvalidArgument("orthogonal matrix has the wrong number of entries");
  for (Residue e : entries)
    if (e >= field.order()) throw InvalidArgument("matrix entry out of range");
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      std::uint64_t dot = 0;
      for (unsigned k = 0; k < n; ++k) dot += std::uint64_t{entries[k * n + i]} * entries[k * n + j] % field.order();
      if (dot % field.order() != (i == j ? 1u : 0u)) throw InvalidArgument("matrix is not orthogonal");
    }
  return OrthMatrix(n, std::move(entries));
}

OrthMatrix OrthMatrix::identity(unsigned n) {
  std::vector<Residue> e(std::size_t{n} * n, 0);
  for (unsigned i = 0; i < n; ++i) e[i * n + i] = 1;
  return OrthMatrix(n, std::move(e));
}

Point OrthMatrix::apply(const PrimeField& field, const Point& x) const {
  if (x.dimension() != n_) throw InvalidArgument("dimension mismatch applying orthogonal matrix");
  Point out;
  out.coords.resize(n_);
  for (unsigned i = 0; i < n_; ++i) {
    std::uint64_t acc = 0;
    for (unsigned j = 0; j < n_; ++j) acc += std::uint64_t{entries_[i * n_ + j]} * x.coords[j] % field.order();
    out.coords[i] = static_cast<Residue>(acc % field.order());
  }
  return out;
}

OrthMatrix OrthMatrix::compose(const PrimeField& field, const OrthMatrix& rhs) const {
  if (rhs.n_ != n_) throw InvalidArgument("dimension mismatch composing orthogonal matrices");
  std::vector<Residue> e(std::size_t{n_} * n_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      std::uint64_t acc = 0;
      for (unsigned k = 0; k < n_; ++k) acc += std::uint64_t{at(i, k)} * rhs.at(k, j) % field.order();
      e[i * n_ + j] = static_cast<Residue>(acc % field.order());
    }
  return OrthMatrix(n_, std::move(e));
}

OrthMatrix OrthMatrix::transpose() const {
  std::vector<Residue> e(entries_.size());
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) e[j * n_ + i] = at(i, j);
  return OrthMatrix(n_, std::move(e));
}

Residue OrthMatrix::determinant(const PrimeField& field) const {
  std::vector<Residue> m = entries_;
  Residue det = 1;
  for (unsigned col = 0; col < n_; ++col) {
    unsigned pivot = col;
    while (pivot < n_ && m[pivot * n_ + col] == 0) ++pivot;
    if (pivot == n_) return 0;
    if (pivot != col) {
      for (unsigned k = 0; k < n_; ++k) std::swap(m[pivot * n_ + k], m[col * n_ + k]);
      det = field.neg(det);
    }
    det = field.mul(det, m[col * n_ + col]);
    const Residue inv = field.inv(m[col * n_ + col]);
    for (unsigned r = col + 1; r < n_; ++r) {
      const Residue f = field.mul(m[r * n_ + col], inv);
      for (unsigned k = col; k < n_; ++k) m[r * n_ + k] = field.sub(m[r * n_ + k], field.mul(f, m[col * n_ + k]));
    }
  }
  return det;
}

std::vector<OrthMatrix> enumerate_orthogonal(const PrimeField& field, unsigned n, OrthogonalCaps caps) {
  const std::uint32_t q = field.order();
  if (n == 0) return {OrthMatrix::identity(0)};
  if (n >= 4 && !caps.allow_dimension_four) throw CapExceeded("O(n, F_q) enumeration dimension", n, 3);
  if (n > 4) throw CapExceeded("O(n, F_q) enumeration dimension", n, 4);
  if (n >= 3 && q > caps.max_q_dim3) throw CapExceeded("O(n, F_q) enumeration field size", q, caps.max_q_dim3);

  // Unit vectors of F_q^n.
  std::vector<Point> units;
  const std::uint64_t total = space_size(q, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    Point p = decode_point(q, n, code);
    if (norm(field, p) == 1) units.push_back(std::move(p));
  }
  auto dot = [&](const Point& a, const Point& b) {
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < n; ++i) acc += std::uint64_t{a.coords[i]} * b.coords[i] % q;
    return acc % q;
  };

  std::vector<OrthMatrix> out;
  std::vector<const Point*> cols(n);
  auto recurse = [&](auto&& self, unsigned depth) -> void {
    if (depth == n) {
      std::vector<Residue> e(std::size_t{n} * n);
      for (unsigned c = 0; c < n; ++c)
        for (unsigned r = 0; r < n; ++r) e[r * n + c] = cols[c]->coords[r];
      out.push_back(OrthMatrix(n, std::move(e)));
      return;
    }
    for (const auto& u : units) {
      bool ok = true;
      for (unsigned c = 0; c < depth && ok; ++c) ok = dot(*cols[c], u) == 0;
      if (!ok) continue;
      cols[depth] = &u;
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Residue, Residue>> unit_circle(const PrimeField& field) {
  std::vector<std::pair<Residue, Residue>> out;
  for (Residue a = 0; a < field.order(); ++a)
    for (Residue b = 0; b < field.order(); ++b)
      if (field.add(field.square(a), field.square(b)) == 1) out.emplace_back(a, b);
  const std::size_t expected = field.minus_one_is_square() ? field.order() - 1 : field.order() + 1;
  if (out.size() != expected) throw std::logic_error("unit circle has unexpected size");
  return out;
}

Reflection2D make_reflection(const PrimeField& field, Residue a, Residue b, Point u) {
  if (u.dimension() != 2) throw InvalidArgument("reflection center must lie in F_q^2");
  if (a >= field.order() || b >= field.order() || field.add(field.square(a), field.square(b)) != 1)
    throw InvalidArgument("reflection needs a^2 + b^2 = 1");
  return Reflection2D{a, b, std::move(u)};
}

Point apply_reflection(const PrimeField& field, const Reflection2D& r, const Point& x) {
  if (x.dimension() != 2) throw InvalidArgument("reflections act on F_q^2");
  const Residue dx = field.sub(x.coords[0], r.u.coords[0]);
  const Residue dy = field.sub(x.coords[1], r.u.coords[1]);
  const Residue rx = field.add(field.mul(r.a, dx), field.mul(r.b, dy));
  const Residue ry = field.sub(field.mul(r.b, dx), field.mul(r.a, dy));
  return Point{{field.add(rx, r.u.coords[0]), field.add(ry, r.u.coords[1])}};
}

std::vector<Reflection2D> enumerate_reflections(const PrimeField& field) {
  // R_u(x) = R x + (I - R) u; two centers give the same map iff (I - R) u agrees.
  const std::uint32_t q = field.order();
  std::vector<Reflection2D> out;
  const Point origin{{0, 0}};
  for (auto [a, b] : unit_circle(field)) {
    std::set<Point> translations;
    for (Residue ux = 0; ux < q; ++ux)
      for (Residue uy = 0; uy < q; ++uy) {
        Reflection2D r{a, b, Point{{ux, uy}}};
        if (translations.insert(apply_reflection(field, r, origin)).second) out.push_back(std::move(r));
      }
  }
  return out;
}

Point Motion::apply(const PrimeField& field, const Point& x) const {
  Point y = theta.apply(field, x);
  if (z.dimension() != y.dimension()) throw InvalidArgument("motion translation has the wrong dimension");
  for (std::size_t i = 0; i < y.coords.size(); ++i) y.coords[i] = field.add(y.coords[i], z.coords[i]);
  return y;
}

std::uint64_t w_count(const PrimeField& field, const std::vector<Point>& points, const Motion& motion) {
  std::unordered_set<std::uint64_t> members;
  members.reserve(points.size() * 2);
  for (const auto& p : points) members.insert(encode_point(field.order(), p));
  std::uint64_t count = 0;
  for (const auto& u : points) count += members.count(encode_point(field.order(), motion.apply(field, u)));
  return count;
}

std::vector<std::vector<std::uint32_t>> motion_profiles(const PrimeField& field, const std::vector<Point>& points,
                                                        const std::vector<OrthMatrix>& group, unsigned threads) {
  if (group.empty() || points.empty()) return {};
  const unsigned d = group.front().dimension();
  const std::uint32_t q = field.order();
  const std::uint64_t space = space_size(q, d);
  std::vector<std::uint64_t> point_codes;
  for (const auto& p : points) point_codes.push_back(encode_point(q, p));

  std::vector<std::vector<std::uint32_t>> profiles(group.size());
  parallel_chunks(group.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      auto& prof = profiles[g];
      prof.assign(space, 0);
      std::vector<Point> images;
      images.reserve(points.size());
      for (const auto& u : points) images.push_back(group[g].apply(field, u));
      // z = v - theta(u)
      for (const auto& v : points)
        for (const auto& img : images) {
          std::uint64_t code = 0;
          for (std::size_t i = d; i-- > 0;) code = code * q + field.sub(v.coords[i], img.coords[i]);
          ++prof[code];
        }
    }
  });
  return profiles;
}

MotionStatistics motion_statistics(const std::vector<std::vector<std::uint32_t>>& profiles, unsigned k) {
  MotionStatistics s;
  for (const auto& prof : profiles) {
    s.motions += prof.size();
    for (std::uint32_t w : prof) {
      if (w == 0) continue;
      s.s1 += Int(w) * w;
      s.s2 += ipow(Int(w), k + 1);
      s.max_w = std::max<std::uint64_t>(s.max_w, w);
    }
  }
  return s;
}

MotionStatistics motion_statistics(const PrimeField& field, const std::vector<Point>& points, unsigned d, unsigned k,
                                   MotionCaps caps, unsigned threads) {
  const std::uint32_t q = field.order();
  if (d == 2 && q > caps.max_q_dim2) throw CapExceeded("motion sweep field size (d=2)", q, caps.max_q_dim2);
  if (d == 3) {
    if (!caps.allow_dimension_three) throw CapExceeded("motion sweep dimension", 3, 2);
    if (q > caps.max_q_dim3) throw CapExceeded("motion sweep field size (d=3)", q, caps.max_q_dim3);
  }
  if (d != 2 && d != 3) throw CapExceeded("motion sweep dimension", d, 3);
  OrthogonalCaps oc;
  oc.max_q_dim3 = std::max(oc.max_q_dim3, caps.max_q_dim3);
  const auto group = enumerate_orthogonal(field, d, oc);
  return motion_statistics(motion_profiles(field, points, group, threads), k);
}

std::uint64_t stabilizer_size(const PrimeField& field, std::span<const Point> simplex,
                              const std::vector<OrthMatrix>& group) {
  if (simplex.empty()) throw InvalidArgument("empty simplex");
  std::uint64_t count = 0;
  for (const auto& theta : group) {
    const Point img0 = theta.apply(field, simplex[0]);
    Point z;
    z.coords.resize(img0.dimension());
    for (std::size_t i = 0; i < z.coords.size(); ++i) z.coords[i] = field.sub(simplex[0].coords[i], img0.coords[i]);
    const Motion m{theta, z};
    bool fixes = true;
    for (std::size_t i = 1; i < simplex.size() && fixes; ++i) fixes = m.apply(field, simplex[i]) == simplex[i];
    count += fixes;
  }
  return count;
}

unsigned affine_rank(const PrimeField& field, std::span<const Point> simplex) {
  if (simplex.size() < 2) return 0;
  const std::size_t d = simplex[0].dimension();
  std::vector<std::vector<Residue>> rows;
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    std::vector<Residue> r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = field.sub(simplex[i].coords[j], simplex[0].coords[j]);
    rows.push_back(std::move(r));
  }
  unsigned rank = 0;
  for (std::size_t col = 0; col < d && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const Residue inv = field.inv(rows[rank][col]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Residue f = field.mul(rows[r][col], inv);
      for (std::size_t j = col; j < d; ++j) rows[r][j] = field.sub(rows[r][j], field.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

std::vector<std::uint64_t> congruence_key(const PrimeField& field, std::span<const Point> simplex,
                                          const std::vector<OrthMatrix>& group) {
  if (simplex.empty()) throw InvalidArgument("empty simplex");
  const std::uint32_t q = field.order();
  std::vector<Point> diffs;
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    Point v;
    v.coords.resize(simplex[i].dimension());
    for (std::size_t j = 0; j < v.coords.size(); ++j) v.coords[j] = field.sub(simplex[i].coords[j], simplex[0].coords[j]);
    diffs.push_back(std::move(v));
  }
  std::vector<std::uint64_t> best;
  std::vector<std::uint64_t> cur(diffs.size());
  for (const auto& theta : group) {
    for (std::size_t i = 0; i < diffs.size(); ++i) cur[i] = encode_point(q, theta.apply(field, diffs[i]));
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

}  // namespace ffgeom
