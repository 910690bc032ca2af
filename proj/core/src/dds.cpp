#include "ffgeom/dds.hpp"

#include "ffgeom/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace ffgeom {

namespace {

std::uint64_t choose(std::uint64_t n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Quad sorted(Quad e) {
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<Residue> distance_table(const PrimeField& field, const std::vector<Point>& points) {
  const std::size_t n = points.size();
  std::vector<Residue> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) table[i * n + j] = table[j * n + i] = distance(field, points[i], points[j]);
  return table;
}

void check_input(const std::vector<Point>& points, DdsCaps caps) {
  if (points.size() > caps.max_points) throw CapExceeded("singular quadruple enumeration", points.size(), caps.max_points);
  for (const auto& p : points)
    if (p.dimension() != 2) throw InvalidArgument("singular quadruples are planar: points must lie in F_q^2");
}

// Uniform double in [0, 1) from the top 53 bits, so runs agree across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::uint64_t colex_rank(const Quad& e) {
  return choose(e[0], 1) + choose(e[1], 2) + choose(e[2], 3) + choose(e[3], 4);
}

Hypergraph4::Hypergraph4(std::uint32_t n) : n_(n), bits_((choose(n, 4) + 63) / 64, 0) {}

std::uint64_t Hypergraph4::rank(Quad e) const {
  e = sorted(e);
  if (e[3] >= n_) throw InvalidArgument("hyperedge vertex out of range");
  if (e[0] == e[1] || e[1] == e[2] || e[2] == e[3]) throw InvalidArgument("hyperedge vertices must be distinct");
  return colex_rank(e);
}

bool Hypergraph4::contains(Quad e) const {
  const std::uint64_t r = rank(e);
  return (bits_[r / 64] >> (r % 64)) & 1u;
}

bool Hypergraph4::insert(Quad e) {
  const std::uint64_t r = rank(e);
  const std::uint64_t mask = std::uint64_t{1} << (r % 64);
  if (bits_[r / 64] & mask) return false;
  bits_[r / 64] |= mask;
  ++edges_;
  return true;
}

std::vector<Quad> Hypergraph4::edges() const {
  std::vector<Quad> out;
  out.reserve(edges_);
  for (std::uint32_t a = 0; a < n_; ++a)
    for (std::uint32_t b = a + 1; b < n_; ++b)
      for (std::uint32_t c = b + 1; c < n_; ++c)
        for (std::uint32_t d = c + 1; d < n_; ++d)
          if (contains({a, b, c, d})) out.push_back({a, b, c, d});
  return out;
}

void Hypergraph4::merge(const Hypergraph4& other) {
  if (other.n_ != n_) throw InvalidArgument("hypergraph merge needs equal vertex counts");
  edges_ = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    bits_[i] |= other.bits_[i];
    edges_ += std::popcount(bits_[i]);
  }
}

Hypergraph4 singular_quadruples(const PrimeField& field, const std::vector<Point>& points, DdsCaps caps,
                                unsigned threads) {
  check_input(points, caps);
  const auto n = static_cast<std::uint32_t>(points.size());
  const auto table = distance_table(field, points);

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> buckets(field.order());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) buckets[table[std::size_t{i} * n + j]].emplace_back(i, j);

  // One task per (bucket, first pair); only buckets with a collision matter.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tasks;
  for (std::uint32_t t = 0; t < buckets.size(); ++t)
    for (std::uint32_t a = 0; a + 1 < buckets[t].size(); ++a) tasks.emplace_back(t, a);

  std::vector<Hypergraph4> partial(chunk_count(tasks.size(), threads), Hypergraph4(n));
  parallel_chunks(tasks.size(), threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Hypergraph4& h = partial[chunk];
    for (std::size_t task = begin; task < end; ++task) {
      const auto& bucket = buckets[tasks[task].first];
      const auto [i, j] = bucket[tasks[task].second];
      for (std::size_t b = tasks[task].second + 1; b < bucket.size(); ++b) {
        const auto [k, l] = bucket[b];
        if (k != i && k != j && l != i && l != j) {
          h.insert({i, j, k, l});
          continue;
        }
        // A hinge: every fourth point completes a singular quadruple.
        const std::uint32_t third = (k == i || k == j) ? l : k;
        for (std::uint32_t w = 0; w < n; ++w)
          if (w != i && w != j && w != third) h.insert({i, j, third, w});
      }
    }
  });
  Hypergraph4 out(n);
  for (const auto& h : partial) out.merge(h);
  return out;
}

Hypergraph4 singular_quadruples_naive(const PrimeField& field, const std::vector<Point>& points, DdsCaps caps,
                                      unsigned threads) {
  check_input(points, caps);
  const auto n = static_cast<std::uint32_t>(points.size());
  const auto table = distance_table(field, points);
  auto dist = [&](std::uint32_t x, std::uint32_t y) { return table[std::size_t{x} * n + y]; };

  std::vector<Hypergraph4> partial(chunk_count(n, threads), Hypergraph4(n));
  parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (auto a = static_cast<std::uint32_t>(begin); a < end; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b)
        for (std::uint32_t c = b + 1; c < n; ++c)
          for (std::uint32_t d = c + 1; d < n; ++d) {
            std::array<Residue, 6> six{dist(a, b), dist(a, c), dist(a, d), dist(b, c), dist(b, d), dist(c, d)};
            std::sort(six.begin(), six.end());
            if (std::adjacent_find(six.begin(), six.end()) != six.end()) partial[chunk].insert({a, b, c, d});
          }
  });
  Hypergraph4 out(n);
  for (const auto& h : partial) out.merge(h);
  return out;
}

SingularBreakdown singular_breakdown(const PrimeField& field, const std::vector<Point>& points,
                                     const Hypergraph4& h) {
  const auto n = static_cast<std::uint32_t>(points.size());
  if (n != h.vertex_count()) throw InvalidArgument("hypergraph and point list sizes differ");
  const auto table = distance_table(field, points);
  auto dist = [&](std::uint32_t x, std::uint32_t y) { return table[std::size_t{x} * n + y]; };

  SingularBreakdown r;
  r.edges = h.edge_count();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      for (std::uint32_t c = b + 1; c < n; ++c)
        for (std::uint32_t d = c + 1; d < n; ++d) {
          if (!h.contains({a, b, c, d})) continue;
          const std::array<std::uint32_t, 4> v{a, b, c, d};
          bool hinge = false, zero = false;
          for (unsigned p = 0; p < 4 && !hinge; ++p)
            for (unsigned x = 0; x < 4 && !hinge; ++x)
              for (unsigned y = x + 1; y < 4; ++y)
                if (x != p && y != p && dist(v[p], v[x]) == dist(v[p], v[y])) {
                  hinge = true;
                  break;
                }
          for (unsigned x = 0; x < 4; ++x)
            for (unsigned y = x + 1; y < 4; ++y) zero = zero || dist(v[x], v[y]) == 0;
          r.hinge_edges += hinge;
          r.zero_edges += zero;
        }
  r.hinge_free_edges = r.edges - r.hinge_edges;
  return r;
}

SpencerFloor spencer_floor(std::uint64_t n, unsigned k, std::uint64_t m) {
  if (k < 2) throw InvalidArgument("Spencer bound needs k >= 2");
  SpencerFloor r;
  r.n = n;
  r.k = k;
  r.m = m;
  if (m == 0) {
    r.no_edges = true;
    r.value = Rational(n);
    r.ceiling = Int(n);
    return r;
  }
  r.hypothesis_ok = Int(k) * m >= n;
  if (!r.hypothesis_ok) return r;
  const Int nk = ipow(Int(n), k);
  r.root = integer_root(nk / (Int(k) * m), k - 1);
  r.value = Rational(Int(k - 1) * r.root, Int(k));
  const Int num = numerator(*r.value), den = denominator(*r.value);
  r.ceiling = (num + den - 1) / den;
  return r;
}

RoundLimitExceeded::RoundLimitExceeded(std::vector<std::uint32_t> best, std::uint64_t target)
    : Error("independent set round limit exceeded: best size " + std::to_string(best.size()) + ", target " +
            std::to_string(target)),
      best_(std::move(best)),
      target_(target) {}

bool spans_no_edge(const Hypergraph4& h, const std::vector<std::uint32_t>& v) {
  const std::size_t s = v.size();
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a + 1; b < s; ++b)
      for (std::size_t c = b + 1; c < s; ++c)
        for (std::size_t d = c + 1; d < s; ++d)
          if (h.contains({v[a], v[b], v[c], v[d]})) return false;
  return true;
}

IndependentSetResult independent_set(const Hypergraph4& h, std::uint64_t seed, IndependentSetOptions options) {
  const std::uint32_t n = h.vertex_count();
  IndependentSetResult r;
  r.floor = spencer_floor(n, 4, h.edge_count());
  if (r.floor.no_edges) {
    r.vertices.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) r.vertices[v] = v;
    r.keep_probability = 1;
    return r;
  }

  double p = 1;
  if (r.floor.hypothesis_ok) {
    const double nd = n;
    p = std::cbrt(std::pow(nd, 4) / (4.0 * static_cast<double>(h.edge_count()))) / nd;
    p = std::clamp(p, 0.0, 1.0);
  }
  r.keep_probability = p;
  // Without the hypothesis there is no floor to reach; one round is returned as is.
  const bool has_target = r.floor.ceiling.has_value();
  const std::uint64_t target = has_target ? static_cast<std::uint64_t>(*r.floor.ceiling) : 0;

  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> best;
  for (unsigned round = 1; round <= options.max_rounds; ++round) {
    std::vector<std::uint32_t> kept;
    for (std::uint32_t v = 0; v < n; ++v)
      if (unit(rng) < p) kept.push_back(v);

    std::vector<char> alive(kept.size(), 1);
    const std::size_t s = kept.size();
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = a + 1; b < s && alive[a]; ++b)
        for (std::size_t c = b + 1; c < s && alive[a] && alive[b]; ++c)
          for (std::size_t d = c + 1; d < s && alive[a] && alive[b] && alive[c]; ++d) {
            if (!alive[d] || !h.contains({kept[a], kept[b], kept[c], kept[d]})) continue;
            const std::array<std::size_t, 4> edge{a, b, c, d};
            alive[edge[rng() % 4]] = 0;
          }
    std::vector<std::uint32_t> set;
    for (std::size_t i = 0; i < s; ++i)
      if (alive[i]) set.push_back(kept[i]);

    if (options.greedy_completion) {
      std::vector<char> in(n, 0);
      for (auto v : set) in[v] = 1;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (in[v]) continue;
        bool free = true;
        const std::size_t t = set.size();
        for (std::size_t a = 0; a < t && free; ++a)
          for (std::size_t b = a + 1; b < t && free; ++b)
            for (std::size_t c = b + 1; c < t && free; ++c) free = !h.contains({set[a], set[b], set[c], v});
        if (free) {
          set.push_back(v);
          in[v] = 1;
        }
      }
      std::sort(set.begin(), set.end());
    }

    r.rounds = round;
    if (set.size() > best.size() || round == 1) best = set;
    if (!has_target || set.size() >= target) {
      r.vertices = std::move(set);
      return r;
    }
  }
  throw RoundLimitExceeded(std::move(best), target);
}

DistinctDistanceCertificate verify_distinct_distance(const PrimeField& field, const std::vector<Point>& subset) {
  DistinctDistanceCertificate cert;
  const std::size_t n = subset.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> buckets(field.order());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) buckets[distance(field, subset[i], subset[j])].emplace_back(i, j);
  for (const auto& bucket : buckets)
    for (std::size_t a = 0; a < bucket.size(); ++a)
      for (std::size_t b = a + 1; b < bucket.size(); ++b) {
        const auto [x, y] = bucket[a];
        const auto [z, t] = bucket[b];
        if (z == x || z == y || t == x || t == y) continue;
        cert.ok = false;
        cert.witness = std::array<Point, 4>{subset[x], subset[y], subset[z], subset[t]};
        return cert;
      }
  return cert;
}

DdsResult dds_extract(const PrimeField& field, const std::vector<Point>& points, std::uint64_t seed, DdsCaps caps,
                      unsigned threads, IndependentSetOptions options) {
  for (const auto& p : points)
    if (p.dimension() != 2) throw InvalidArgument("distinct distance extraction is implemented for d = 2 only");
  const Hypergraph4 h = singular_quadruples(field, points, caps, threads);
  DdsResult r;
  r.n = points.size();
  r.breakdown = singular_breakdown(field, points, h);
  const auto is = independent_set(h, seed, options);
  r.floor = is.floor;
  r.rounds = is.rounds;
  r.indices = is.vertices;
  for (auto i : r.indices) r.subset.push_back(points[i]);
  r.independent = spans_no_edge(h, r.indices);
  r.certificate = verify_distinct_distance(field, r.subset);

  const std::uint64_t q = field.order();
  if (r.n > 0) r.edge_constant = static_cast<double>(r.breakdown.edges) * q / std::pow(static_cast<double>(r.n), 4);
  std::uint64_t x = 1;
  while (x * (x - 1) / 2 <= q) ++x;
  r.pigeonhole_threshold = x;
  std::uint64_t c = 0;
  while (c * c < 2 * q) ++c;
  r.printed_cap = c + 1;
  r.within_pigeonhole = r.subset.size() < r.pigeonhole_threshold;
  return r;
}

}  // namespace ffgeom
