#include "ffgeom/census.hpp"

#include "ffgeom/error.hpp"
#include "ffgeom/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

namespace ffgeom {

namespace {

unsigned triangle(unsigned k) { return k * (k + 1) / 2; }

/// Row-major position of (i, j), i < j, in the upper triangle of a (k+1)-simplex.
unsigned upper_position(unsigned k, unsigned i, unsigned j) {
  unsigned pos = 0;
  for (unsigned r = 0; r < i; ++r) pos += k - r;
  return pos + (j - i - 1);
}

std::uint64_t key_space(std::uint32_t q, unsigned k) {
  std::uint64_t s = 1;
  for (unsigned e = 0; e < triangle(k); ++e) {
    if (s > (std::uint64_t{1} << 62) / q) throw CapExceeded("distance-matrix key space", s, std::uint64_t{1} << 62);
    s *= q;
  }
  return s;
}

std::uint64_t checked_power(std::uint64_t base, unsigned exp, std::uint64_t cap, const std::string& what) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) throw CapExceeded(what, v > cap / 2 ? cap + 1 : v * base, cap);
    v *= base;
  }
  return v;
}

}  // namespace

Residue DistanceMatrix::at(unsigned i, unsigned j) const {
  if (i == j) return 0;
  if (i > j) std::swap(i, j);
  if (j > k) throw InvalidArgument("distance matrix index out of range");
  return upper.at(upper_position(k, i, j));
}

std::string DistanceMatrix::key() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < upper.size(); ++i) os << (i ? "," : "") << upper[i];
  return os.str();
}

DistanceMatrix distance_matrix(const PrimeField& field, std::span<const Point> simplex) {
  if (simplex.empty()) throw InvalidArgument("empty simplex");
  DistanceMatrix m;
  m.k = static_cast<unsigned>(simplex.size() - 1);
  for (unsigned i = 0; i < simplex.size(); ++i)
    for (unsigned j = i + 1; j < simplex.size(); ++j) m.upper.push_back(distance(field, simplex[i], simplex[j]));
  return m;
}

std::uint64_t pack_distance_matrix(std::uint32_t q, const DistanceMatrix& m) {
  key_space(q, m.k);
  std::uint64_t key = 0;
  for (Residue r : m.upper) key = key * q + r;
  return key;
}

Int Census::total() const {
  Int t = 0;
  for (const auto& [key, c] : mu) t += c;
  return t;
}

Int Census::sum_squares() const {
  Int t = 0;
  for (const auto& [key, c] : mu) t += Int(c) * c;
  return t;
}

DistanceMatrix Census::matrix(std::uint64_t packed) const {
  DistanceMatrix m;
  m.k = k;
  m.upper.resize(triangle(k));
  for (std::size_t i = m.upper.size(); i-- > 0;) {
    m.upper[i] = static_cast<Residue>(packed % q);
    packed /= q;
  }
  return m;
}

std::vector<std::pair<DistanceMatrix, std::uint64_t>> Census::top(std::size_t limit) const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries(mu.begin(), mu.end());
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::pair<DistanceMatrix, std::uint64_t>> out;
  for (std::size_t i = 0; i < entries.size() && i < limit; ++i) out.emplace_back(matrix(entries[i].first), entries[i].second);
  return out;
}

Census simplex_census(const PrimeField& field, const std::vector<Point>& points, unsigned k, unsigned threads,
                      std::uint64_t work_cap) {
  const std::uint32_t q = field.order();
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("empty point set");
  if (k == 0) throw InvalidArgument("census needs k >= 1");
  if (k > points.front().dimension())
    throw InvalidArgument("census needs k <= d (k=" + std::to_string(k) + ", d=" +
                          std::to_string(points.front().dimension()) + ")");
  checked_power(n, k + 1, work_cap, "census tuple evaluations (use sampling mode)");
  const std::uint64_t keys = key_space(q, k);
  const unsigned entries = triangle(k);

  std::vector<std::uint64_t> weight(entries);
  for (unsigned e = 0; e < entries; ++e) {
    std::uint64_t w = 1;
    for (unsigned r = e + 1; r < entries; ++r) w *= q;
    weight[e] = w;
  }

  const bool use_table = n <= 2048;
  std::vector<Residue> table;
  if (use_table) {
    table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) table[i * n + j] = distance(field, points[i], points[j]);
  }
  auto dist = [&](std::size_t i, std::size_t j) {
    return use_table ? table[i * n + j] : distance(field, points[i], points[j]);
  };

  const bool dense = keys <= (std::uint64_t{1} << 22);
  const std::size_t chunks = chunk_count(n, threads);
  std::vector<std::vector<std::uint64_t>> dense_parts(dense ? chunks : 0);
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> sparse_parts(dense ? 0 : chunks);

  parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    if (dense) dense_parts[chunk].assign(keys, 0);
    std::vector<std::size_t> tuple(k + 1);
    auto bump = [&](std::uint64_t key) {
      if (dense)
        ++dense_parts[chunk][key];
      else
        ++sparse_parts[chunk][key];
    };
    auto recurse = [&](auto&& self, unsigned depth, std::uint64_t key) -> void {
      if (depth == k + 1) {
        bump(key);
        return;
      }
      for (std::size_t v = 0; v < n; ++v) {
        std::uint64_t next = key;
        for (unsigned i = 0; i < depth; ++i) next += dist(tuple[i], v) * weight[upper_position(k, i, depth)];
        tuple[depth] = v;
        self(self, depth + 1, next);
      }
    };
    for (std::size_t first = begin; first < end; ++first) {
      tuple[0] = first;
      recurse(recurse, 1, 0);
    }
  });

  Census c;
  c.q = q;
  c.k = k;
  c.set_size = n;
  if (dense) {
    for (const auto& part : dense_parts)
      for (std::uint64_t key = 0; key < keys; ++key)
        if (part[key] != 0) c.mu[key] += part[key];
  } else {
    for (const auto& part : sparse_parts)
      for (const auto& [key, cnt] : part) c.mu[key] += cnt;
  }
  return c;
}

Census sampled_census(const PrimeField& field, const std::vector<Point>& points, unsigned k, std::uint64_t samples,
                      std::uint64_t seed) {
  if (points.empty()) throw InvalidArgument("empty point set");
  if (k == 0) throw InvalidArgument("census needs k >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  Census c;
  c.q = field.order();
  c.k = k;
  c.set_size = points.size();
  c.exact = false;
  c.samples = samples;
  std::vector<Point> tuple(k + 1);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& p : tuple) p = points[pick(rng)];
    ++c.mu[pack_distance_matrix(c.q, distance_matrix(field, tuple))];
  }
  return c;
}

CauchySchwarzBound cauchy_schwarz_lower_bound(std::span<const std::uint64_t> counts) {
  CauchySchwarzBound b;
  Int sum = 0, sq = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    sum += c;
    sq += Int(c) * c;
    ++b.exact_support;
  }
  b.lower_bound = sq == 0 ? Rational(0) : Rational(sum * sum, sq);
  b.holds = b.lower_bound <= Rational(b.exact_support);
  return b;
}

CauchySchwarzBound cauchy_schwarz_lower_bound(const Census& census) {
  std::vector<std::uint64_t> counts;
  counts.reserve(census.mu.size());
  for (const auto& [key, c] : census.mu) counts.push_back(c);
  return cauchy_schwarz_lower_bound(counts);
}

PowerSumCheck power_sum_check(std::span<const std::uint64_t> f, unsigned n) {
  if (n < 2) throw InvalidArgument("power-sum inequality needs n >= 2");
  if (f.empty()) throw InvalidArgument("power-sum inequality needs a nonempty domain");
  Int l1 = 0;
  std::uint64_t sup = 0;
  PowerSumCheck r;
  for (auto v : f) {
    l1 += v;
    sup = std::max(sup, v);
    r.lhs += Rational(ipow(Int(v), n));
  }
  const Rational size(static_cast<std::uint64_t>(f.size()));
  const Rational mean = Rational(l1) / size;
  Rational variance = 0;
  for (auto v : f) {
    const Rational dev = Rational(v) - mean;
    variance += dev * dev;
  }
  r.rhs = size * rpow(mean, n) + Rational(Int(n) * (n - 1), 2) * Rational(ipow(Int(sup), n - 2)) * variance;
  r.pass = r.lhs <= r.rhs;
  return r;
}

OrbitCensus congruence_orbit_census(const PrimeField& field, const std::vector<Point>& points, unsigned k,
                                    const std::vector<OrthMatrix>& group, std::uint64_t work_cap) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("empty point set");
  checked_power(n, k + 1, work_cap, "orbit census tuple evaluations");
  OrbitCensus out;
  std::vector<std::size_t> idx(k + 1, 0);
  std::vector<Point> tuple(k + 1);
  while (true) {
    for (unsigned i = 0; i <= k; ++i) tuple[i] = points[idx[i]];
    const auto ckey = congruence_key(field, tuple, group);
    const std::uint64_t dkey = pack_distance_matrix(field.order(), distance_matrix(field, tuple));
    auto [it, fresh] = out.orbits.try_emplace(ckey);
    if (fresh) {
      it->second.stabilizer = stabilizer_size(field, tuple, group);
      it->second.affine_rank = affine_rank(field, tuple);
      it->second.distance_key = dkey;
      ++out.orbits_per_class[dkey];
      out.representative_stabilizer.try_emplace(dkey, it->second.stabilizer);
    } else if (it->second.distance_key != dkey) {
      throw std::logic_error("congruent simplices with different distance matrices");
    }
    ++it->second.count;

    unsigned pos = k + 1;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < n) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

bool ChainReport::pass() const {
  return std::all_of(links.begin(), links.end(), [](const ChainLink& l) { return !l.gating || l.pass; });
}

ChainReport theorem_chain_report(const PointSet& set, unsigned k, ChainCaps caps, unsigned threads) {
  const PrimeField& field = set.field();
  const std::uint32_t q = field.order();
  const unsigned d = set.dimension();
  if (k == 0 || k > d) throw InvalidArgument("chain report needs 1 <= k <= d");

  MotionCaps mcaps{caps.max_q_dim2, caps.max_q_dim3, caps.allow_dimension_three};
  if (d == 2 && q > mcaps.max_q_dim2) throw CapExceeded("motion sweep field size (d=2)", q, mcaps.max_q_dim2);
  if (d == 3 && !mcaps.allow_dimension_three) throw CapExceeded("motion sweep dimension", 3, 2);
  if (d == 3 && q > mcaps.max_q_dim3) throw CapExceeded("motion sweep field size (d=3)", q, mcaps.max_q_dim3);
  if (d < 2 || d > 3) throw CapExceeded("motion sweep dimension", d, 3);

  OrthogonalCaps ocaps;
  ocaps.max_q_dim3 = std::max(ocaps.max_q_dim3, caps.max_q_dim3);
  const auto group = enumerate_orthogonal(field, d, ocaps);
  const auto subgroup = enumerate_orthogonal(field, d - 1, ocaps);
  const auto points = set.points();

  ChainReport r;
  r.q = q;
  r.d = d;
  r.k = k;
  r.set_size = points.size();
  r.group_order = group.size();
  r.subgroup_order = subgroup.size();
  if (set.is_product()) {
    r.min_factor = set.factors().front().size();
    for (const auto& a : set.factors()) r.min_factor = std::min<std::uint64_t>(r.min_factor, a.size());
  }

  const auto profiles = motion_profiles(field, points, group, threads);
  const auto stats = motion_statistics(profiles, k);
  r.s1 = stats.s1;
  r.s2 = stats.s2;
  r.max_w = stats.max_w;

  const auto nu = distance_distribution(set, threads);
  r.w = quadruple_count(nu);

  const Census census = simplex_census(field, points, k, threads, caps.census_work_cap);
  r.support_size = census.support_size();
  r.census_total = census.total();
  r.census_sum_squares = census.sum_squares();
  const OrbitCensus orbits = congruence_orbit_census(field, points, k, group, caps.census_work_cap);

  const Int e = points.size();
  const Int qd = ipow(Int(q), d);
  const Rational og(group.size());
  const Rational osub(subgroup.size());

  // Mass identity.
  r.links.push_back({"mass_identity", Rational(r.census_total), Rational(ipow(e, k + 1)),
                     r.census_total == ipow(e, k + 1), true, "sum of mu equals |E|^(k+1)"});

  // Stabilizer-weighted orbit sum against the (k+1)-st moment of w.
  {
    Int lhs = 0;
    for (const auto& [key, cls] : orbits.orbits) lhs += Int(cls.stabilizer) * cls.count * cls.count;
    r.links.push_back({"stabilizer_sum", Rational(lhs), Rational(r.s2), lhs <= r.s2, true,
                       "sum over congruence classes of s*mu^2 <= sum over motions of |w|^(k+1); orbit-stabilizer makes "
                       "this an equality"});
    Int by_distance = 0;
    for (const auto& [key, count] : census.mu)
      by_distance += Int(orbits.representative_stabilizer.at(key)) * count * count;
    std::uint64_t split = 0;
    for (const auto& [key, norbits] : orbits.orbits_per_class) split += norbits > 1;
    r.links.push_back({"stabilizer_sum_by_distance", Rational(by_distance), Rational(r.s2), by_distance <= r.s2, false,
                       "same sum keyed by distance matrix with a representative stabilizer; " + std::to_string(split) +
                           " distance classes split into several congruence classes"});
  }

  // The power-sum inequality applied to f = |w_theta(.)|, n = k + 1.
  {
    Rational per_theta = 0;
    for (const auto& prof : profiles) {
      std::vector<std::uint64_t> f(prof.begin(), prof.end());
      per_theta += power_sum_check(f, k + 1).rhs;
    }
    r.links.push_back({"power_sum_per_rotation", Rational(r.s2), per_theta, Rational(r.s2) <= per_theta, true,
                       "sum over theta of the power-sum bound with the measured sup norm"});

    const Rational base = og * Rational(ipow(e, 2 * k + 2), ipow(Int(q), k * d));
    const Rational spread = Rational(r.s1) - Rational(ipow(e, 4)) * og / Rational(qd);
    const Rational uniform =
        base + Rational(Int(k + 1) * k, 2) * Rational(ipow(e, k - 1)) * spread;
    r.links.push_back({"power_sum_moment", Rational(r.s2), uniform, Rational(r.s2) <= uniform, true,
                       "sup norm bounded by |E|, coefficient n(n-1)/2 with n = k+1"});
    const Rational printed = base + Rational(Int(k) * (k - 1), 2) * Rational(ipow(e, k - 1)) * spread;
    r.links.push_back({"power_sum_moment_printed_coefficient", Rational(r.s2), printed, Rational(r.s2) <= printed, false,
                       "same bound with the printed coefficient k(k-1)/2"});
  }

  // Second moment of w against the quadruple count W.
  {
    const Rational printed = osub * Rational(r.w) / 2 + og * Rational(e * e);
    r.links.push_back({"second_moment_printed", Rational(r.s1), printed, Rational(r.s1) <= printed, true,
                       "sum |w|^2 <= |O(d-1)| W / 2 + |O(d)| |E|^2 as printed"});
    const Rational full = osub * Rational(r.w) + og * Rational(e * e);
    r.links.push_back({"second_moment_full_count", Rational(r.s1), full, Rational(r.s1) <= full, false,
                       "without the halving: each quadruple with a != b is hit by at most |O(d-1)| rotations"});
    if (r.min_factor != 0) {
      const Rational combined = 4 * osub * Rational(ipow(Int(q), d - 1)) * Rational(e * e) * Rational(r.min_factor);
      r.links.push_back({"second_moment_product_bound", Rational(r.s1), combined, Rational(r.s1) <= combined, false,
                         "sum |w|^2 <= 4 |O(d-1)| q^(d-1) |E|^2 |A_d|"});
      const Rational moment = og * Rational(ipow(e, 2 * k + 2), ipow(Int(q), k * d)) +
                              Rational(2 * Int(k) * (k - 1) * ipow(Int(q), d - 1) * ipow(e, k + 1) * r.min_factor) * osub;
      r.links.push_back({"moment_product_bound_printed", Rational(r.s2), moment, Rational(r.s2) <= moment, false,
                         "sum |w|^(k+1) <= |O(d)| |E|^(2k+2) / q^(kd) + 2k(k-1) q^(d-1) |E|^(k+1) |A_d| |O(d-1)|; "
                         "inherits the printed coefficient, so k = 1 leaves no room above the uniform term"});
    }
  }

  // Cauchy-Schwarz.
  {
    const auto cs = cauchy_schwarz_lower_bound(census);
    r.links.push_back({"cauchy_schwarz", cs.lower_bound, Rational(cs.exact_support), cs.holds, true,
                       "(sum mu)^2 / sum mu^2 <= |T_{k,d}(E)|"});
  }
  return r;
}

ThresholdReport threshold_report(std::uint64_t q, unsigned d, unsigned k, std::vector<std::uint64_t> sizes,
                                 std::optional<std::uint64_t> measured_classes) {
  if (q < 2) throw InvalidArgument("q must be at least 2");
  if (d == 0 || k == 0) throw InvalidArgument("d and k must be positive");
  if (sizes.empty()) throw InvalidArgument("need |E| or the factor sizes");
  const bool product = sizes.size() == d && d > 1;
  if (!product && sizes.size() != 1)
    throw InvalidArgument("give either one size |E| or exactly d factor sizes");
  for (auto s : sizes)
    if (s == 0) throw InvalidArgument("sizes must be positive");

  ThresholdReport r;
  r.q = q;
  r.d = d;
  r.k = k;
  r.sizes = sizes;
  r.measured_classes = measured_classes;
  Int e = 1;
  for (auto s : sizes) e *= s;
  if (!product) e = sizes.front();
  r.set_size = static_cast<std::uint64_t>(e);
  r.target_classes = ipow(Int(q), triangle(k));
  const Int qi(q);

  // |E| >= q^(num/den)  <=>  |E|^den >= q^num; the ratio is reported in floating point.
  auto power_threshold = [&](std::string name, Rational exponent, const std::string& condition, bool applicable,
                             std::string note) {
    ThresholdItem it;
    it.name = std::move(name);
    it.exponent = exponent;
    it.condition = condition;
    it.applicable = applicable;
    it.note = std::move(note);
    const Int num = boost::multiprecision::numerator(exponent);
    const Int den = boost::multiprecision::denominator(exponent);
    const Int lhs = ipow(e, static_cast<unsigned>(den));
    const Int rhs = ipow(qi, static_cast<unsigned>(num));
    it.satisfied = lhs >= rhs;
    it.boundary = lhs == rhs;
    it.ratio = static_cast<double>(e) / std::pow(static_cast<double>(q), to_double(exponent));
    r.items.push_back(std::move(it));
  };

  power_threshold("general_sets", Rational(Int(d)) - Rational(Int(d - 1), Int(k + 1)),
                  "|E| >> q^(d - (d-1)/(k+1))", k <= d, "general sets, 1 <= k <= d");

  if (product) {
    ThresholdItem it;
    it.name = "product_sets";
    it.applicable = k <= d;
    it.condition = "|E|^(k+1) / min|A_i| >> q^(kd)";
    const std::uint64_t mn = *std::min_element(sizes.begin(), sizes.end());
    const Rational ratio(ipow(e, k + 1), Int(mn) * ipow(qi, k * d));
    it.ratio = to_double(ratio);
    it.satisfied = ratio >= 1;
    it.boundary = ratio == 1;
    it.note = "ratio = " + to_string(ratio);
    r.items.push_back(std::move(it));
  }

  power_threshold("equal_factor_products", Rational(Int(k) * d * d, Int(d) * (k + 1) - 1), "|E| >> q^(kd / (k+1-1/d))",
                  k <= d && (!product || std::adjacent_find(sizes.begin(), sizes.end(), std::not_equal_to<>()) == sizes.end()),
                  "E = A^d");

  if (d == 2 && k == 2) power_threshold("planar_triangles", Rational(8, 5), "|E| >> q^(8/5)", true, "triangles in the plane");

  if (d == 2 && product) {
    // |A| >= q^(1/2 + eps), |B| >= q^(1 - 2 eps / 3) for some eps >= 0.
    ThresholdItem it;
    it.name = "planar_triangle_products";
    it.applicable = k == 2;
    it.condition = "|A| >= q^(1/2+eps), |B| >= q^(1-2eps/3), eps >= 0";
    const double a = std::log(static_cast<double>(sizes[0])) / std::log(static_cast<double>(q));
    const double b = std::log(static_cast<double>(sizes[1])) / std::log(static_cast<double>(q));
    const double eps_hi = a - 0.5;
    const double eps_lo = std::max(0.0, 1.5 * (1.0 - b));
    // eps = 0 decided exactly: |A|^2 >= q and |B| >= q.
    const bool eps_zero_ok = Int(sizes[0]) * sizes[0] >= qi && Int(sizes[1]) >= qi;
    it.satisfied = eps_zero_ok || (eps_hi >= eps_lo - 1e-12 && eps_hi >= 0);
    it.boundary = Int(sizes[0]) * sizes[0] == qi && Int(sizes[1]) >= qi;
    it.ratio = eps_hi - eps_lo;
    std::ostringstream os;
    os << "feasible eps interval [" << eps_lo << ", " << eps_hi << "]";
    if (it.boundary) os << "; |A| = q^(1/2) with eps = 0 is the hypothesis boundary";
    it.note = os.str();
    r.items.push_back(std::move(it));
  }

  if (d == 2) power_threshold("planar_distinct_distance", Rational(4, 3), "|E| >> q^(4/3)", true, "distinct distance subsets");
  return r;
}

}  // namespace ffgeom
