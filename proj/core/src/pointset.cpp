#include "ffgeom/pointset.hpp"

#include "ffgeom/error.hpp"
#include "ffgeom/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ffgeom {

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ')';
  return os.str();
}

std::uint64_t space_size(std::uint32_t q, unsigned d) {
  std::uint64_t s = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (s > (std::uint64_t{1} << 40) / q) throw CapExceeded("F_q^d index space", s * q, std::uint64_t{1} << 40);
    s *= q;
  }
  return s;
}

std::uint64_t encode_point(std::uint32_t q, const Point& p) {
  std::uint64_t code = 0;
  for (std::size_t i = p.coords.size(); i-- > 0;) code = code * q + p.coords[i];
  return code;
}

Point decode_point(std::uint32_t q, unsigned d, std::uint64_t code) {
  Point p;
  p.coords.resize(d);
  for (unsigned i = 0; i < d; ++i) {
    p.coords[i] = static_cast<Residue>(code % q);
    code /= q;
  }
  return p;
}

PointSet PointSet::from_points(const PrimeField& field, unsigned d, std::vector<Point> points) {
  if (d == 0) throw InvalidArgument("dimension must be at least 1");
  if (points.empty()) throw InvalidArgument("point set is empty");
  std::set<Point> seen;
  for (const auto& p : points) {
    if (p.dimension() != d)
      throw InvalidArgument("point " + p.to_string() + " has arity " + std::to_string(p.dimension()) +
                            ", expected " + std::to_string(d));
    for (Residue c : p.coords)
      if (c >= field.order())
        throw InvalidArgument("coordinate " + std::to_string(c) + " is not a residue mod " +
                              std::to_string(field.order()));
    if (!seen.insert(p).second) throw InvalidArgument("duplicate point " + p.to_string());
  }
  PointSet s(field, d, Kind::explicit_list);
  s.size_ = points.size();
  s.points_ = std::move(points);
  return s;
}

PointSet PointSet::from_product(const PrimeField& field, std::vector<std::vector<Residue>> factors) {
  if (factors.empty()) throw InvalidArgument("product needs at least one coordinate set");
  std::uint64_t size = 1;
  for (auto& a : factors) {
    if (a.empty()) throw InvalidArgument("product coordinate set is empty");
    for (Residue c : a)
      if (c >= field.order())
        throw InvalidArgument("coordinate " + std::to_string(c) + " is not a residue mod " +
                              std::to_string(field.order()));
    std::vector<Residue> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("product coordinate set has a repeated element");
    a = std::move(sorted);
    size *= a.size();
  }
  PointSet s(field, static_cast<unsigned>(factors.size()), Kind::product);
  s.size_ = size;
  s.factors_ = std::move(factors);
  return s;
}

PointSet PointSet::full_grid(const PrimeField& field, unsigned d) {
  std::vector<Residue> all(field.order());
  for (Residue i = 0; i < field.order(); ++i) all[i] = i;
  return from_product(field, std::vector<std::vector<Residue>>(d, all));
}

const std::vector<std::vector<Residue>>& PointSet::factors() const {
  if (kind_ != Kind::product) throw InvalidArgument("point set is not a Cartesian product");
  return factors_;
}

std::vector<Point> PointSet::points() const {
  if (kind_ == Kind::explicit_list) return points_;
  std::vector<Point> out;
  out.reserve(size_);
  std::vector<std::size_t> idx(d_, 0);
  while (true) {
    Point p;
    p.coords.resize(d_);
    for (unsigned i = 0; i < d_; ++i) p.coords[i] = factors_[i][idx[i]];
    out.push_back(std::move(p));
    unsigned pos = d_;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < factors_[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  std::int64_t v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ParseError("line " + std::to_string(line) + ": '" + t + "' is not an integer");
  return v;
}

}  // namespace

PointSet parse_pointset_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::int64_t> q, d;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] != '#') throw ParseError("line " + std::to_string(lineno) + ": expected header '# q=<q> d=<d>'");
    std::istringstream hs(t.substr(1));
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("q=", 0) == 0) q = parse_int(tok.substr(2), lineno);
      else if (tok.rfind("d=", 0) == 0) d = parse_int(tok.substr(2), lineno);
    }
    break;
  }
  if (!q || !d) throw ParseError("missing header '# q=<q> d=<d>'");
  if (*q < 3 || *q > (1LL << 31) - 1) throw ParseError("header q=" + std::to_string(*q) + " is not an odd prime");
  if (*d < 1 || *d > 16) throw ParseError("header d=" + std::to_string(*d) + " is out of range");
  PrimeField field = [&] {
    try {
      return PrimeField(static_cast<std::uint32_t>(*q));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }();

  std::vector<Point> points;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    Point p;
    std::istringstream ls(t);
    std::string field_text;
    while (std::getline(ls, field_text, ',')) {
      const std::int64_t v = parse_int(field_text, lineno);
      if (!field.contains(v))
        throw ParseError("line " + std::to_string(lineno) + ": coordinate " + std::to_string(v) +
                         " is not in [0, " + std::to_string(*q) + ")");
      p.coords.push_back(static_cast<Residue>(v));
    }
    if (p.coords.size() != static_cast<std::size_t>(*d))
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(*d) + " coordinates, got " +
                       std::to_string(p.coords.size()));
    points.push_back(std::move(p));
  }
  try {
    return PointSet::from_points(field, static_cast<unsigned>(*d), std::move(points));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

PointSet parse_pointset_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("q") || !j.contains("sets"))
    throw ParseError("product set must be an object with \"q\" and \"sets\"");
  if (!j["q"].is_number_integer()) throw ParseError("\"q\" must be an integer");
  const auto q = j["q"].get<std::int64_t>();
  if (q < 3 || q > (1LL << 31) - 1) throw ParseError("q=" + std::to_string(q) + " is not an odd prime");
  try {
    PrimeField field(static_cast<std::uint32_t>(q));
    if (!j["sets"].is_array()) throw ParseError("\"sets\" must be an array of arrays");
    std::vector<std::vector<Residue>> factors;
    for (const auto& a : j["sets"]) {
      if (!a.is_array()) throw ParseError("\"sets\" must be an array of arrays");
      std::vector<Residue> f;
      for (const auto& v : a) {
        if (!v.is_number_integer()) throw ParseError("set entries must be integers");
        const auto x = v.get<std::int64_t>();
        if (!field.contains(x))
          throw ParseError("coordinate " + std::to_string(x) + " is not in [0, " + std::to_string(q) + ")");
        f.push_back(static_cast<Residue>(x));
      }
      factors.push_back(std::move(f));
    }
    return PointSet::from_product(field, std::move(factors));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

PointSet parse_pointset(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::istringstream again(text);
  if (first != std::string::npos && text[first] == '{') return parse_pointset_json(again);
  return parse_pointset_csv(again);
}

PointSet load_pointset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open point set file '" + path + "'");
  return parse_pointset(in);
}

std::string format_pointset_csv(const PointSet& set) {
  std::ostringstream os;
  os << "# q=" << set.field().order() << " d=" << set.dimension() << '\n';
  for (const auto& p : set.points()) {
    for (std::size_t i = 0; i < p.coords.size(); ++i) os << (i ? "," : "") << p.coords[i];
    os << '\n';
  }
  return os.str();
}

Residue norm(const PrimeField& field, const Point& x) {
  std::uint64_t acc = 0;
  for (Residue c : x.coords) acc += std::uint64_t{c} * c % field.order();
  return static_cast<Residue>(acc % field.order());
}

Residue distance(const PrimeField& field, const Point& x, const Point& y) {
  if (x.dimension() != y.dimension())
    throw InvalidArgument("dimension mismatch: " + x.to_string() + " vs " + y.to_string());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    const Residue diff = field.sub(x.coords[i], y.coords[i]);
    acc += std::uint64_t{diff} * diff % field.order();
  }
  return static_cast<Residue>(acc % field.order());
}

std::uint64_t DistanceDistribution::total() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

std::size_t DistanceDistribution::distinct_distances() const {
  return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](auto c) { return c != 0; }));
}

DistanceDistribution distance_distribution_direct(const PrimeField& field, const std::vector<Point>& points,
                                                  unsigned threads) {
  const std::uint32_t q = field.order();
  const std::size_t n = points.size();
  std::vector<std::vector<std::uint64_t>> partial(chunk_count(n, threads), std::vector<std::uint64_t>(q, 0));
  parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& hist = partial[chunk];
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < n; ++j) ++hist[distance(field, points[i], points[j])];
  });
  DistanceDistribution out{std::vector<std::uint64_t>(q, 0)};
  for (const auto& h : partial)
    for (std::uint32_t t = 0; t < q; ++t) out.counts[t] += h[t];
  return out;
}

DistanceDistribution distance_distribution_product(const PrimeField& field,
                                                   const std::vector<std::vector<Residue>>& factors) {
  const std::uint32_t q = field.order();
  std::vector<std::uint64_t> acc(q, 0);
  acc[0] = 1;
  for (const auto& a : factors) {
    std::vector<std::uint64_t> hist(q, 0);
    for (Residue x : a)
      for (Residue y : a) ++hist[field.square(field.sub(x, y))];
    std::vector<std::uint64_t> next(q, 0);
    for (std::uint32_t s = 0; s < q; ++s) {
      if (acc[s] == 0) continue;
      for (std::uint32_t t = 0; t < q; ++t)
        if (hist[t] != 0) next[field.add(s, t)] += acc[s] * hist[t];
    }
    acc = std::move(next);
  }
  return DistanceDistribution{std::move(acc)};
}

DistanceDistribution distance_distribution(const PointSet& set, unsigned threads) {
  if (set.is_product()) return distance_distribution_product(set.field(), set.factors());
  return distance_distribution_direct(set.field(), set.points(), threads);
}

std::uint64_t quadruple_count(const DistanceDistribution& nu, bool nonzero_only) {
  std::uint64_t w = 0;
  for (std::size_t t = nonzero_only ? 1 : 0; t < nu.counts.size(); ++t) w += nu.counts[t] * nu.counts[t];
  return w;
}

std::uint64_t HingeCounts::total_nonzero() const {
  std::uint64_t s = 0;
  for (std::size_t t = 1; t < by_lambda.size(); ++t) s += by_lambda[t];
  return s;
}

HingeCounts hinge_counts(const PrimeField& field, const std::vector<Point>& points, std::uint64_t triple_cap) {
  const std::uint32_t q = field.order();
  const std::size_t n = points.size();
  HingeCounts out;
  out.by_lambda.assign(q, 0);
  out.circle_counts.assign(n, std::vector<std::uint32_t>(q, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ++out.circle_counts[i][distance(field, points[i], points[j])];
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t t = 1; t < q; ++t)
      out.by_lambda[t] += std::uint64_t{out.circle_counts[i][t]} * out.circle_counts[i][t];

  const std::uint64_t triples = std::uint64_t{n} * n * n;
  if (triples <= triple_cap) {
    std::vector<std::uint64_t> direct(q, 0);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t a = 0; a < n; ++a) {
        const Residue da = distance(field, points[p], points[a]);
        if (da == 0) continue;
        for (std::size_t b = 0; b < n; ++b)
          if (distance(field, points[p], points[b]) == da) ++direct[da];
      }
    if (direct != out.by_lambda) throw std::logic_error("hinge count identity violated");
    out.cross_checked = true;
  }
  return out;
}

bool Line::contains(const PrimeField& field, const Point& p) const {
  if (p.dimension() != 2) throw InvalidArgument("lines live in the plane");
  return field.add(field.add(field.mul(c, p.coords[0]), field.mul(d, p.coords[1])), e) == 0;
}

Line bisector_line(const PrimeField& field, const Point& q1, const Point& q2) {
  if (q1.dimension() != 2 || q2.dimension() != 2) throw InvalidArgument("bisector lines need points in F_q^2");
  if (q1 == q2) throw InvalidArgument("bisector of a point with itself is the whole plane");
  // ||x-q1|| = ||x-q2||  <=>  2(q2-q1).x - (||q2|| - ||q1||) = 0
  const Residue two = 2 % field.order();
  std::vector<Residue> v = {field.mul(two, field.sub(q2.coords[0], q1.coords[0])),
                            field.mul(two, field.sub(q2.coords[1], q1.coords[1])),
                            field.sub(norm(field, q1), norm(field, q2))};
  const ProjPoint canon = normalize_projective(field, v);
  if (canon.coords()[0] == 0 && canon.coords()[1] == 0)
    throw std::logic_error("degenerate bisector for distinct points");
  return Line{canon.coords()[0], canon.coords()[1], canon.coords()[2]};
}

IsotropicReport isotropic_report(const PrimeField& field, const std::vector<Point>& points, std::size_t sample_limit) {
  IsotropicReport r;
  r.isotropic_directions_exist = field.minus_one_is_square();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j || distance(field, points[i], points[j]) != 0) continue;
      ++r.ordered_pairs;
      if (r.sample.size() < sample_limit && i < j) r.sample.emplace_back(points[i], points[j]);
    }
  return r;
}

std::vector<Point> strip_isotropic(const PrimeField& field, const std::vector<Point>& points) {
  std::vector<Point> kept;
  for (const auto& p : points) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](const Point& k) { return distance(field, p, k) == 0; });
    if (!clash) kept.push_back(p);
  }
  return kept;
}

}  // namespace ffgeom
