#include "ffgeom/specgraph.hpp"

#include "ffgeom/error.hpp"
#include "ffgeom/motions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ffgeom {

double DeclaredParams::lambda() const { return std::sqrt(to_double(lambda_sq)); }

NDLGraph::NDLGraph(std::string name, std::size_t n,
                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges, DeclaredParams declared)
    : name_(std::move(name)), neighbors_(n), adj_(n * n, false), declared_(std::move(declared)) {
  for (auto [i, j] : edges) {
    if (i >= n || j >= n) throw InvalidArgument("edge endpoint out of range");
    adj_[std::size_t{i} * n + j] = true;
    adj_[std::size_t{j} * n + i] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (adj_[i * n + j]) neighbors_[i].push_back(static_cast<std::uint32_t>(j));
}

std::uint64_t NDLGraph::loop_count() const {
  std::uint64_t loops = 0;
  for (std::uint32_t i = 0; i < size(); ++i) loops += adjacent(i, i);
  return loops;
}

bool NDLGraph::is_symmetric() const {
  for (std::uint32_t i = 0; i < size(); ++i)
    for (std::uint32_t j = i + 1; j < size(); ++j)
      if (adjacent(i, j) != adjacent(j, i)) return false;
  return true;
}

std::string NDLGraph::edge_list() const {
  std::ostringstream os;
  for (std::uint32_t i = 0; i < size(); ++i)
    for (std::uint32_t j : neighbors_[i])
      if (i <= j) os << i << ' ' << j << '\n';
  return os.str();
}

std::uint32_t ErGraph::index_of(const ProjPoint& p) const {
  const auto it = index.find(p);
  if (it == index.end()) throw InvalidArgument("point " + p.to_string() + " is not a vertex");
  return it->second;
}

ErGraph build_er_graph(const PrimeField& field, unsigned m, std::uint64_t vertex_cap) {
  if (m < 2) throw InvalidArgument("ER graph needs m >= 2");
  const std::uint32_t q = field.order();
  const std::uint64_t n = pg_size(q, m);
  if (n > vertex_cap) throw CapExceeded("ER(F_" + std::to_string(q) + "^" + std::to_string(m) + ") vertices", n, vertex_cap);

  ErGraph er;
  er.vertices = enumerate_pg(field, m);
  for (std::uint32_t i = 0; i < er.vertices.size(); ++i) er.index.emplace(er.vertices[i], i);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& x = er.vertices[i].coords();
    for (std::uint32_t j = i; j < n; ++j) {
      const auto& y = er.vertices[j].coords();
      std::uint64_t dot = 0;
      for (unsigned k = 0; k < m; ++k) dot += std::uint64_t{x[k]} * y[k] % q;
      if (dot % q == 0) edges.emplace_back(i, j);
    }
  }

  DeclaredParams declared;
  declared.n = n;
  declared.degree = pg_size(q, m - 1);
  declared.lambda_sq = Rational(ipow(Int(q), m - 2));
  declared.lambda_text = m % 2 == 0 ? std::to_string(static_cast<std::uint64_t>(ipow(Int(q), (m - 2) / 2)))
                                    : std::to_string(q) + "^(" + std::to_string(m - 2) + "/2)";
  er.graph = NDLGraph("ER(F_" + std::to_string(q) + "^" + std::to_string(m) + ")", n, edges, std::move(declared));
  return er;
}

ReflectionGraph build_reflection_graph(const PrimeField& field, Residue lambda, std::uint64_t vertex_cap) {
  const std::uint32_t q = field.order();
  if (lambda % q == 0) throw InvalidArgument("reflection graph needs lambda != 0");
  lambda %= q;

  ReflectionGraph rg;
  rg.branch = field.minus_one_is_square() ? -1 : +1;
  const std::uint64_t circle = rg.branch > 0 ? q + 1 : q - 1;
  const std::uint64_t expected_n = std::uint64_t{q} * q * circle;
  if (expected_n > vertex_cap) throw CapExceeded("RF_lambda vertices", expected_n, vertex_cap);

  const std::uint64_t plane = std::uint64_t{q} * q;
  // Vertex (x, y) is indexed through the pair of encoded points.
  std::vector<std::int64_t> vertex_id(plane * plane, -1);
  for (std::uint64_t xc = 0; xc < plane; ++xc)
    for (std::uint64_t yc = 0; yc < plane; ++yc) {
      const Point x = decode_point(q, 2, xc), y = decode_point(q, 2, yc);
      if (distance(field, x, y) != lambda) continue;
      vertex_id[xc * plane + yc] = static_cast<std::int64_t>(rg.vertices.size());
      rg.vertices.emplace_back(x, y);
    }
  if (rg.vertices.size() != expected_n)
    throw std::logic_error("reflection graph vertex count disagrees with circle size");

  const auto reflections = enumerate_reflections(field);
  rg.reflection_count = reflections.size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(rg.vertices.size() * reflections.size() / 2 + rg.vertices.size());
  for (std::uint32_t v = 0; v < rg.vertices.size(); ++v) {
    const auto& [x, y] = rg.vertices[v];
    for (const auto& r : reflections) {
      const Point z = apply_reflection(field, r, x);
      const Point w = apply_reflection(field, r, y);
      const std::int64_t target = vertex_id[encode_point(q, z) * plane + encode_point(q, w)];
      if (target < 0) throw std::logic_error("reflection left the distance-lambda pairs");
      if (static_cast<std::uint32_t>(target) >= v) edges.emplace_back(v, static_cast<std::uint32_t>(target));
    }
  }

  DeclaredParams declared;
  declared.n = expected_n;
  declared.degree = rg.branch > 0 ? std::uint64_t{q} * q + q : std::uint64_t{q} * q - q;
  const std::uint64_t lam = rg.branch > 0 ? 2 * (std::uint64_t{q} + 1) : 2 * (std::uint64_t{q} - 1);
  declared.lambda_sq = Rational(lam * lam);
  declared.lambda_text = std::to_string(lam);
  rg.graph = NDLGraph("RF_" + std::to_string(lambda) + "(F_" + std::to_string(q) + "^2)", rg.vertices.size(), edges,
                      std::move(declared));
  return rg;
}

NDLGraph complete_graph(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  DeclaredParams declared{n, n - 1, Rational(1), "1"};
  return NDLGraph("K_" + std::to_string(n), n, edges, declared);
}

Spectrum second_eigenvalue(const NDLGraph& g, std::size_t cap) {
  const std::size_t n = g.size();
  if (n > cap) throw CapExceeded("dense eigensolve of " + g.name(), n, cap);
  if (n == 0) throw InvalidArgument("empty graph");
  if (!g.is_symmetric()) throw std::logic_error("adjacency of " + g.name() + " is not symmetric");

  // Eigen's implicit QR occasionally stalls on these highly symmetric
  // matrices. Relabeling the vertices is a similarity, so on failure we retry
  // with fixed pseudo-random permutations.
  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0u);
  std::mt19937 shuffler(0x5eed);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  for (int attempt = 0;; ++attempt) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j : g.neighbors(i)) a(label[i], label[j]) = 1.0;
    solver.compute(a, Eigen::EigenvaluesOnly);
    if (solver.info() == Eigen::Success) break;
    if (attempt == 8) throw std::runtime_error("eigensolver failed on " + g.name());
    std::shuffle(label.begin(), label.end(), shuffler);
  }

  Spectrum s;
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());

  std::vector<double> by_magnitude = s.eigenvalues;
  std::stable_sort(by_magnitude.begin(), by_magnitude.end(),
                   [](double x, double y) { return std::abs(x) > std::abs(y); });
  s.perron = by_magnitude.front();
  s.lambda2 = by_magnitude.size() > 1 ? std::abs(by_magnitude[1]) : 0.0;
  return s;
}

SpectrumCheck check_parameters(const NDLGraph& g, std::size_t cap) {
  SpectrumCheck c;
  c.n = g.size();
  c.degree_min = c.n ? g.degree(0) : 0;
  c.degree_max = c.degree_min;
  for (std::uint32_t i = 0; i < c.n; ++i) {
    c.degree_min = std::min(c.degree_min, g.degree(i));
    c.degree_max = std::max(c.degree_max, g.degree(i));
  }
  c.spectrum = second_eigenvalue(g, cap);
  c.n_ok = c.n == g.declared().n;
  c.regular_ok = c.degree_min == g.declared().degree && c.degree_max == g.declared().degree;
  c.lambda_ok = c.spectrum.lambda2 <= g.declared().lambda() + 1e-6;
  return c;
}

double MixingResult::error_bound() const { return std::sqrt(to_double(error_bound_sq)); }

MixingResult mixing_edges(const NDLGraph& g, const VertexMultiset& b, const VertexMultiset& c) {
  MixingResult r;
  for (const auto& [v, m] : b) {
    if (v >= g.size()) throw InvalidArgument("multiset vertex out of range");
    if (m == 0) throw InvalidArgument("multiplicities must be positive");
    r.size_b += m;
    r.sum_sq_b += Int(m) * m;
  }
  for (const auto& [v, m] : c) {
    if (v >= g.size()) throw InvalidArgument("multiset vertex out of range");
    if (m == 0) throw InvalidArgument("multiplicities must be positive");
    r.size_c += m;
    r.sum_sq_c += Int(m) * m;
  }
  for (const auto& [u, mu] : b) {
    Int row = 0;
    for (std::uint32_t w : g.neighbors(u)) {
      const auto it = c.find(w);
      if (it != c.end()) row += it->second;
    }
    r.edges += row * mu;
  }
  const auto& dp = g.declared();
  r.main_term = Rational(Int(dp.degree) * r.size_b * r.size_c, Int(dp.n));
  r.error_bound_sq = dp.lambda_sq * Rational(r.sum_sq_b * r.sum_sq_c);
  const Rational gap = abs(Rational(r.edges) - r.main_term);
  r.holds = gap * gap <= r.error_bound_sq;
  return r;
}

}  // namespace ffgeom
