#include "cli.hpp"

#include "ffgeom/bounds.hpp"
#include "ffgeom/census.hpp"
#include "ffgeom/dds.hpp"
#include "ffgeom/error.hpp"
#include "ffgeom/motions.hpp"
#include "ffgeom/pointset.hpp"
#include "ffgeom/specgraph.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace ffgeom::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kLemmaIds{"2.1", "2.2", "2.3", "3.1", "4.1", "4.2", "4.3", "remark-4.4", "eq-2-chain"};

struct Options {
  unsigned threads = 1;
  std::string out;

  // Point set sources.
  std::string input;
  bool grid = false;
  std::uint64_t random = 0;
  std::vector<std::uint64_t> random_product;
  bool strip_isotropic = false;

  std::uint32_t q = 3;
  unsigned d = 2;
  unsigned k = 1;
  unsigned m = 3;
  std::uint64_t seed = 1;

  std::size_t top = 10;
  std::string csv;
  std::uint64_t sample = 0;
  std::uint64_t census_cap = 100'000'000;

  std::string graph = "er";
  Residue lambda = 0;
  std::size_t n = 4;
  std::string declared_lambda;
  std::string edges;
  std::uint64_t vertex_cap = 10'000;
  std::size_t eigen_cap = 5000;

  unsigned pairs = 200;
  std::uint64_t max_size = 0;

  std::vector<std::uint32_t> qs{3};
  std::vector<unsigned> dims{2};
  bool matrices = false;
  bool allow_dim4 = false;

  std::string lemma;
  unsigned trials = 1000;
  std::vector<unsigned> powers{2, 3, 4};
  std::uint64_t profile_size = 30;
  std::uint64_t max_value = 12;
  std::string constant = "4";

  std::uint32_t max_points = 120;
  bool no_completion = false;

  std::vector<std::uint64_t> sizes;
  std::uint64_t measured = 0;

  std::string config;
};

// ---------------------------------------------------------------- formatting

std::string str(const Int& v) { return to_string(v); }
std::string str(const Rational& v) { return to_string(v); }
std::string str(std::uint64_t v) { return std::to_string(v); }

std::string fmt_double(double x, const char* spec = "%.10g") {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

json flt(double x) { return json{{"value", fmt_double(x)}, {"kind", "float"}}; }
json eigen_flt(double x) { return json{{"value", fmt_double(x)}, {"kind", "float, tol=1e-6"}}; }

json point_json(const Point& p) {
  json a = json::array();
  for (auto c : p.coords) a.push_back(c);
  return a;
}

/// One inequality or identity with both sides as exact strings.
struct Check {
  std::string name;
  std::string lhs;
  std::string rhs;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
  bool gating = true;
  std::string note;
  /// Equalities and yes/no facts; the verdict prefers real inequalities.
  bool identity = false;
};

Check exact_check(std::string name, const Rational& lhs, const Rational& rhs, bool pass, bool gating = true,
                  std::string note = {}) {
  Check c{std::move(name), str(lhs), str(rhs), std::numeric_limits<double>::quiet_NaN(), pass, gating, std::move(note)};
  if (rhs != 0) c.ratio = to_double(lhs / rhs);
  return c;
}

Check identity_check(std::string name, const Rational& lhs, const Rational& rhs, bool gating = true,
                     std::string note = {}) {
  Check c = exact_check(std::move(name), lhs, rhs, lhs == rhs, gating, std::move(note));
  c.identity = true;
  return c;
}

Check flag_check(std::string name, bool ok, bool gating = true, std::string note = {}) {
  Check c{std::move(name), ok ? "true" : "false", "true", std::numeric_limits<double>::quiet_NaN(), ok, gating,
          std::move(note)};
  c.identity = true;
  return c;
}

json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) {
    json j{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}, {"gating", c.gating}};
    j["ratio"] = flt(c.ratio);
    if (!c.note.empty()) j["note"] = c.note;
    a.push_back(std::move(j));
  }
  return a;
}

bool gating_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.gating || c.pass; });
}

/// The first failing gating check, else the tightest gating inequality.
json verdict(const std::vector<Check>& checks) {
  const Check* pick = nullptr;
  for (const auto& c : checks)
    if (c.gating && !c.pass) {
      pick = &c;
      break;
    }
  auto tighter = [](const Check& c, const Check* p) {
    if (!p) return true;
    if (p->identity != c.identity) return !c.identity;
    if (std::isnan(c.ratio)) return false;
    return std::isnan(p->ratio) || c.ratio > p->ratio;
  };
  if (!pick)
    for (const auto& c : checks)
      if (c.gating && tighter(c, pick)) pick = &c;
  if (!pick) return json{{"check", ""}, {"lhs", ""}, {"rhs", ""}, {"ratio", ""}, {"pass", true}};
  return json{{"check", pick->name},
              {"lhs", pick->lhs},
              {"rhs", pick->rhs},
              {"ratio", std::isnan(pick->ratio) ? std::string("n/a") : fmt_double(pick->ratio, "%.6f")},
              {"pass", gating_pass(checks)}};
}

void attach(json& doc, const std::vector<Check>& checks) {
  doc["checks"] = checks_json(checks);
  doc["verdict"] = verdict(checks);
  doc["pass"] = gating_pass(checks);
}

// ---------------------------------------------------------------- parsing helpers

Rational parse_rational(const std::string& s) {
  auto bad = [&] { return InvalidArgument("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto parse_int = [&](const std::string& t) {
    if (t.empty() || !std::all_of(t.begin() + (t[0] == '-' ? 1 : 0), t.end(), ::isdigit) || t == "-") throw bad();
    return Int(t);
  };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(parse_int(s.substr(0, slash)), den);
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (frac.empty() || !std::all_of(frac.begin(), frac.end(), ::isdigit)) throw bad();
    const bool negative = !whole.empty() && whole[0] == '-';
    const Int w = whole.empty() || whole == "-" ? Int(0) : parse_int(whole);
    const Int scale = ipow(Int(10), static_cast<unsigned>(frac.size()));
    Rational r = Rational(w) + Rational(Int(frac), scale) * (negative ? -1 : 1);
    return r;
  }
  return Rational(parse_int(s));
}

std::vector<Residue> random_subset(std::uint64_t universe, std::uint64_t count, std::mt19937_64& rng) {
  if (count > universe) throw InvalidArgument("cannot draw " + str(count) + " distinct elements from " + str(universe));
  if (universe > (std::uint64_t{1} << 24)) throw CapExceeded("random subset universe", universe, std::uint64_t{1} << 24);
  std::vector<Residue> pool(universe);
  std::iota(pool.begin(), pool.end(), Residue{0});
  for (std::uint64_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + rng() % (universe - i)]);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

PointSet resolve_set(const Options& o) {
  const int sources = !o.input.empty() + o.grid + (o.random > 0) + !o.random_product.empty();
  if (sources != 1) throw InvalidArgument("give exactly one of --input, --grid, --random, --random-product");
  if (!o.input.empty()) return load_pointset(o.input);
  const PrimeField field(o.q);
  if (o.grid) return PointSet::full_grid(field, o.d);
  std::mt19937_64 rng(o.seed);
  if (!o.random_product.empty()) {
    std::vector<std::vector<Residue>> factors;
    for (auto s : o.random_product) factors.push_back(random_subset(o.q, s, rng));
    return PointSet::from_product(field, std::move(factors));
  }
  std::vector<Point> points;
  for (auto code : random_subset(space_size(o.q, o.d), o.random, rng)) points.push_back(decode_point(o.q, o.d, code));
  return PointSet::from_points(field, o.d, std::move(points));
}

std::vector<Point> planar_points(const Options& o, const PointSet& set) {
  if (set.dimension() != 2) throw InvalidArgument("this check is planar: the point set must lie in F_q^2");
  auto points = set.points();
  if (o.strip_isotropic) points = strip_isotropic(set.field(), points);
  return points;
}

json set_summary(const PointSet& set) {
  json j{{"q", set.field().order()}, {"d", set.dimension()}, {"size", str(set.size())},
         {"kind", set.is_product() ? "product" : "explicit"}};
  if (set.is_product()) {
    json sizes = json::array();
    for (const auto& a : set.factors()) sizes.push_back(a.size());
    j["factor_sizes"] = sizes;
  }
  return j;
}

// ---------------------------------------------------------------- graphs

NDLGraph build_graph(const Options& o) {
  NDLGraph g;
  if (o.graph == "er") {
    g = build_er_graph(PrimeField(o.q), o.m, o.vertex_cap).graph;
  } else if (o.graph == "reflection") {
    if (o.lambda == 0) throw InvalidArgument("reflection graph needs --lambda != 0");
    g = build_reflection_graph(PrimeField(o.q), o.lambda, o.vertex_cap).graph;
  } else if (o.graph == "complete") {
    g = complete_graph(o.n);
  } else {
    throw InvalidArgument("unknown graph '" + o.graph + "' (er, reflection, complete)");
  }
  if (!o.declared_lambda.empty()) {
    const Rational x = parse_rational(o.declared_lambda);
    if (x < 0) throw InvalidArgument("declared lambda must be nonnegative");
    g.declared().lambda_sq = x * x;
    g.declared().lambda_text = o.declared_lambda;
  }
  return g;
}

json spectrum_json(const NDLGraph& g, const SpectrumCheck& c) {
  const auto& decl = g.declared();
  return json{{"graph", g.name()},
              {"declared",
               {{"n", str(decl.n)}, {"degree", str(decl.degree)}, {"lambda", decl.lambda_text},
                {"lambda_squared", str(decl.lambda_sq)}}},
              {"measured",
               {{"n", str(c.n)},
                {"degree_min", str(c.degree_min)},
                {"degree_max", str(c.degree_max)},
                {"lambda2", eigen_flt(c.spectrum.lambda2)},
                {"perron", eigen_flt(c.spectrum.perron)}}},
              {"checks", {{"n", c.n_ok}, {"regular", c.regular_ok}, {"lambda", c.lambda_ok}}},
              {"pass", c.pass()}};
}

std::vector<Check> spectrum_checks(const NDLGraph& g, const SpectrumCheck& c) {
  const auto& decl = g.declared();
  std::vector<Check> out;
  out.push_back(identity_check(g.name() + ":vertices", Rational(c.n), Rational(decl.n)));
  Check deg = identity_check(g.name() + ":degree", Rational(c.degree_max), Rational(decl.degree), true,
                             "min degree " + str(c.degree_min));
  deg.pass = c.regular_ok;
  out.push_back(std::move(deg));
  Check l{g.name() + ":lambda2", fmt_double(c.spectrum.lambda2), decl.lambda_text, 0, c.lambda_ok, true,
          "float, tol=1e-6"};
  l.ratio = decl.lambda() > 0 ? c.spectrum.lambda2 / decl.lambda() : std::numeric_limits<double>::quiet_NaN();
  out.push_back(std::move(l));
  return out;
}

VertexMultiset random_multiset(std::size_t n, std::uint64_t max_size, std::mt19937_64& rng) {
  VertexMultiset ms;
  const std::uint64_t size = 1 + rng() % max_size;
  for (std::uint64_t i = 0; i < size; ++i) ++ms[static_cast<std::uint32_t>(rng() % n)];
  return ms;
}

json mixing_run(const NDLGraph& g, const Options& o, std::vector<Check>& checks) {
  std::mt19937_64 rng(o.seed);
  const std::uint64_t max_size = o.max_size ? o.max_size : g.size();
  std::uint64_t violations = 0;
  double worst = -1;
  json worst_pair;
  for (unsigned i = 0; i < o.pairs; ++i) {
    const auto b = random_multiset(g.size(), max_size, rng);
    const auto c = random_multiset(g.size(), max_size, rng);
    const auto r = mixing_edges(g, b, c);
    violations += !r.holds;
    const double bound = r.error_bound();
    const double ratio = bound > 0 ? std::abs(to_double(Rational(r.edges) - r.main_term)) / bound : 0;
    if (ratio > worst || !r.holds) {
      worst = ratio;
      worst_pair = json{{"pair", i},
                        {"edges", str(r.edges)},
                        {"main_term", str(r.main_term)},
                        {"error_bound_squared", str(r.error_bound_sq)},
                        {"deviation_over_bound", flt(ratio)},
                        {"holds", r.holds}};
    }
  }
  Check c{g.name() + ":mixing", str(violations), "0", std::max(worst, 0.0), violations == 0, true,
          "violations over " + std::to_string(o.pairs) + " random multiset pairs; ratio is the largest deviation over "
          "the error bound"};
  checks.push_back(std::move(c));
  return json{{"graph", g.name()}, {"pairs", o.pairs}, {"violations", str(violations)}, {"tightest", worst_pair}};
}

// ---------------------------------------------------------------- commands

using Handler = std::function<int(const Options&, json&)>;

int cmd_nu(const Options& o, json& doc) {
  const PointSet set = resolve_set(o);
  const auto nu = distance_distribution(set, o.threads);
  doc["set"] = set_summary(set);
  json counts = json::object();
  for (Residue t = 0; t < nu.counts.size(); ++t) counts[std::to_string(t)] = str(nu.counts[t]);
  doc["nu"] = counts;
  doc["total"] = str(nu.total());
  doc["quadruples"] = str(quadruple_count(nu));
  doc["quadruples_nonzero"] = str(quadruple_count(nu, true));
  doc["distinct_distances"] = str(nu.distinct_distances());
  if (set.dimension() == 2) {
    const auto h = hinge_counts(set.field(), set.points());
    json hinges = json::object();
    for (Residue t = 1; t < h.by_lambda.size(); ++t) hinges[std::to_string(t)] = str(h.by_lambda[t]);
    doc["hinges"] = hinges;
    doc["hinge_total"] = str(h.total_nonzero());
    doc["hinge_cross_checked"] = h.cross_checked;
  }
  return 0;
}

int cmd_census(const Options& o, json& doc) {
  const PointSet set = resolve_set(o);
  const auto points = set.points();
  const Census c = o.sample > 0 ? sampled_census(set.field(), points, o.k, o.sample, o.seed)
                                : simplex_census(set.field(), points, o.k, o.threads, o.census_cap);
  doc["set"] = set_summary(set);
  doc["k"] = o.k;
  doc["exact"] = c.exact;
  doc["total"] = str(c.total());
  doc["support_size"] = str(c.support_size());
  doc["sum_squares"] = str(c.sum_squares());
  if (c.exact) doc["cauchy_schwarz_lower_bound"] = str(cauchy_schwarz_lower_bound(c).lower_bound);
  else doc["samples"] = str(c.samples);
  json top = json::array();
  for (const auto& [m, count] : c.top(o.top)) top.push_back(json{{"key", m.key()}, {"count", str(count)}});
  doc["top_classes"] = top;
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw InvalidArgument("cannot write " + o.csv);
    f << "key,count\n";
    for (const auto& [packed, count] : c.mu) f << '"' << c.matrix(packed).key() << "\"," << count << '\n';
  }
  return 0;
}

int cmd_spectrum(const Options& o, json& doc) {
  const NDLGraph g = build_graph(o);
  const auto c = check_parameters(g, o.eigen_cap);
  if (!o.edges.empty()) {
    std::ofstream f(o.edges);
    if (!f) throw InvalidArgument("cannot write " + o.edges);
    f << g.edge_list();
  }
  const json s = spectrum_json(g, c);
  for (auto it = s.begin(); it != s.end(); ++it) doc[it.key()] = it.value();
  std::vector<Check> checks = spectrum_checks(g, c);
  doc["verdict"] = verdict(checks);
  return c.pass() ? 0 : 1;
}

int cmd_mixing(const Options& o, json& doc) {
  const NDLGraph g = build_graph(o);
  std::vector<Check> checks;
  doc["mixing"] = mixing_run(g, o, checks);
  attach(doc, checks);
  return gating_pass(checks) ? 0 : 1;
}

std::optional<std::uint64_t> expected_orthogonal_order(std::uint32_t q, unsigned n) {
  if (n == 0) return 1;
  if (n == 1) return 2;
  if (n == 2) return q % 4 == 3 ? 2ull * (q + 1) : 2ull * (q - 1);
  return std::nullopt;
}

int cmd_group(const Options& o, json& doc) {
  OrthogonalCaps caps;
  caps.allow_dimension_four = o.allow_dim4;
  json rows = json::array();
  std::vector<Check> checks;
  for (auto q : o.qs) {
    const PrimeField field(q);
    for (auto n : o.dims) {
      const auto group = enumerate_orthogonal(field, n, caps);
      json row{{"q", q}, {"n", n}, {"order", str(group.size())}};
      if (const auto e = expected_orthogonal_order(q, n)) {
        row["expected"] = str(*e);
        checks.push_back(identity_check("order q=" + std::to_string(q) + " n=" + std::to_string(n),
                                        Rational(group.size()), Rational(*e)));
      } else {
        const Int ref = 2 * ipow(Int(q), n * (n - 1) / 2);
        row["reference_2q_binom"] = str(ref);
        row["ratio_to_reference"] = str(Rational(Int(group.size()), ref));
      }
      if (n == 2) row["unit_circle"] = str(unit_circle(field).size());
      if (o.matrices) {
        json ms = json::array();
        for (const auto& g : group) ms.push_back(g.entries());
        row["matrices"] = ms;
      }
      rows.push_back(std::move(row));
    }
  }
  doc["table"] = rows;
  attach(doc, checks);
  return gating_pass(checks) ? 0 : 1;
}

void lemma_mixing(const Options& o, json& doc, std::vector<Check>& checks) {
  const NDLGraph g = build_graph(o);
  doc["mixing"] = mixing_run(g, o, checks);
}

void lemma_er(const Options& o, json& doc, std::vector<Check>& checks) {
  Options er = o;
  er.graph = "er";
  const NDLGraph g = build_graph(er);
  const auto c = check_parameters(g, o.eigen_cap);
  doc["spectrum"] = spectrum_json(g, c);
  auto cs = spectrum_checks(g, c);
  checks.insert(checks.end(), cs.begin(), cs.end());
}

void lemma_power_sum(const Options& o, json& doc, std::vector<Check>& checks) {
  if (o.powers.empty()) throw InvalidArgument("--powers must not be empty");
  std::mt19937_64 rng(o.seed);
  std::uint64_t random_violations = 0, random_checked = 0;
  double tightest = 0;
  for (unsigned t = 0; t < o.trials; ++t) {
    const unsigned n = o.powers[t % o.powers.size()];
    std::vector<std::uint64_t> f(1 + rng() % o.profile_size);
    for (auto& v : f) v = rng() % (o.max_value + 1);
    const auto r = power_sum_check(f, n);
    ++random_checked;
    random_violations += !r.pass;
    if (r.rhs != 0) tightest = std::max(tightest, to_double(r.lhs / r.rhs));
  }
  Check rc{"random_profiles", str(random_violations), "0", 0, random_violations == 0, true,
           "violations over " + str(random_checked) + " random profiles"};
  rc.ratio = tightest;
  checks.push_back(std::move(rc));

  std::uint64_t constant_checked = 0, constant_unequal = 0;
  for (auto n : o.powers)
    for (std::uint64_t c : {0ull, 1ull, 2ull, 5ull, 17ull})
      for (std::size_t size : {1u, 7u, 25u}) {
        const std::vector<std::uint64_t> f(size, c);
        const auto r = power_sum_check(f, n);
        ++constant_checked;
        constant_unequal += r.lhs != r.rhs;
      }
  checks.push_back(identity_check("constant_profiles_equality", Rational(constant_unequal), 0, true,
                                  "constant profiles attain equality; count of unequal cases over " +
                                      str(constant_checked)));

  const PointSet set = o.input.empty() && !o.grid && o.random == 0 && o.random_product.empty()
                           ? PointSet::full_grid(PrimeField(o.q), 2)
                           : resolve_set(o);
  MotionCaps mcaps;
  if (set.dimension() == 2 && set.field().order() > mcaps.max_q_dim2)
    throw CapExceeded("motion sweep field size (d=2)", set.field().order(), mcaps.max_q_dim2);
  if (set.dimension() != 2) throw InvalidArgument("motion sweep profiles are taken in the plane");
  const auto group = enumerate_orthogonal(set.field(), 2);
  const auto profiles = motion_profiles(set.field(), set.points(), group, o.threads);
  std::uint64_t motion_violations = 0, motion_checked = 0;
  double motion_tightest = 0;
  for (const auto& prof : profiles) {
    const std::vector<std::uint64_t> f(prof.begin(), prof.end());
    for (auto n : o.powers) {
      const auto r = power_sum_check(f, n);
      ++motion_checked;
      motion_violations += !r.pass;
      if (r.rhs != 0) motion_tightest = std::max(motion_tightest, to_double(r.lhs / r.rhs));
    }
  }
  Check mc{"motion_profiles", str(motion_violations), "0", 0, motion_violations == 0, true,
           "violations over " + str(motion_checked) + " (rotation, power) profiles"};
  mc.ratio = motion_tightest;
  checks.push_back(std::move(mc));
  doc["set"] = set_summary(set);
  doc["powers"] = o.powers;
}

void lemma_embedding(const Options& o, json& doc, std::vector<Check>& checks) {
  const PointSet set = resolve_set(o);
  if (!set.is_product()) throw InvalidArgument("the embedding check needs a product set");
  if (set.dimension() < 2) throw InvalidArgument("the embedding check needs d >= 2");
  const ErGraph er = build_er_graph(set.field(), 2 * set.dimension(), o.vertex_cap);
  const auto& last = set.factors().back();

  json rows = json::array();
  bool counts_agree = true, mult_ok = true, dots_ok = true, mixing_ok = true, bound_ok = true;
  Rational worst_ratio = -1, worst_lhs = 0, worst_rhs = 0;
  for (auto a : last)
    for (auto b : last) {
      const auto r = mainlm_embedding(set, a, b, &er);
      counts_agree = counts_agree && r.n_direct == r.n_graph;
      mult_ok = mult_ok && r.max_mult_u <= 2 && r.max_mult_v <= 2;
      dots_ok = dots_ok && r.dot_identity_ok;
      mixing_ok = mixing_ok && r.mixing.holds;
      bound_ok = bound_ok && r.within_printed_bound;
      const Rational ratio = Rational(r.n_direct) / r.printed_bound;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_lhs = Rational(r.n_direct);
        worst_rhs = r.printed_bound;
      }
      rows.push_back(json{{"a", a},
                          {"b", b},
                          {"n_direct", str(r.n_direct)},
                          {"n_graph", str(r.n_graph)},
                          {"size_u", str(r.size_u)},
                          {"size_v", str(r.size_v)},
                          {"max_multiplicity_u", str(r.max_mult_u)},
                          {"max_multiplicity_v", str(r.max_mult_v)},
                          {"bound", str(r.printed_bound)},
                          {"mixing_holds", r.mixing.holds},
                          {"dot_identity_checks", str(r.dot_identity_checks)}});
    }
  checks.push_back(flag_check("graph_count_equals_direct", counts_agree));
  checks.push_back(flag_check("multiplicities_at_most_two", mult_ok));
  checks.push_back(flag_check("dot_product_identity", dots_ok));
  checks.push_back(flag_check("mixing_on_embedded_multisets", mixing_ok));
  checks.push_back(exact_check("quadruple_bound_per_pair", worst_lhs, worst_rhs, bound_ok, true,
                               "tightest (a, b) pair shown"));
  const auto nb = nu_square_bound_product(set);
  checks.push_back(exact_check("nu_square_bound", Rational(nb.lhs), nb.rhs, nb.pass, true,
                               "strict; smallest factor rotated last, |A_d| = " + str(nb.min_factor)));
  checks.push_back(flag_check("rotation_invariance", nb.rotation_invariant, false));
  doc["set"] = set_summary(set);
  doc["pairs"] = rows;
}

void lemma_planar_nu(const Options& o, json& doc, std::vector<Check>& checks) {
  const PointSet set = resolve_set(o);
  const auto points = planar_points(o, set);
  const Rational c = parse_rational(o.constant);
  const auto r = nu_square_bound_planar(set.field(), points, c);
  Check main{"planar_nu_square_bound", str(r.lhs), fmt_double(r.rhs), 0, r.pass, true,
             "C (|E|^4/q + q |E|^(5/2)) with C = " + str(c) + "; decided exactly, rhs shown as float"};
  main.ratio = r.rhs > 0 ? static_cast<double>(r.lhs) / r.rhs : 0;
  checks.push_back(std::move(main));
  checks.push_back(exact_check("nu_square_vs_hinges", Rational(r.lhs), Rational(Int(r.size) * r.hinge_total),
                               r.eq5_holds, false));
  Check chain{"quadratic_chain", str(r.lhs), fmt_double(r.chain_root), 0, r.chain_holds, false,
              "S <= |E|^4/q + sqrt(q |E|^3 (S/q + 2(q-1)|E|^2)); rhs is the largest root"};
  chain.ratio = r.chain_root > 0 ? static_cast<double>(r.lhs) / r.chain_root : 0;
  checks.push_back(std::move(chain));
  doc["size"] = str(r.size);
  doc["empirical_constant"] = flt(r.empirical_constant);
  doc["hypotheses"] = json{{"size_at_least_4q", r.size_hypothesis},
                           {"isotropic_pairs", str(r.isotropic_pairs)},
                           {"isotropic_directions_exist", r.isotropic_directions_exist}};
  doc["hinge_total"] = str(r.hinge_total);
}

void lemma_hinge(const Options& o, json& doc, std::vector<Check>& checks) {
  const PointSet set = resolve_set(o);
  const auto points = planar_points(o, set);
  const auto r = hinge_lemma_check(set.field(), points);
  const Int eh = Int(r.size) * r.hinge_total;
  checks.push_back(exact_check("nu_square_vs_hinges", Rational(r.lhs), Rational(eh), r.eq5, true,
                               "sum over nonzero lambda of nu^2 <= |E| H"));
  checks.push_back(exact_check("quarter_unordered_pairs", Rational(r.lhs, 4), Rational(eh, 4), r.quarter_unordered, true,
                               "unordered counts nu/2 against |E| H / 4"));
  checks.push_back(exact_check("quarter_ordered_pairs", Rational(r.lhs), Rational(eh, 4), r.quarter_ordered, false,
                               "ordered counts against |E| H / 4"));
  doc["size"] = str(r.size);
  doc["hinge_total"] = str(r.hinge_total);
  doc["identity_cross_checked"] = r.identity_cross_checked;
  doc["hypotheses"] = json{{"size_at_least_4q", r.size_hypothesis},
                           {"no_isotropic_pairs", r.no_isotropic_pairs},
                           {"q_three_mod_four", r.q_three_mod_four}};
}

void lemma_reflection(const Options& o, json& doc, std::vector<Check>& checks) {
  const PrimeField field(o.q);
  std::vector<Residue> lambdas;
  if (o.lambda != 0) lambdas.push_back(o.lambda);
  else
    for (Residue l = 1; l < o.q; ++l) lambdas.push_back(l);
  json rows = json::array();
  for (auto l : lambdas) {
    const auto rg = build_reflection_graph(field, l, o.vertex_cap);
    NDLGraph g = rg.graph;
    if (!o.declared_lambda.empty()) {
      const Rational x = parse_rational(o.declared_lambda);
      g.declared().lambda_sq = x * x;
      g.declared().lambda_text = o.declared_lambda;
    }
    const auto c = check_parameters(g, o.eigen_cap);
    json row = spectrum_json(g, c);
    row["lambda"] = l;
    row["branch"] = rg.branch;
    row["reflections"] = str(rg.reflection_count);
    rows.push_back(row);
    auto cs = spectrum_checks(g, c);
    checks.insert(checks.end(), cs.begin(), cs.end());
    const int expected_branch = o.q % 4 == 3 ? 1 : -1;
    checks.push_back(identity_check(g.name() + ":branch", rg.branch, expected_branch, true, "+1 when q = 3 mod 4"));
  }
  doc["graphs"] = rows;
}

void lemma_hinge_bound(const Options& o, json& doc, std::vector<Check>& checks) {
  const PointSet set = resolve_set(o);
  const auto points = planar_points(o, set);
  const Rational c = parse_rational(o.constant);
  const auto r = hinge_upper_bound(set.field(), points, c);
  Check main{"hinge_bound", str(r.hinge_total), fmt_double(r.bound), 0, r.pass, true,
             "|E|^3/q + sqrt(q |E| (S/q + 2(q-1)|E|^2)); decided exactly"};
  main.ratio = r.bound > 0 ? static_cast<double>(r.hinge_total) / r.bound : 0;
  checks.push_back(std::move(main));
  const Rational cb = c * Rational(ipow(Int(r.size), 3), set.field().order());
  checks.push_back(exact_check("hinge_corollary", Rational(r.hinge_total), cb, r.corollary_pass, r.corollary_applicable,
                               r.corollary_applicable ? "|E|^3 >= q^4: H <= C |E|^3 / q"
                                                      : "|E|^3 < q^4: outside the corollary's range, reported only"));
  doc["size"] = str(r.size);
  doc["nu_square_nonzero"] = str(r.nu_sq_nonzero);
  doc["empirical_constant"] = flt(r.empirical_constant);
}

std::vector<Check> chain_checks(const ChainReport& r) {
  std::vector<Check> out;
  for (const auto& l : r.links) {
    out.push_back(exact_check(l.name, l.lhs, l.rhs, l.pass, l.gating, l.note));
    out.back().identity = l.name == "mass_identity";
  }
  return out;
}

json chain_json(const ChainReport& r) {
  return json{{"q", r.q},
              {"d", r.d},
              {"k", r.k},
              {"set_size", str(r.set_size)},
              {"min_factor", str(r.min_factor)},
              {"group_order", str(r.group_order)},
              {"subgroup_order", str(r.subgroup_order)},
              {"quadruples", str(r.w)},
              {"s1", str(r.s1)},
              {"s2", str(r.s2)},
              {"max_w", str(r.max_w)},
              {"support_size", str(r.support_size)},
              {"census_total", str(r.census_total)},
              {"census_sum_squares", str(r.census_sum_squares)}};
}

void lemma_chain(const Options& o, json& doc, std::vector<Check>& checks) {
  const PointSet set = resolve_set(o);
  ChainCaps caps;
  caps.census_work_cap = o.census_cap;
  const auto r = theorem_chain_report(set, o.k, caps, o.threads);
  doc["chain"] = chain_json(r);
  auto cs = chain_checks(r);
  checks.insert(checks.end(), cs.begin(), cs.end());
}

int cmd_verify_lemma(const Options& o, json& doc) {
  if (std::find(kLemmaIds.begin(), kLemmaIds.end(), o.lemma) == kLemmaIds.end())
    throw InvalidArgument("unknown lemma id '" + o.lemma + "'");
  std::vector<Check> checks;
  doc["lemma"] = o.lemma;
  if (o.lemma == "2.1") lemma_mixing(o, doc, checks);
  else if (o.lemma == "2.2") lemma_er(o, doc, checks);
  else if (o.lemma == "2.3") lemma_power_sum(o, doc, checks);
  else if (o.lemma == "3.1") lemma_embedding(o, doc, checks);
  else if (o.lemma == "4.1") lemma_planar_nu(o, doc, checks);
  else if (o.lemma == "4.2") lemma_hinge(o, doc, checks);
  else if (o.lemma == "4.3") lemma_reflection(o, doc, checks);
  else if (o.lemma == "remark-4.4") lemma_hinge_bound(o, doc, checks);
  else lemma_chain(o, doc, checks);
  attach(doc, checks);
  return gating_pass(checks) ? 0 : 1;
}

int cmd_chain(const Options& o, json& doc) {
  std::vector<Check> checks;
  lemma_chain(o, doc, checks);
  attach(doc, checks);
  return gating_pass(checks) ? 0 : 1;
}

json floor_json(const SpencerFloor& f) {
  json j{{"n", str(f.n)}, {"k", f.k}, {"m", str(f.m)}, {"hypothesis_ok", f.hypothesis_ok}, {"no_edges", f.no_edges},
         {"root", str(f.root)}};
  j["value"] = f.value ? json(str(*f.value)) : json(nullptr);
  j["ceiling"] = f.ceiling ? json(str(*f.ceiling)) : json(nullptr);
  return j;
}

int cmd_dds(const Options& o, json& doc) {
  const PointSet set = resolve_set(o);
  const auto points = set.points();
  DdsCaps caps;
  caps.max_points = o.max_points;
  IndependentSetOptions iso;
  iso.greedy_completion = !o.no_completion;
  doc["set"] = set_summary(set);
  doc["n"] = str(points.size());
  try {
    const auto r = dds_extract(set.field(), points, o.seed, caps, o.threads, iso);
    doc["edges"] = str(r.breakdown.edges);
    doc["hinge_edges"] = str(r.breakdown.hinge_edges);
    doc["hinge_free_edges"] = str(r.breakdown.hinge_free_edges);
    doc["zero_edges"] = str(r.breakdown.zero_edges);
    doc["spencer_floor"] = floor_json(r.floor);
    json subset = json::array();
    for (const auto& p : r.subset) subset.push_back(point_json(p));
    doc["subset"] = subset;
    doc["subset_size"] = str(r.subset.size());
    doc["rounds"] = r.rounds;
    doc["independent"] = r.independent;
    doc["verified"] = r.verified();
    if (r.certificate.witness) {
      json w = json::array();
      for (const auto& p : *r.certificate.witness) w.push_back(point_json(p));
      doc["witness"] = w;
    }
    doc["edge_constant"] = flt(r.edge_constant);
    doc["pigeonhole"] = json{{"threshold", str(r.pigeonhole_threshold)},
                             {"printed_cap", str(r.printed_cap)},
                             {"within", r.within_pigeonhole}};
    std::vector<Check> checks;
    checks.push_back(flag_check("independent_in_hypergraph", r.independent));
    checks.push_back(flag_check("distinct_distance_predicate", r.certificate.ok));
    if (r.floor.ceiling) {
      checks.push_back(exact_check("size_at_least_spencer_floor", Rational(r.subset.size()), Rational(*r.floor.ceiling),
                                   r.subset.size() >= *r.floor.ceiling, true, "lower bound; ratio is floor / |U|"));
      checks.back().ratio = r.subset.empty() ? 0 : static_cast<double>(*r.floor.ceiling) / r.subset.size();
    }
    attach(doc, checks);
    return gating_pass(checks) ? 0 : 1;
  } catch (const RoundLimitExceeded& e) {
    json best = json::array();
    for (auto i : e.best()) best.push_back(point_json(points[i]));
    doc["error"] = e.what();
    doc["best_attempt"] = best;
    doc["verified"] = false;
    doc["pass"] = false;
    return 1;
  }
}

int cmd_thresholds(const Options& o, json& doc) {
  const auto r = threshold_report(o.q, o.d, o.k, o.sizes,
                                  o.measured ? std::optional<std::uint64_t>(o.measured) : std::nullopt);
  doc["set_size"] = str(r.set_size);
  doc["target_classes"] = str(r.target_classes);
  if (r.measured_classes) {
    doc["measured_classes"] = str(*r.measured_classes);
    doc["measured_fraction"] = str(Rational(Int(*r.measured_classes), r.target_classes));
  }
  json items = json::array();
  for (const auto& it : r.items)
    items.push_back(json{{"name", it.name},
                         {"applicable", it.applicable},
                         {"condition", it.condition},
                         {"exponent", str(it.exponent)},
                         {"ratio", flt(it.ratio)},
                         {"satisfied", it.satisfied},
                         {"boundary", it.boundary},
                         {"note", it.note}});
  doc["items"] = items;
  return 0;
}

// ---------------------------------------------------------------- parser

struct Parser {
  CLI::App app{"Finite-field distance, simplex and expander-graph checks", "ffgeom"};
  std::map<CLI::App*, Handler> handlers;
  CLI::App* suite = nullptr;
  bool markdown = false;
};

void add_common(CLI::App* s, Options& o) {
  s->add_option("--threads", o.threads, "Worker threads; results do not depend on it")->check(CLI::Range(1u, 256u));
  s->add_option("--out", o.out, "Write the JSON report here instead of stdout");
}

void add_set(CLI::App* s, Options& o) {
  s->add_option("--input", o.input, "Point set file: CSV (explicit) or JSON (product)");
  s->add_flag("--grid", o.grid, "Use all of F_q^d");
  s->add_option("--random", o.random, "Use this many distinct uniform points of F_q^d");
  s->add_option("--random-product", o.random_product, "Random product set with these factor sizes")->delimiter(',');
  s->add_option("--q", o.q, "Field size (odd prime)");
  s->add_option("--d", o.d, "Dimension");
  s->add_option("--seed", o.seed, "Seed for random inputs and randomized steps");
}

void add_graph(CLI::App* s, Options& o) {
  s->add_option("--graph", o.graph, "er, reflection or complete");
  s->add_option("--q", o.q, "Field size (odd prime)");
  s->add_option("--m", o.m, "ER dimension m (vertices PG(q, m))");
  s->add_option("--lambda", o.lambda, "Reflection graph distance (nonzero)");
  s->add_option("--n", o.n, "Complete graph size");
  s->add_option("--declared-lambda", o.declared_lambda, "Override the declared lambda (p, p/q or decimal)");
  s->add_option("--vertex-cap", o.vertex_cap, "Largest vertex count to build");
  s->add_option("--eigen-cap", o.eigen_cap, "Largest dense eigensolve");
}

void build_parser(Parser& p, Options& o) {
  auto& app = p.app;
  app.require_subcommand(0, 1);
  app.option_defaults()->always_capture_default();
  app.add_flag("--markdown-reference", p.markdown, "Print the full flag reference as Markdown");
  app.set_version_flag("--version", version());

  auto* nu = app.add_subcommand("nu", "Distance histogram, quadruple count and (planar) hinge counts");
  add_common(nu, o);
  add_set(nu, o);
  p.handlers[nu] = cmd_nu;

  auto* census = app.add_subcommand("census", "Congruence-class census of k-simplices by distance matrix");
  add_common(census, o);
  add_set(census, o);
  census->add_option("--k", o.k, "Simplex order k (tuples of k+1 points)");
  census->add_option("--top", o.top, "Number of largest classes to list");
  census->add_option("--csv", o.csv, "Also write every class as CSV (key, count)");
  census->add_option("--sample", o.sample, "Sample this many tuples instead of enumerating");
  census->add_option("--cap", o.census_cap, "Largest |E|^(k+1) to enumerate");
  p.handlers[census] = cmd_census;

  auto* spectrum = app.add_subcommand("spectrum", "Build a graph and check its declared (n, d, lambda)");
  add_common(spectrum, o);
  add_graph(spectrum, o);
  spectrum->add_option("--edges", o.edges, "Dump the edge list (\"i j\", i <= j) to this file");
  p.handlers[spectrum] = cmd_spectrum;

  auto* mixing = app.add_subcommand("mixing", "Expander mixing lemma on random vertex multisets");
  add_common(mixing, o);
  add_graph(mixing, o);
  mixing->add_option("--pairs", o.pairs, "Number of random multiset pairs");
  mixing->add_option("--max-size", o.max_size, "Largest multiset size (default: vertex count)");
  mixing->add_option("--seed", o.seed, "Seed");
  p.handlers[mixing] = cmd_mixing;

  auto* group = app.add_subcommand("group", "Orders of O(n, F_q) by enumeration");
  add_common(group, o);
  group->add_option("--q", o.qs, "Field sizes")->delimiter(',');
  group->add_option("--n", o.dims, "Matrix sizes")->delimiter(',');
  group->add_flag("--matrices", o.matrices, "Include every matrix (row-major)");
  group->add_flag("--allow-dim4", o.allow_dim4, "Permit n = 4");
  p.handlers[group] = cmd_group;

  auto* verify = app.add_subcommand("verify-lemma", "Check one lemma's inequalities exactly");
  add_common(verify, o);
  verify->add_option("id", o.lemma, "2.1, 2.2, 2.3, 3.1, 4.1, 4.2, 4.3, remark-4.4 or eq-2-chain")->required();
  add_set(verify, o);
  verify->add_option("--graph", o.graph, "Graph for 2.1: er, reflection or complete");
  verify->add_option("--m", o.m, "ER dimension m");
  verify->add_option("--lambda", o.lambda, "Reflection graph distance (0 = every nonzero lambda for 4.3)");
  verify->add_option("--n", o.n, "Complete graph size for 2.1");
  verify->add_option("--declared-lambda", o.declared_lambda, "Override the declared lambda");
  verify->add_option("--vertex-cap", o.vertex_cap, "Largest vertex count to build");
  verify->add_option("--eigen-cap", o.eigen_cap, "Largest dense eigensolve");
  verify->add_option("--pairs", o.pairs, "Random multiset pairs for 2.1");
  verify->add_option("--max-size", o.max_size, "Largest multiset size for 2.1");
  verify->add_option("--trials", o.trials, "Random profiles for 2.3");
  verify->add_option("--powers", o.powers, "Exponents n for 2.3")->delimiter(',');
  verify->add_option("--profile-size", o.profile_size, "Largest random profile domain for 2.3");
  verify->add_option("--max-value", o.max_value, "Largest random profile value for 2.3");
  verify->add_option("--constant", o.constant, "Constant C for 4.1 and remark-4.4");
  verify->add_flag("--strip-isotropic", o.strip_isotropic, "Drop points at distance 0 from an earlier point");
  verify->add_option("--k", o.k, "Simplex order for eq-2-chain");
  verify->add_option("--cap", o.census_cap, "Largest census enumeration");
  p.handlers[verify] = cmd_verify_lemma;

  auto* chain = app.add_subcommand("chain", "Every link of the simplex-counting proof, with enumerated group orders");
  add_common(chain, o);
  add_set(chain, o);
  chain->add_option("--k", o.k, "Simplex order k");
  chain->add_option("--cap", o.census_cap, "Largest census enumeration");
  p.handlers[chain] = cmd_chain;

  auto* dds = app.add_subcommand("dds", "Extract and certify a distinct distance subset (planar)");
  add_common(dds, o);
  add_set(dds, o);
  dds->add_option("--max-points", o.max_points, "Largest |E| for the quadruple enumeration");
  dds->add_flag("--no-completion", o.no_completion, "Skip the greedy completion pass");
  p.handlers[dds] = cmd_dds;

  auto* thresholds = app.add_subcommand("thresholds", "Which size hypotheses a set satisfies");
  add_common(thresholds, o);
  thresholds->add_option("--q", o.q, "Field size");
  thresholds->add_option("--d", o.d, "Dimension");
  thresholds->add_option("--k", o.k, "Simplex order");
  thresholds->add_option("--sizes", o.sizes, "|E|, or the d factor sizes of a product")->delimiter(',')->required();
  thresholds->add_option("--measured", o.measured, "Measured number of classes, if known");
  p.handlers[thresholds] = cmd_thresholds;

  p.suite = app.add_subcommand("suite", "Run a matrix of cells from a JSON config");
  add_common(p.suite, o);
  p.suite->add_option("--config", o.config, "Suite config: {\"cells\": [{\"name\", \"args\"}]}")->required();
  p.suite->add_option("--csv", o.csv, "Also write the summary table as CSV");
}

bool is_help(const CLI::Option* opt) {
  const auto& names = opt->get_lnames();
  return std::find(names.begin(), names.end(), "help") != names.end();
}

json resolved_config(CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (is_help(opt) || name == "--threads" || name == "--out" || name.empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
    } else {
      value = opt->get_default_str();
    }
    cfg[name] = value;
  }
  return cfg;
}

void emit(const json& doc, const Options& o, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InvalidArgument("cannot write " + o.out);
  f << text;
}

int run_suite(const Options& o, json& doc, std::ostream& err) {
  std::ifstream in(o.config);
  if (!in) throw InvalidArgument("cannot read suite config " + o.config);
  const json cfg = json::parse(in);
  if (!cfg.is_object() || !cfg.contains("cells") || !cfg["cells"].is_array())
    throw ParseError("suite config must be an object with a \"cells\" array");

  json rows = json::array();
  std::vector<std::string> failed;
  std::ostringstream csv;
  csv << "cell,lhs,rhs,ratio,pass\n";
  for (const auto& cell : cfg["cells"]) {
    const std::string name = cell.at("name").get<std::string>();
    const auto args = cell.at("args").get<std::vector<std::string>>();
    if (!args.empty() && args.front() == "suite") throw InvalidArgument("cell " + name + ": suites do not nest");
    std::ostringstream cell_out, cell_err;
    const int code = run(args, cell_out, cell_err);
    if (code == 2) {
      err << "cell " << name << " failed with a usage or cap error: " << cell_err.str();
      throw InvalidArgument("suite aborted at cell " + name);
    }
    json v{{"check", ""}, {"lhs", ""}, {"rhs", ""}, {"ratio", ""}, {"pass", code == 0}};
    if (!cell_out.str().empty()) {
      const json report = json::parse(cell_out.str());
      if (report.contains("verdict")) v = report["verdict"];
    }
    const bool pass = code == 0;
    if (!pass) failed.push_back(name);
    rows.push_back(json{{"cell", name},
                        {"exit_code", code},
                        {"check", v["check"]},
                        {"lhs", v["lhs"]},
                        {"rhs", v["rhs"]},
                        {"ratio", v["ratio"]},
                        {"pass", pass}});
    csv << name << ',' << v["lhs"].get<std::string>() << ',' << v["rhs"].get<std::string>() << ','
        << v["ratio"].get<std::string>() << ',' << (pass ? "true" : "false") << '\n';
  }
  doc["cells"] = rows;
  doc["failed"] = failed;
  doc["pass"] = failed.empty();
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw InvalidArgument("cannot write " + o.csv);
    f << csv.str();
  }
  return failed.empty() ? 0 : 1;
}

}  // namespace

std::string version() { return std::string("ffgeom ") + FFGEOM_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  Parser p;
  build_parser(p, o);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    p.app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      if (dynamic_cast<const CLI::CallForVersion*>(&e)) out << version() << '\n';
      else out << p.app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  if (p.markdown) {
    out << flag_reference();
    return 0;
  }
  const auto subs = p.app.get_subcommands();
  if (subs.empty()) {
    err << p.app.help();
    return 2;
  }
  CLI::App* sub = subs.front();

  json doc;
  doc["command"] = sub->get_name();
  doc["version"] = version();
  doc["config"] = resolved_config(sub);
  try {
    const int code = sub == p.suite ? run_suite(o, doc, err) : p.handlers.at(sub)(o, doc);
    emit(doc, o, out);
    return code;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    err << "malformed JSON: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal cross-check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

std::string flag_reference() {
  Options o;
  Parser p;
  build_parser(p, o);
  std::ostringstream md;
  md << "# ffgeom command-line reference\n\n"
     << "Generated by `ffgeom --markdown-reference` (" << version() << ").\n\n"
     << "Exit codes: 0 every check passed, 1 a verified inequality failed, 2 usage, input or cap error.\n";
  for (const CLI::App* sub : p.app.get_subcommands({})) {
    md << "\n## " << sub->get_name() << "\n\n" << sub->get_description() << "\n\n";
    md << "| flag | default | description |\n|---|---|---|\n";
    for (const CLI::Option* opt : sub->get_options()) {
      const std::string name = opt->get_name(false, true);
      if (is_help(opt)) continue;
      md << "| `" << name << "` | " << (opt->get_default_str().empty() ? "" : "`" + opt->get_default_str() + "`")
         << " | " << opt->get_description() << " |\n";
    }
  }
  return md.str();
}

}  // namespace ffgeom::cli
