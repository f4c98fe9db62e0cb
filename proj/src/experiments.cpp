#include "planarmap/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "planarmap/canonical.hpp"
#include "planarmap/enumerate.hpp"
#include "planarmap/gf.hpp"
#include "planarmap/map_io.hpp"
#include "planarmap/neighborhood.hpp"
#include "planarmap/parallel.hpp"
#include "planarmap/random.hpp"
#include "planarmap/standard_maps.hpp"
#include "planarmap/stats.hpp"

namespace planarmap {

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string str(const Rational& r) { return r.get_str(); }

// n/2 + 1
Rational mean_vertices_exact(std::size_t n) { return make_rational(static_cast<long>(n) + 2, 2); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Check check(std::string name, bool passed, std::string detail = {}, bool gate = true) {
  return Check{std::move(name), passed, std::move(detail), gate};
}

// 2 * 3^n * (2n)! / (n! (n+2)!), the number of rooted planar maps.
Rational rooted_map_count(std::size_t n) {
  mpz_class num = 2, den = 1;
  for (std::size_t i = 0; i < n; ++i) num *= 3;
  for (std::size_t i = 1; i <= 2 * n; ++i) num *= static_cast<unsigned long>(i);
  for (std::size_t i = 1; i <= n; ++i) den *= static_cast<unsigned long>(i);
  for (std::size_t i = 1; i <= n + 2; ++i) den *= static_cast<unsigned long>(i);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

const CltConstants& series_constants() {
  static const CltConstants c = clt_constants(12);
  return c;
}

// Faces of degree d, other than the outer face, whose boundary visits d
// distinct vertices.
std::size_t simple_cycle_faces(const RootedMap& m, std::size_t d) {
  std::size_t count = 0;
  for (const Face& f : faces(m)) {
    if (f.id == m.outer_face() || f.darts.size() != d) continue;
    std::set<std::uint32_t> vs;
    for (Dart x : f.darts) vs.insert(m.vertex_of(x));
    if (vs.size() == d) ++count;
  }
  return count;
}

// All rooted quadrangulations with n faces, as maps with 2n edges.
std::vector<CanonicalCode> quadrangulation_codes(std::size_t n) {
  const EnumerationTable t = enumerate_rooted_maps(2 * n);
  std::vector<CanonicalCode> codes;
  for (std::size_t i = 0; i < t.maps.size(); ++i)
    if (is_quadrangulation(t.maps[i])) codes.push_back(t.codes[i]);
  return codes;
}

std::vector<RootedMap> pattern_suite() {
  return {cycle_map(1), cycle_map(2), cycle_map(3), two_triangles_map(), single_edge_map(),
          path_map(2)};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  CounterRng rng(seed, tag ^ 0x5eed5eed5eed5eedULL);
  return rng();
}

json to_json(const ExperimentConfig& c) {
  return json{{"subcommand", c.subcommand},     {"n", c.n},
              {"replicates", c.replicates},     {"seed", c.seed},
              {"radius", c.radius},             {"pattern_file", c.pattern_file},
              {"host_file", c.host_file},       {"model", to_string(c.model)},
              {"out", c.out},                   {"workers", c.workers},
              {"significance", c.significance}, {"long_tests", c.long_tests}};
}

json to_json(const Check& c) {
  return json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"gate", c.gate}};
}

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed || !c.gate; });
}

json ExperimentReport::numerical() const {
  json cfg = planarmap::to_json(config);
  // The worker count and output path do not influence results.
  cfg.erase("workers");
  cfg.erase("out");
  json j{{"config", cfg}, {"results", results}, {"checks", json::array()}};
  for (const auto& c : checks) j["checks"].push_back(planarmap::to_json(c));
  j["passed"] = passed();
  return j;
}

json ExperimentReport::to_json() const {
  json j = numerical();
  j["config"] = planarmap::to_json(config);
  j["timing"] = {{"wall_seconds", wall_seconds}};
  return j;
}

ExperimentReport run_enumerate(const ExperimentConfig& cfg) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.config = cfg;
  const std::size_t top = cfg.n ? cfg.n : (cfg.long_tests ? 5 : 4);
  if (top > kMaxEnumerationEdges)
    throw std::invalid_argument("exhaustive enumeration is limited to n <= 5");
  const MSeries series = solve_M_series(top);
  json levels = json::array();
  std::ostringstream csv;
  for (std::size_t n = 1; n <= top; ++n) {
    const EnumerationTable t = enumerate_rooted_maps(n);
    const auto vc = t.vertex_census();
    const Moments mo = exact_vertex_moments(t);
    json census = json::object();
    bool bivariate = true;
    const RationalPoly& coeff = series.at_one[n];
    for (std::size_t k = 0; k <= n + 1; ++k) {
      const auto it = vc.find(k);
      const std::size_t count = it == vc.end() ? 0 : it->second;
      if (count) census[std::to_string(k)] = count;
      const Rational c = coeff.coeff(Var::X, static_cast<unsigned>(k)).constant_term();
      if (c != Rational(static_cast<unsigned long>(count))) bivariate = false;
    }
    const Rational series_total = coeff.evaluate(0, 0, 1);
    const Rational expected = rooted_map_count(n);
    const Rational found(static_cast<unsigned long>(t.maps.size()));
    levels.push_back({{"n", n},
                      {"count", t.maps.size()},
                      {"series_count", str(series_total)},
                      {"vertex_census", census},
                      {"mean_vertices", str(mo.mean)},
                      {"variance_vertices", str(mo.variance)}});
    rep.checks.push_back(check("count n=" + std::to_string(n), found == expected,
                               std::to_string(t.maps.size()) + " vs " + str(expected)));
    rep.checks.push_back(check("series count n=" + std::to_string(n), series_total == found,
                               str(series_total)));
    rep.checks.push_back(check("bivariate census n=" + std::to_string(n), bivariate));
    rep.checks.push_back(check("mean vertices n=" + std::to_string(n),
                               mo.mean == mean_vertices_exact(n),
                               str(mo.mean)));
    csv << t.census_csv(n == 1);
  }
  rep.results["levels"] = levels;
  rep.rows_csv = csv.str();
  rep.wall_seconds = sw.seconds();
  return rep;
}

ExperimentReport run_sample(const ExperimentConfig& cfg) {
  Stopwatch sw;
  if (cfg.n == 0 || cfg.replicates == 0)
    throw std::invalid_argument("sample needs n and replicates");
  ExperimentReport rep;
  rep.config = cfg;
  struct Row {
    std::size_t v = 0, f = 0, d = 0;
    int radius = 0;
  };
  std::vector<Row> rows(cfg.replicates);
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t i) {
    const RootedMap m = sample(cfg.model, cfg.n, cfg.seed, i);
    rows[i] = {m.num_vertices(), m.num_faces(), m.root_degree(), radius(m)};
  });
  std::ostringstream csv;
  csv << "replicate,vertices,edges,faces,root_degree,radius\n";
  std::vector<double> vs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << i << ',' << rows[i].v << ',' << cfg.n << ',' << rows[i].f << ',' << rows[i].d << ','
        << rows[i].radius << '\n';
    vs.push_back(static_cast<double>(rows[i].v));
  }
  const SampleMoments mo = sample_moments(vs);
  rep.results = {{"mean_vertices", mo.mean}, {"variance_vertices", mo.variance}};
  rep.rows_csv = csv.str();
  rep.wall_seconds = sw.seconds();
  return rep;
}

ExperimentReport run_pattern(const ExperimentConfig& cfg, const RootedMap& pattern) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.config = cfg;
  const PlanePattern p = make_pattern(pattern);
  rep.results["beta"] = p.beta;
  rep.results["boundary_darts"] = p.boundary_darts.size();
  if (!cfg.host_file.empty()) {
    const RootedMap host = read_map_file(cfg.host_file);
    const std::size_t z = anchored_count(host, p);
    rep.results["z"] = z;
    rep.results["occurrence_corners"] = occurrence_corners(host, p);
    rep.checks.push_back(check("Z divisible by beta", z % p.beta == 0,
                               std::to_string(z) + " / " + std::to_string(p.beta)));
    if (z % p.beta == 0) rep.results["s"] = z / p.beta;
    rep.wall_seconds = sw.seconds();
    return rep;
  }
  return run_gamma(cfg, pattern, {cfg.n});
}

ExperimentReport run_gamma(const ExperimentConfig& cfg, const RootedMap& pattern,
                           const std::vector<std::size_t>& n_list) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.config = cfg;
  const PlanePattern p = make_pattern(pattern);
  std::vector<GammaEstimate> est;
  std::ostringstream csv;
  csv << "n,replicate,Z,s,v,e\n";
  json per_n = json::array();
  for (std::size_t n : n_list) {
    est.push_back(estimate_gamma(p, n, cfg.replicates, derive_seed(cfg.seed, n), cfg.workers,
                                 cfg.model));
    const GammaEstimate& g = est.back();
    for (const auto& r : g.rows)
      csv << n << ',' << r.replicate << ',' << r.z << ',' << r.s << ',' << r.vertices << ','
          << r.edges << '\n';
    per_n.push_back({{"n", n},
                     {"gamma_hat", g.gamma_hat},
                     {"q_hat", g.q_hat},
                     {"stderr_gamma", g.stderr_gamma},
                     {"gamma_exact", str(g.gamma_exact)},
                     {"q_exact", str(g.q_exact)},
                     {"beta", g.beta}});
    rep.checks.push_back(check("gamma = 2 q / beta at n=" + std::to_string(n), g.identity_holds,
                               str(g.gamma_exact)));
  }
  for (std::size_t a = 0; a < est.size(); ++a)
    for (std::size_t b = a + 1; b < est.size(); ++b) {
      const double diff = std::abs(est[a].gamma_hat - est[b].gamma_hat);
      const double joint = std::hypot(est[a].stderr_gamma, est[b].stderr_gamma);
      rep.checks.push_back(check("gamma consistent n=" + std::to_string(est[a].n) + " vs n=" +
                                     std::to_string(est[b].n),
                                 diff <= 3 * joint,
                                 "diff " + fmt(diff) + ", 3 joint se " + fmt(3 * joint)));
    }
  rep.results["beta"] = p.beta;
  rep.results["estimates"] = per_n;
  rep.rows_csv = csv.str();
  rep.wall_seconds = sw.seconds();
  return rep;
}

ExperimentReport run_reweighting(const ExperimentConfig& cfg) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.config = cfg;
  const DistributionReport d = compare_laws(cfg.n, cfg.replicates, cfg.radius,
                                            derive_seed(cfg.seed, 8), cfg.workers, cfg.model);
  json entries = json::array();
  std::ostringstream csv;
  csv << "rank,root_degree,darts,root_freq,vertex_freq,ratio,predicted,rel_stderr\n";
  const std::size_t shown = std::min<std::size_t>(50, d.entries.size());
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    const LawEntry& e = d.entries[i];
    if (i < shown) {
      entries.push_back({{"code", e.key.code.to_string()},
                         {"root_degree", e.key.root_degree},
                         {"root_freq", e.root_freq},
                         {"vertex_freq", e.vertex_freq},
                         {"ratio", e.ratio},
                         {"predicted", e.predicted_half},
                         {"predicted_mu_hat", e.predicted_ratio},
                         {"ratio_rel_stderr", e.ratio_rel_stderr}});
      csv << i << ',' << e.key.root_degree << ',' << e.key.code.num_darts() << ','
          << e.root_freq << ',' << e.vertex_freq << ',' << e.ratio << ',' << e.predicted_half
          << ',' << e.ratio_rel_stderr << '\n';
    }
  }
  const std::size_t top = std::min<std::size_t>(10, d.entries.size());
  for (std::size_t i = 0; i < top; ++i) {
    const LawEntry& e = d.entries[i];
    const double rel = e.ratio / e.predicted_half - 1.0;
    rep.checks.push_back(check("ratio within 15% for key rank " + std::to_string(i + 1) +
                                   " (d=" + std::to_string(e.key.root_degree) + ")",
                               std::abs(rel) <= 0.15,
                               "ratio " + fmt(e.ratio) + " vs 4/d " + fmt(e.predicted_half)));
  }
  if (top < 10) rep.checks.push_back(check("at least ten keys observed", false));
  rep.results = {{"mu_v_hat", d.mu_v_hat},
                 {"total_variation", d.total_variation},
                 {"root_mass", d.root_mass},
                 {"vertex_mass", d.vertex_mass},
                 {"unseen_vertex_mass", d.unseen_vertex_mass},
                 {"distinct_root_keys", d.entries.size()},
                 {"entries", entries}};
  rep.rows_csv = csv.str();
  rep.wall_seconds = sw.seconds();
  return rep;
}

ExperimentReport run_liskovets(const ExperimentConfig& cfg) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.config = cfg;
  const DegreeReport d = degree_distributions(cfg.n, cfg.replicates, derive_seed(cfg.seed, 9),
                                              cfg.workers, 5, cfg.model);
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,d_hat,p_hat,residual,residual_stderr\n";
  for (std::size_t k = 1; k < d.residual.size(); ++k) {
    rows.push_back({{"k", k},
                    {"d_hat", d.d_hat[k]},
                    {"p_hat", d.p_hat[k]},
                    {"residual", d.residual[k]},
                    {"residual_stderr", d.residual_stderr[k]}});
    csv << k << ',' << d.d_hat[k] << ',' << d.p_hat[k] << ',' << d.residual[k] << ','
        << d.residual_stderr[k] << '\n';
    rep.checks.push_back(check("degree residual k=" + std::to_string(k) + " within 3 se",
                               std::abs(d.residual[k]) <= 3 * d.residual_stderr[k],
                               fmt(d.residual[k]) + " vs 3 se " + fmt(3 * d.residual_stderr[k])));
  }
  rep.results = {{"mu_v_hat", d.mu_v_hat}, {"degrees", rows}};
  rep.rows_csv = csv.str();
  rep.wall_seconds = sw.seconds();
  return rep;
}

ExperimentReport run_clt(const ExperimentConfig& cfg) {
  Stopwatch sw;
  if (cfg.n == 0 || cfg.replicates < 2)
    throw std::invalid_argument("clt needs n and at least two replicates");
  ExperimentReport rep;
  rep.config = cfg;
  std::vector<std::int64_t> v(cfg.replicates);
  const std::uint64_t seed = derive_seed(cfg.seed, 6);
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t i) {
    v[i] = static_cast<std::int64_t>(sample(cfg.model, cfg.n, seed, i).num_vertices());
  });
  std::vector<double> vd(v.begin(), v.end());
  const SampleMoments mo = sample_moments(vd);

  const CltConstants& c = series_constants();
  const double n = static_cast<double>(cfg.n);
  const double mean_exact = n / 2.0 + 1.0;
  const double sigma2 = c.sigma2.get_d();
  const double quoted_sigma2 = 25.0 / 32.0;
  const double se = std::sqrt(mo.variance / static_cast<double>(cfg.replicates));
  const double ks = ks_normal_discrete(v, mean_exact, std::sqrt(sigma2 * n));
  const double ks_quoted = ks_normal_discrete(v, mean_exact, std::sqrt(quoted_sigma2 * n));

  rep.checks.push_back(check("mean within 3 se of n/2+1", std::abs(mo.mean - mean_exact) <= 3 * se,
                             fmt(mo.mean) + " vs " + fmt(mean_exact) + " +- " + fmt(3 * se)));
  rep.checks.push_back(check("variance within 5% of 25n/32",
                             std::abs(mo.variance / (quoted_sigma2 * n) - 1.0) <= 0.05,
                             "ratio " + fmt(mo.variance / (quoted_sigma2 * n))));
  rep.checks.push_back(check("KS distance < 0.02", ks < 0.02,
                             "KS " + fmt(ks) + " with sigma^2 = " + str(c.sigma2)));
  rep.checks.push_back(check("variance within 5% of series sigma^2 n",
                             std::abs(mo.variance / (sigma2 * n) - 1.0) <= 0.05,
                             "ratio " + fmt(mo.variance / (sigma2 * n)), false));

  std::ostringstream csv;
  csv << "replicate,vertices\n";
  for (std::size_t i = 0; i < v.size(); ++i) csv << i << ',' << v[i] << '\n';
  rep.results = {{"mean", mo.mean},
                 {"variance", mo.variance},
                 {"skewness", mo.skewness},
                 {"excess_kurtosis", mo.excess_kurtosis},
                 {"stderr_mean", se},
                 {"mean_exact", mean_exact},
                 {"sigma2_series", str(c.sigma2)},
                 {"variance_over_series", mo.variance / (sigma2 * n)},
                 {"variance_over_25n_32", mo.variance / (quoted_sigma2 * n)},
                 {"ks_series_sigma", ks},
                 {"ks_25_32", ks_quoted}};
  rep.rows_csv = csv.str();
  rep.wall_seconds = sw.seconds();
  return rep;
}

ExperimentReport run_series_verify(const ExperimentConfig& cfg) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.config = cfg;
  const std::size_t order = cfg.n ? cfg.n : 12;
  const MSeries m = solve_M_series(order);
  json coeffs = json::array();
  for (std::size_t k = 0; k <= order; ++k) {
    json byx = json::object();
    for (const auto& [mono, c] : m.at_one[k].terms()) byx[std::to_string(mono[2])] = str(c);
    coeffs.push_back({{"n", k}, {"total", str(m.at_one[k].evaluate(0, 0, 1))}, {"by_vertices", byx}});
  }
  rep.results["coefficients"] = coeffs;

  const ClosedFormReport cf = check_closed_form_M(order);
  rep.checks.push_back(check("closed form matches catalytic series", cf.series_match,
                             cf.first_mismatch));
  rep.checks.push_back(check("quartic vanishes on u-series", cf.quartic_vanishes));
  rep.checks.push_back(check("closed form at branch point = 4/3", cf.value_at_branch == Rational(4, 3),
                             str(cf.numerator_at_branch) + " / " + str(cf.denominator_at_branch)));
  rep.results["u_branch_a1"] = cf.branch;

  const BranchPointReport bp = verify_branch_point();
  rep.checks.push_back(check("P(6/5, 1/12, 1) = 0", sgn(bp.p) == 0, str(bp.p)));
  rep.checks.push_back(check("P_u(6/5, 1/12, 1) = 0", sgn(bp.p_u) == 0, str(bp.p_u)));
  rep.checks.push_back(check("u1^2 = 36/625", bp.u1_squared == Rational(36, 625), str(bp.u1_squared)));
  rep.checks.push_back(check("u1 = -6/25", bp.u1 == Rational(-6, 25), str(bp.u1)));
  rep.results["branch_point"] = {{"P_z", str(bp.p_z)}, {"P_uu", str(bp.p_uu)},
                                 {"u1_squared", str(bp.u1_squared)}, {"u1", str(bp.u1)}};

  const RhoPolynomial rp = derive_rho_poly();
  const CltConstants& c = series_constants();
  rep.checks.push_back(check("D(1/12, 1) = 0", sgn(rp.value_at_point) == 0, str(rp.value_at_point)));
  rep.checks.push_back(check("rho'(1) = -1/24", rp.rho_prime == Rational(-1, 24), str(rp.rho_prime)));
  rep.checks.push_back(check("rho''(1) = -1/384", rp.rho_second == Rational(-1, 384), str(rp.rho_second)));
  rep.checks.push_back(check("mu = 1/2", c.mu == Rational(1, 2), str(c.mu)));
  rep.checks.push_back(check("sigma^2 = 25/32", c.sigma2 == Rational(25, 32), str(c.sigma2)));
  bool means = true;
  for (std::size_t k = 0; k < c.mean_vertices.size(); ++k)
    if (c.mean_vertices[k] != mean_vertices_exact(k)) means = false;
  rep.checks.push_back(check("E[v(m_n)] = n/2 + 1 for n <= 12", means));

  const RationalPoly quoted = quoted_rho_polynomial();
  const Rational quoted_value = quoted.evaluate(0, Rational(1, 12), 1);
  rep.checks.push_back(check("quoted rho-polynomial does not vanish at (1/12, 1)",
                             sgn(quoted_value) != 0, str(quoted_value), false));
  json means_json = json::array(), vars_json = json::array();
  for (const auto& x : c.mean_vertices) means_json.push_back(str(x));
  for (const auto& x : c.variance_vertices) vars_json.push_back(str(x));
  rep.results["rho"] = {{"D", rp.d.to_string()},
                        {"discarded_factor", rp.discarded.to_string()},
                        {"rho", str(rp.rho)},
                        {"rho_prime", str(rp.rho_prime)},
                        {"rho_second", str(rp.rho_second)}};
  rep.results["clt"] = {{"mu", str(c.mu)},
                        {"sigma2", str(c.sigma2)},
                        {"mean_vertices", means_json},
                        {"variance_vertices", vars_json}};
  rep.results["discrepancy"] = {
      {"quoted_polynomial", quoted.to_string()},
      {"value_at_point", str(quoted_value)},
      {"x_equals_1_section", quoted.substitute(Var::X, 1).to_string()},
      {"note", "the quoted polynomial is 96 z^2 (4z+1)^2 at x = 1 and is not used"}};

  const PuiseuxReport pr = puiseux_at_one(5);
  json pu = json::array(), pb = json::array();
  for (const auto& x : pr.u) pu.push_back(str(x));
  for (const auto& x : pr.b) pb.push_back(str(x));
  rep.results["puiseux"] = {{"u", pu}, {"b", pb}};
  rep.checks.push_back(check("u2 = 6/125, u3 = -6/625",
                             pr.u[2] == Rational(6, 125) && pr.u[3] == Rational(-6, 625), {}, false));
  rep.checks.push_back(check("b0 = 4/3, b2 = -4/3, b3 = 8/3",
                             pr.b[0] == Rational(4, 3) && pr.b[2] == Rational(-4, 3) &&
                                 pr.b[3] == Rational(8, 3),
                             {}, false));
  rep.wall_seconds = sw.seconds();
  return rep;
}

ExperimentReport run_uniformity(const ExperimentConfig& cfg, SamplerFault fault) {
  Stopwatch sw;
  ExperimentReport rep;
  rep.config = cfg;
  std::vector<CanonicalCode> classes;
  if (cfg.model == Model::Map) {
    classes = enumerate_rooted_maps(cfg.n).codes;
  } else {
    if (2 * cfg.n > kMaxEnumerationEdges)
      throw std::invalid_argument("quadrangulation table limited to n <= 2 faces");
    classes = quadrangulation_codes(cfg.n);
  }
  std::sort(classes.begin(), classes.end());
  constexpr std::int64_t kInvalid = -1, kUnknown = -2;
  std::vector<std::int64_t> cls(cfg.replicates);
  const std::uint64_t seed = derive_seed(cfg.seed, 5 + cfg.n);
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t i) {
    try {
      const RootedMap m = sample(cfg.model, cfg.n, seed, i, fault);
      const CanonicalCode code = canonical_code(m);
      const auto it = std::lower_bound(classes.begin(), classes.end(), code);
      cls[i] = it != classes.end() && *it == code ? it - classes.begin() : kUnknown;
    } catch (const SamplerError&) {
      cls[i] = kInvalid;
    }
  });
  std::vector<std::uint64_t> counts(classes.size(), 0);
  std::size_t invalid = 0, unknown = 0;
  for (std::int64_t c : cls) {
    if (c == kInvalid) ++invalid;
    else if (c == kUnknown) ++unknown;
    else ++counts[static_cast<std::size_t>(c)];
  }
  rep.checks.push_back(check("all samples pass validation", invalid == 0,
                             std::to_string(invalid) + " invalid"));
  rep.checks.push_back(check("all samples are enumerated classes", unknown == 0,
                             std::to_string(unknown) + " unknown"));
  ChiSquare chi;
  if (classes.size() > 1 && invalid + unknown < cfg.replicates) {
    chi = chi_square_uniform(counts);
    rep.checks.push_back(check("chi-square p >= " + fmt(cfg.significance),
                               chi.p_value >= cfg.significance,
                               "stat " + fmt(chi.statistic) + ", dof " + std::to_string(chi.dof) +
                                   ", p " + fmt(chi.p_value)));
  } else {
    rep.checks.push_back(check("chi-square computable", false));
  }
  rep.results = {{"classes", classes.size()},
                 {"invalid", invalid},
                 {"unknown", unknown},
                 {"chi_square", chi.statistic},
                 {"dof", chi.dof},
                 {"p_value", chi.p_value},
                 {"counts", counts}};
  rep.wall_seconds = sw.seconds();
  return rep;
}

bool CriterionResult::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed || !c.gate; });
}

namespace {

void absorb(CriterionResult& out, const ExperimentReport& rep, const std::string& prefix) {
  for (Check c : rep.checks) {
    c.name = prefix + c.name;
    out.checks.push_back(std::move(c));
  }
  out.numbers[prefix.empty() ? rep.config.subcommand : prefix] = rep.results;
}

ExperimentConfig base_config(const VerifyOptions& opts, std::string sub) {
  ExperimentConfig c;
  c.subcommand = std::move(sub);
  c.seed = opts.seed;
  c.workers = opts.workers;
  c.long_tests = opts.long_tests;
  return c;
}

CriterionResult criterion_enumeration(const VerifyOptions& opts) {
  CriterionResult r{1, "exact enumeration and series agreement", {}, json::object(), 0};
  ExperimentConfig c = base_config(opts, "enumerate");
  absorb(r, run_enumerate(c), "");
  return r;
}

CriterionResult criterion_constants(const VerifyOptions& opts) {
  CriterionResult r{2, "exact constants", {}, json::object(), 0};
  ExperimentConfig c = base_config(opts, "series-verify");
  absorb(r, run_series_verify(c), "");
  return r;
}

CriterionResult criterion_reroot(const VerifyOptions&) {
  CriterionResult r{3, "re-rooting invariance", {}, json::object(), 0};
  for (std::size_t n = 1; n <= 4; ++n) {
    const RerootReport rr = verify_reroot_invariance(enumerate_rooted_maps(n));
    r.checks.push_back(check("every code appears 2n times, n=" + std::to_string(n), rr.passed,
                             std::to_string(rr.rerootings) + " rerootings"));
  }
  return r;
}

CriterionResult criterion_symmetry(const VerifyOptions& opts) {
  CriterionResult r{4, "symmetry identities", {}, json::object(), 0};
  auto alpha_kappa_ok = [](const RootedMap& m) {
    const RootSymmetry s = root_symmetries(m);
    return s.alpha_orbits * s.kappa == m.root_degree();
  };
  auto y_kappa_x_ok = [](const RootedMap& m, int radius) {
    for (const auto& [key, xy] : census_all(m, radius))
      if (xy.y != root_symmetries(decode(key.code)).kappa * xy.x) return false;
    return true;
  };
  std::size_t bad = 0, total = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& m : enumerate_rooted_maps(n).maps) {
      ++total;
      if (!alpha_kappa_ok(m)) ++bad;
    }
  r.checks.push_back(check("alpha kappa = d on all maps n <= 4", bad == 0,
                           std::to_string(bad) + " of " + std::to_string(total)));

  const std::size_t sampled = opts.full_scale ? 1000 : 50;
  const std::size_t sampled_n = opts.full_scale ? 1000 : 200;
  std::vector<char> ok(sampled, 0);
  const std::uint64_t seed = derive_seed(opts.seed, 4);
  parallel_for(sampled, opts.workers, [&](std::size_t i) {
    ok[i] = alpha_kappa_ok(sample_uniform_map(sampled_n, seed, i));
  });
  bad = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 0));
  r.checks.push_back(check("alpha kappa = d on " + std::to_string(sampled) + " maps at n=" +
                               std::to_string(sampled_n),
                           bad == 0, std::to_string(bad) + " failures"));

  bad = total = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& m : enumerate_rooted_maps(n).maps)
      for (int radius : {1, 2}) {
        ++total;
        if (!y_kappa_x_ok(m, radius)) ++bad;
      }
  r.checks.push_back(check("Y = kappa X, r in {1,2}, all maps n <= 3", bad == 0,
                           std::to_string(bad) + " of " + std::to_string(total)));

  const std::size_t hosts = opts.full_scale ? 100 : 10;
  for (std::size_t n : {std::size_t{100}, std::size_t{1000}}) {
    std::vector<char> fine(hosts, 0);
    const std::uint64_t s = derive_seed(opts.seed, 40 + n);
    parallel_for(hosts, opts.workers, [&](std::size_t i) {
      const RootedMap m = sample_uniform_map(n, s, i);
      fine[i] = y_kappa_x_ok(m, 1) && y_kappa_x_ok(m, 2);
    });
    bad = static_cast<std::size_t>(std::count(fine.begin(), fine.end(), 0));
    r.checks.push_back(check("Y = kappa X, r in {1,2}, " + std::to_string(hosts) +
                                 " maps at n=" + std::to_string(n),
                             bad == 0, std::to_string(bad) + " failures"));
  }
  return r;
}

CriterionResult criterion_uniformity(const VerifyOptions& opts) {
  CriterionResult r{5, "sampler uniformity", {}, json::object(), 0};
  const std::size_t reps = opts.full_scale ? 200000 : 20000;
  ExperimentConfig c = base_config(opts, "uniformity");
  c.replicates = reps;
  for (std::size_t n : {std::size_t{3}, std::size_t{2}}) {
    c.n = n;
    c.model = Model::Map;
    absorb(r, run_uniformity(c), "maps n=" + std::to_string(n) + ": ");
  }
  c.n = 1;
  c.model = Model::Quadrangulation;
  absorb(r, run_uniformity(c), "quadrangulations 1 face: ");

  // Independent validation of sampled quadrangulations.
  const std::size_t qn = opts.full_scale ? 2000 : 200;
  const std::size_t qreps = opts.full_scale ? 500 : 50;
  std::vector<char> valid(qreps, 0);
  const std::uint64_t seed = derive_seed(opts.seed, 55);
  parallel_for(qreps, opts.workers, [&](std::size_t i) {
    const RootedMap q = sample_quadrangulation(qn, seed, i);
    valid[i] = is_quadrangulation(q) && q.num_vertices() == qn + 2;
  });
  const auto fails = std::count(valid.begin(), valid.end(), 0);
  r.checks.push_back(check("sampled quadrangulations at n=" + std::to_string(qn) +
                               " are bipartite, degree 4, V = n+2",
                           fails == 0, std::to_string(fails) + " failures"));

  // Negative control: an off-by-one CVS successor must be caught.
  c.n = 3;
  c.model = Model::Map;
  c.replicates = opts.full_scale ? 20000 : 2000;
  const ExperimentReport faulty = run_uniformity(c, SamplerFault::SuccessorOffByOne);
  r.checks.push_back(check("negative control: faulted sampler fails the gate", !faulty.passed(),
                           "invalid " + faulty.results["invalid"].dump()));
  return r;
}

CriterionResult criterion_clt(const VerifyOptions& opts) {
  CriterionResult r{6, "central limit shadow", {}, json::object(), 0};
  ExperimentConfig c = base_config(opts, "clt");
  c.n = opts.full_scale ? 10000 : 1000;
  c.replicates = opts.full_scale ? 10000 : 500;
  absorb(r, run_clt(c), "");
  return r;
}

CriterionResult criterion_patterns(const VerifyOptions& opts) {
  CriterionResult r{7, "pattern counts", {}, json::object(), 0};
  std::vector<PlanePattern> suite;
  for (const auto& m : pattern_suite()) suite.push_back(make_pattern(m));
  std::size_t census_bad = 0, div_bad = 0, hosts = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& m : enumerate_rooted_maps(n).maps) {
      ++hosts;
      for (std::size_t d = 1; d <= 3; ++d)
        if (pattern_count(m, suite[d - 1]) != simple_cycle_faces(m, d)) ++census_bad;
      for (const auto& p : suite)
        if (anchored_count(m, p) % p.beta) ++div_bad;
    }
  r.checks.push_back(check("s(d-cycle) = simple-cycle face census, d <= 3, n <= 4",
                           census_bad == 0,
                           std::to_string(census_bad) + " mismatches over " +
                               std::to_string(hosts) + " hosts"));
  r.checks.push_back(check("Z divisible by beta on the pattern suite", div_bad == 0,
                           std::to_string(div_bad) + " failures"));
  ExperimentConfig c = base_config(opts, "gamma");
  c.replicates = opts.full_scale ? 4000 : 200;
  const std::vector<std::size_t> ns =
      opts.full_scale ? std::vector<std::size_t>{500, 2000} : std::vector<std::size_t>{100, 400};
  absorb(r, run_gamma(c, cycle_map(1), ns), "1-cycle: ");
  return r;
}

CriterionResult criterion_reweighting(const VerifyOptions& opts) {
  CriterionResult r{8, "reweighting law and degree identity", {}, json::object(), 0};
  ExperimentConfig c = base_config(opts, "neighborhood");
  c.n = opts.full_scale ? 2000 : 300;
  c.radius = 1;
  c.replicates = opts.full_scale ? 100000 : 2000;
  absorb(r, run_reweighting(c), "reweighting: ");
  c.subcommand = "liskovets";
  c.replicates = opts.full_scale ? 20000 : 1000;
  absorb(r, run_liskovets(c), "liskovets: ");
  return r;
}

// The stochastic experiments at reduced scale.
std::vector<ExperimentReport> reduced_runs(const VerifyOptions& opts) {
  std::vector<ExperimentReport> out;
  ExperimentConfig c = base_config(opts, "uniformity");
  c.n = 3;
  c.replicates = 3000;
  out.push_back(run_uniformity(c));
  c = base_config(opts, "clt");
  c.n = 500;
  c.replicates = 200;
  out.push_back(run_clt(c));
  c = base_config(opts, "gamma");
  c.replicates = 100;
  out.push_back(run_gamma(c, cycle_map(1), {100, 200}));
  c = base_config(opts, "neighborhood");
  c.n = 200;
  c.replicates = 300;
  out.push_back(run_reweighting(c));
  c.subcommand = "liskovets";
  out.push_back(run_liskovets(c));
  return out;
}

// Verdicts of the reduced runs whose gates keep their power at reduced
// scale; the 15% ratio gate needs the full replicate count.
std::vector<bool> verdicts(const std::vector<ExperimentReport>& reps) {
  std::vector<bool> v;
  for (const auto& r : reps)
    if (r.config.subcommand != "neighborhood")
      for (const auto& c : r.checks) v.push_back(c.passed);
  return v;
}

CriterionResult criterion_determinism(const VerifyOptions& opts) {
  CriterionResult r{9, "determinism", {}, json::object(), 0};
  VerifyOptions a = opts, b = opts;
  a.workers = 1;
  b.workers = std::max<std::size_t>(3, opts.workers);
  const std::string first = numerical_digest(a);
  const std::string again = numerical_digest(a);
  const std::string other = numerical_digest(b);
  r.checks.push_back(check("same seed, same workers: identical report", first == again));
  r.checks.push_back(check("same seed, " + std::to_string(b.workers) +
                               " workers: identical report",
                           first == other));
  VerifyOptions shifted = a;
  shifted.seed = opts.seed + 1;
  const bool same_verdicts = verdicts(reduced_runs(a)) == verdicts(reduced_runs(shifted));
  r.checks.push_back(check("changed seed: identical pass/fail verdicts", same_verdicts, {}, false));
  r.numbers["digest_bytes"] = first.size();
  return r;
}

}  // namespace

std::string numerical_digest(const VerifyOptions& opts) {
  std::string out;
  for (const auto& rep : reduced_runs(opts)) out += rep.numerical().dump() + "\n";
  return out;
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
  Stopwatch sw;
  CriterionResult r;
  switch (id) {
    case 1: r = criterion_enumeration(opts); break;
    case 2: r = criterion_constants(opts); break;
    case 3: r = criterion_reroot(opts); break;
    case 4: r = criterion_symmetry(opts); break;
    case 5: r = criterion_uniformity(opts); break;
    case 6: r = criterion_clt(opts); break;
    case 7: r = criterion_patterns(opts); break;
    case 8: r = criterion_reweighting(opts); break;
    case 9: r = criterion_determinism(opts); break;
    default: throw std::invalid_argument("criteria are numbered 1..9");
  }
  r.seconds = sw.seconds();
  return r;
}

std::vector<CriterionResult> run_verify_all(const VerifyOptions& opts,
                                            const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    out.push_back(run_criterion(id, opts));
  }
  return out;
}

}  // namespace planarmap
