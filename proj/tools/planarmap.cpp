// Batch driver for the planarmap experiments. Exit status 0 iff every gate
// passes; 1 on a failed gate; 2 on bad input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "planarmap/experiments.hpp"
#include "planarmap/map_io.hpp"
#include "planarmap/standard_maps.hpp"

namespace pm = planarmap;

namespace {

struct Options {
  pm::ExperimentConfig cfg;
  std::string model = "map";
  std::string csv;
  std::vector<std::size_t> n_list;
  std::vector<int> only;
  bool quick = false;
  bool print_maps = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int emit(const pm::ExperimentReport& rep, const Options& o) {
  for (const auto& c : rep.checks)
    std::cerr << (c.passed ? "PASS " : (c.gate ? "FAIL " : "INFO ")) << c.name
              << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
  const std::string text = rep.to_json().dump(2) + "\n";
  if (o.cfg.out.empty())
    std::cout << text;
  else
    write_file(o.cfg.out, text);
  if (!o.csv.empty()) write_file(o.csv, rep.rows_csv);
  return rep.passed() ? 0 : 1;
}

int verify_all(const Options& o) {
  pm::VerifyOptions v;
  v.seed = o.cfg.seed;
  v.workers = o.cfg.workers;
  v.full_scale = !o.quick;
  v.long_tests = o.cfg.long_tests;
  nlohmann::json report = nlohmann::json::array();
  bool ok = true;
  for (int id = 1; id <= 9; ++id) {
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), id) == o.only.end()) continue;
    const pm::CriterionResult r = pm::run_criterion(id, v);
    ok = ok && r.passed();
    std::cerr << (r.passed() ? "PASS" : "FAIL") << " criterion " << id << ": " << r.title
              << " (" << r.seconds << " s)\n";
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      checks.push_back(pm::to_json(c));
      if (!c.passed)
        std::cerr << "    " << (c.gate ? "failed: " : "info: ") << c.name << "  [" << c.detail
                  << "]\n";
    }
    report.push_back({{"criterion", id},
                      {"title", r.title},
                      {"passed", r.passed()},
                      {"checks", checks},
                      {"numbers", r.numbers},
                      {"timing", {{"seconds", r.seconds}}}});
  }
  const std::string text = report.dump(2) + "\n";
  if (o.cfg.out.empty())
    std::cout << text;
  else
    write_file(o.cfg.out, text);
  return ok ? 0 : 1;
}

pm::RootedMap load_pattern(const Options& o) {
  if (o.cfg.pattern_file.empty()) throw CLI::ValidationError("--pattern", "a pattern file is required");
  return pm::read_map_file(o.cfg.pattern_file);
}

int dispatch(const std::string& sub, Options& o) {
  o.cfg.subcommand = sub;
  o.cfg.model = pm::parse_model(o.model);
  if (sub == "verify-all") return verify_all(o);
  if (sub == "enumerate") return emit(pm::run_enumerate(o.cfg), o);
  if (sub == "sample") {
    if (o.print_maps) {
      for (std::size_t i = 0; i < o.cfg.replicates; ++i)
        std::cout << (i ? "\n\n" : "") << pm::write_map(pm::sample(o.cfg.model, o.cfg.n, o.cfg.seed, i));
      std::cout << '\n';
      return 0;
    }
    return emit(pm::run_sample(o.cfg), o);
  }
  if (sub == "pattern") {
    const pm::RootedMap p = load_pattern(o);
    if (!o.n_list.empty() && o.cfg.host_file.empty()) return emit(pm::run_gamma(o.cfg, p, o.n_list), o);
    return emit(pm::run_pattern(o.cfg, p), o);
  }
  if (sub == "neighborhood") return emit(pm::run_reweighting(o.cfg), o);
  if (sub == "liskovets") return emit(pm::run_liskovets(o.cfg), o);
  if (sub == "clt") return emit(pm::run_clt(o.cfg), o);
  if (sub == "series-verify") return emit(pm::run_series_verify(o.cfg), o);
  if (sub == "uniformity") return emit(pm::run_uniformity(o.cfg), o);
  throw CLI::ValidationError("subcommand", "unknown: " + sub);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random planar maps: enumeration, sampling, pattern and neighbourhood statistics"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--n", o.cfg.n, "size (edges; faces for quadrangulations)");
    s->add_option("--replicates", o.cfg.replicates, "Monte Carlo replicates");
    s->add_option("--seed", o.cfg.seed, "master seed");
    s->add_option("--workers", o.cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--model", o.model, "map or quadrangulation")
        ->check(CLI::IsMember({"map", "quadrangulation"}));
    s->add_option("--out", o.cfg.out, "JSON report path (default stdout)");
    s->add_option("--csv", o.csv, "per-replicate CSV path");
    s->add_option("--significance", o.cfg.significance, "chi-square significance level");
  };

  std::vector<std::pair<CLI::App*, std::string>> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    subs.emplace_back(s, name);
    return s;
  };

  add("enumerate", "exhaustive rooted-map table and series cross-check (--n <= 5)")
      ->add_flag("--long-tests,!--no-long-tests", o.cfg.long_tests, "include n = 5 when --n is not given");
  add("sample", "sample maps; per-replicate statistics or --print-maps")
      ->add_flag("--print-maps", o.print_maps, "write the maps in text form to stdout");
  {
    CLI::App* s = add("pattern", "pattern counts in a host, or gamma estimates");
    s->add_option("--pattern", o.cfg.pattern_file, "pattern map file")->check(CLI::ExistingFile);
    s->add_option("--host", o.cfg.host_file, "host map file")->check(CLI::ExistingFile);
    s->add_option("--n-list", o.n_list, "sizes for the gamma consistency check");
  }
  add("neighborhood", "root law against uniform-vertex law of balls")
      ->add_option("--radius", o.cfg.radius, "ball radius")->check(CLI::NonNegativeNumber);
  add("liskovets", "degree distribution identity");
  add("clt", "vertex count fluctuations");
  add("series-verify", "exact series, closed form and constants");
  add("uniformity", "chi-square of the sampler against the exhaustive table");
  {
    CLI::App* s = add("verify-all", "run the acceptance criteria");
    s->add_flag("--long-tests,!--no-long-tests", o.cfg.long_tests, "include n = 5 enumeration");
    s->add_flag("--quick", o.quick, "reduced replicate counts");
    s->add_option("--only", o.only, "criterion ids to run")->check(CLI::Range(1, 9));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;  // --help exits 0
  }
  try {
    for (const auto& [s, name] : subs)
      if (s->parsed()) return dispatch(name, o);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
