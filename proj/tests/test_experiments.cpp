#include <doctest.h>

#include "planarmap/experiments.hpp"
#include "planarmap/standard_maps.hpp"

using namespace planarmap;

namespace {

ExperimentConfig config(std::string sub, std::size_t n, std::size_t reps) {
  ExperimentConfig c;
  c.subcommand = std::move(sub);
  c.n = n;
  c.replicates = reps;
  c.seed = 77;
  return c;
}

}  // namespace

TEST_CASE("reports echo the config and are reproducible across workers") {
  ExperimentConfig c = config("clt", 300, 80);
  const ExperimentReport a = run_clt(c);
  c.workers = 3;
  const ExperimentReport b = run_clt(c);
  CHECK(a.numerical() == b.numerical());
  CHECK(a.rows_csv == b.rows_csv);
  CHECK(a.to_json()["config"]["n"] == 300);
  CHECK(b.to_json()["config"]["workers"] == 3);
  CHECK(a.to_json().contains("timing"));
  CHECK_FALSE(a.numerical().contains("timing"));
}

TEST_CASE("different seeds give different samples") {
  ExperimentConfig c = config("sample", 100, 20);
  const ExperimentReport a = run_sample(c);
  c.seed = 78;
  CHECK(run_sample(c).rows_csv != a.rows_csv);
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("uniformity gate passes for the sampler and fails for the faulted one") {
  ExperimentConfig c = config("uniformity", 2, 9000);
  CHECK(run_uniformity(c).passed());
  c.n = 1;
  c.model = Model::Quadrangulation;
  CHECK(run_uniformity(c).passed());
  c.n = 3;
  c.model = Model::Map;
  c.replicates = 2000;
  const ExperimentReport bad = run_uniformity(c, SamplerFault::SuccessorOffByOne);
  CHECK_FALSE(bad.passed());
  CHECK(bad.results["invalid"].get<std::size_t>() > 0);
}

TEST_CASE("enumeration report") {
  ExperimentConfig c = config("enumerate", 3, 0);
  const ExperimentReport r = run_enumerate(c);
  CHECK(r.passed());
  CHECK(r.results["levels"].size() == 3);
  CHECK(r.results["levels"][2]["count"] == 54);
  c.n = 6;
  CHECK_THROWS(run_enumerate(c));
}

TEST_CASE("pattern report in a given host") {
  ExperimentConfig c = config("gamma", 0, 40);
  const ExperimentReport g = run_gamma(c, cycle_map(1), {50, 100});
  CHECK(g.results["estimates"].size() == 2);
  CHECK(g.checks.size() == 3);
  CHECK(g.checks[0].passed);
  CHECK(g.checks[1].passed);
}

TEST_CASE("verdicts ignore informational checks") {
  ExperimentReport r;
  r.checks.push_back({"gate", true, "", true});
  r.checks.push_back({"info", false, "", false});
  CHECK(r.passed());
  r.checks.push_back({"gate 2", false, "", true});
  CHECK_FALSE(r.passed());
}
