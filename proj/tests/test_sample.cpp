#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "planarmap/canonical.hpp"
#include "planarmap/enumerate.hpp"
#include "planarmap/random.hpp"
#include "planarmap/sample.hpp"
#include "planarmap/standard_maps.hpp"
#include "planarmap/stats.hpp"

using namespace planarmap;

TEST_CASE("counter RNG is deterministic per (seed, stream)") {
  CounterRng a(1, 2), b(1, 2);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CounterRng d(1, 2), e(1, 3);
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += d() == e();
  CHECK(equal == 0);
  CounterRng f(9, 9);
  for (int i = 0; i < 1000; ++i) {
    CHECK(f.below(7) < 7);
    const double u = f.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("plane trees are uniform over the Catalan family") {
  std::map<std::vector<bool>, std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    CounterRng rng(3, i);
    const PlaneTree t = sample_plane_tree(3, rng);
    CHECK(t.num_edges() == 3);
    ++seen[t.dyck_word()];
  }
  REQUIRE(seen.size() == 5);
  std::vector<std::uint64_t> counts;
  for (const auto& [w, c] : seen) counts.push_back(c);
  CHECK(chi_square_uniform(counts).p_value > 1e-3);
}

TEST_CASE("labels change by at most one along edges") {
  CounterRng rng(5, 0);
  const PlaneTree t = sample_plane_tree(200, rng);
  const WellLabeledTree w = sample_labels(t, rng);
  CHECK(w.label[0] == 0);
  CHECK((w.eps == 1 || w.eps == -1));
  for (std::uint32_t v = 1; v < t.num_vertices(); ++v) CHECK(std::abs(w.label[v] - w.label[t.parent(v)]) <= 1);
}

TEST_CASE("CVS output is a pointed quadrangulation with labels as distances") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    CounterRng rng(17, i);
    const PlaneTree t = sample_plane_tree(60, rng);
    const PointedQuadrangulation pq = cvs(sample_labels(t, rng));
    const RootedMap& q = pq.map;
    CHECK(q.num_faces() == 60);
    CHECK(q.num_vertices() == 62);
    CHECK(is_quadrangulation(q));
    // Oracle distances from v*.
    const auto sigma = oracle::sigma_of(q);
    const auto vid = oracle::vertex_ids(sigma);
    const auto dist = oracle::bfs(sigma, vid[q.dart_of_vertex(pq.marked_vertex)]);
    const int base = pq.vertex_label[pq.marked_vertex];
    for (std::uint32_t v = 0; v < q.num_vertices(); ++v)
      CHECK(dist[vid[q.dart_of_vertex(v)]] == pq.vertex_label[v] - base);
    CHECK_NOTHROW(validate_pointed_quadrangulation(pq));
  }
}

TEST_CASE("angular inverse gives maps with n edges") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const RootedMap q = sample_quadrangulation(50, 2, i);
    const RootedMap m = angular_inverse(q);
    CHECK(m.num_edges() == 50);
    // Vertices of m are one colour class of q, faces the other.
    CHECK(m.num_vertices() + m.num_faces() == q.num_vertices());
  }
  CHECK_THROWS(angular_inverse(cycle_map(3)));
}

TEST_CASE("samplers are deterministic in (seed, stream)") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    CHECK(canonical_code(sample_uniform_map(100, 4, i)) == canonical_code(sample_uniform_map(100, 4, i)));
    CHECK(canonical_code(sample_quadrangulation(100, 4, i)) ==
          canonical_code(sample_quadrangulation(100, 4, i)));
  }
  CHECK(canonical_code(sample_uniform_map(100, 4, 0)) != canonical_code(sample_uniform_map(100, 4, 1)));
  CHECK(parse_model("map") == Model::Map);
  CHECK(parse_model("quadrangulation") == Model::Quadrangulation);
  CHECK_THROWS(parse_model("triangulation"));
}

TEST_CASE("small-n sampler output is uniform on the rooted maps") {
  const EnumerationTable t = enumerate_rooted_maps(2);
  std::map<CanonicalCode, std::uint64_t> counts;
  for (const auto& c : t.codes) counts[c] = 0;
  for (std::uint64_t i = 0; i < 18000; ++i) {
    const auto it = counts.find(canonical_code(sample_uniform_map(2, 8, i)));
    REQUIRE(it != counts.end());
    ++it->second;
  }
  std::vector<std::uint64_t> v;
  for (const auto& [c, k] : counts) v.push_back(k);
  CHECK(chi_square_uniform(v).p_value > 1e-3);
}

TEST_CASE("off-by-one successor fault is detected") {
  std::size_t rejected = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    try {
      sample_uniform_map(10, 1, i, SamplerFault::SuccessorOffByOne);
    } catch (const SamplerError&) {
      ++rejected;
    }
  }
  CHECK(rejected == 200);
}
