#include <doctest.h>

#include "oracles.hpp"
#include "planarmap/canonical.hpp"
#include "planarmap/enumerate.hpp"
#include "planarmap/neighborhood.hpp"
#include "planarmap/parallel.hpp"
#include "planarmap/sample.hpp"
#include "planarmap/standard_maps.hpp"

using namespace planarmap;

TEST_CASE("balls of large radius are the whole map") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const RootedMap m = sample_uniform_map(40, 21, i);
    const int r = radius(m);
    CHECK(canonical_code(neighborhood_corner(m, r)) == canonical_code(m));
    CHECK(neighborhood_vertex(m, m.root_vertex(), r).code == vertex_code(m, m.root_vertex()));
  }
}

TEST_CASE("a ball contains exactly the vertices within distance r") {
  const RootedMap m = sample_uniform_map(200, 22, 0);
  const auto sigma = oracle::sigma_of(m);
  const auto dist = oracle::bfs(sigma, oracle::vertex_ids(sigma)[0]);
  for (int r = 0; r <= 3; ++r) {
    const RootedMap ball = neighborhood_corner(m, r);
    std::size_t inside = 0, darts = 0;
    for (int d : dist) inside += d >= 0 && d <= r;
    const auto vid = oracle::vertex_ids(sigma);
    for (Dart d = 0; d < sigma.size(); ++d)
      darts += dist[vid[d]] <= r && dist[vid[d ^ 1u]] <= r;
    if (ball.empty()) {
      CHECK(r == 0);
      continue;
    }
    CHECK(ball.num_vertices() == inside);
    CHECK(ball.num_darts() == darts);
  }
}

TEST_CASE("r = 0 balls are degenerate without loops") {
  CHECK(neighborhood_corner(single_edge_map(), 0).empty());
  CHECK(neighborhood_vertex(single_edge_map(), 0, 0).degenerate());
  CHECK_FALSE(neighborhood_corner(loop_map(), 0).empty());
}

TEST_CASE("Y = kappa X with kappa from the decoded key") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const RootedMap& m : enumerate_rooted_maps(n).maps)
      for (int r : {1, 2}) {
        std::size_t corners = 0, vertices = 0;
        for (const auto& [key, xy] : census_all(m, r)) {
          CHECK(xy.y == root_symmetries(decode(key.code)).kappa * xy.x);
          const CensusXY single = census_XY(m, key, r);
          CHECK(single.x == xy.x);
          CHECK(single.y == xy.y);
          corners += key.root_degree * xy.x;
          vertices += xy.x;
        }
        CHECK(corners == m.num_darts());
        CHECK(vertices == m.num_vertices());
      }
}

TEST_CASE("summed over the table, Y counts root balls") {
  // Exhaustively, the number of (map, corner) pairs with ball K equals
  // 2n times the number of maps whose root ball is K.
  const std::size_t n = 3;
  const EnumerationTable t = enumerate_rooted_maps(n);
  std::map<CanonicalCode, std::size_t> root_balls, corner_balls;
  for (const RootedMap& m : t.maps) {
    ++root_balls[canonical_code(neighborhood_corner(m, 1))];
    for (Dart c = 0; c < m.num_darts(); ++c) ++corner_balls[canonical_code(neighborhood_corner(m, 1, c))];
  }
  REQUIRE(root_balls.size() == corner_balls.size());
  for (const auto& [code, count] : root_balls) CHECK(corner_balls[code] == 2 * n * count);
}

TEST_CASE("degree identity holds exactly over the table") {
  // sum over maps of k * #{vertices of degree k} = 2n * #{maps with root degree k}
  for (std::size_t n = 1; n <= 4; ++n) {
    std::map<std::size_t, std::size_t> weighted, rooted;
    for (const RootedMap& m : enumerate_rooted_maps(n).maps) {
      ++rooted[m.root_degree()];
      for (std::uint32_t v = 0; v < m.num_vertices(); ++v) weighted[m.vertex_degree(v)] += m.vertex_degree(v);
    }
    for (const auto& [k, c] : rooted) CHECK(weighted[k] == 2 * n * c);
  }
}

TEST_CASE("chunked reduction is worker-count independent") {
  auto run = [](std::size_t workers) {
    return chunked_reduce<double>(
        1000, workers, 32, [](double& acc, std::size_t i) { acc += 1.0 / (1.0 + double(i)); },
        [](double& total, const double& acc) { total += acc; });
  };
  CHECK(run(1) == run(3));
  CHECK(run(1) == run(7));
}

TEST_CASE("law comparison and degree report are worker-count independent") {
  const DistributionReport a = compare_laws(150, 60, 1, 31, 1);
  const DistributionReport b = compare_laws(150, 60, 1, 31, 3);
  CHECK(a.total_variation == b.total_variation);
  CHECK(a.mu_v_hat == b.mu_v_hat);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].key == b.entries[i].key);
    CHECK(a.entries[i].vertex_freq == b.entries[i].vertex_freq);
  }
  CHECK(std::abs(a.root_mass - 1.0) < 1e-9);
  CHECK(std::abs(a.vertex_mass - 1.0) < 1e-9);
  for (std::size_t i = 1; i < a.entries.size(); ++i) CHECK(a.entries[i - 1].root_freq >= a.entries[i].root_freq);

  const DegreeReport d1 = degree_distributions(150, 60, 32, 1);
  const DegreeReport d3 = degree_distributions(150, 60, 32, 3);
  CHECK(d1.residual == d3.residual);
  CHECK(d1.residual_stderr == d3.residual_stderr);
}
