#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "planarmap/canonical.hpp"
#include "planarmap/enumerate.hpp"
#include "planarmap/map_io.hpp"
#include "planarmap/random.hpp"
#include "planarmap/sample.hpp"
#include "planarmap/standard_maps.hpp"
#include "planarmap/weights.hpp"

using namespace planarmap;

namespace {

// Random relabelling that respects the d^1 pairing.
std::vector<Dart> random_pairing_perm(std::size_t ndarts, CounterRng& rng) {
  std::vector<Dart> edges(ndarts / 2);
  std::iota(edges.begin(), edges.end(), Dart{0});
  for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.below(i)]);
  std::vector<Dart> perm(ndarts);
  for (Dart e = 0; e < edges.size(); ++e) {
    const Dart flip = static_cast<Dart>(rng.below(2));
    perm[2 * e] = (edges[e] << 1) | flip;
    perm[2 * e + 1] = (edges[e] << 1) | (flip ^ 1u);
  }
  return perm;
}

}  // namespace

TEST_CASE("standard maps have the expected shapes") {
  const RootedMap loop = loop_map();
  CHECK(loop.num_vertices() == 1);
  CHECK(loop.num_faces() == 2);
  CHECK(loop.root_degree() == 2);

  const RootedMap edge = single_edge_map();
  CHECK(edge.num_vertices() == 2);
  CHECK(edge.num_faces() == 1);

  for (std::size_t k = 2; k <= 6; ++k) {
    const RootedMap c = cycle_map(k);
    CHECK(c.num_vertices() == k);
    CHECK(c.num_faces() == 2);
    CHECK(oracle::simple_cycle_faces(c, k) == 1);
  }
  const RootedMap tt = two_triangles_map();
  CHECK(tt.num_vertices() == 4);
  CHECK(tt.num_edges() == 5);
  CHECK(tt.num_faces() == 3);
  CHECK(oracle::simple_cycle_faces(tt, 3) == 2);
}

TEST_CASE("face and vertex structure agree with a direct orbit computation") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const RootedMap& m : enumerate_rooted_maps(n).maps) {
      const auto sigma = oracle::sigma_of(m);
      const auto vs = oracle::orbits(sigma);
      const auto fs = oracle::orbits(oracle::phi_table(sigma));
      REQUIRE(vs.size() == m.num_vertices());
      REQUIRE(fs.size() == m.num_faces());
      CHECK(vs.size() + fs.size() == n + 2);
      std::vector<std::size_t> ds;
      for (const auto& f : fs) ds.push_back(f.size());
      std::sort(ds.begin(), ds.end());
      CHECK(ds == face_degree_census(m));
      for (const auto& f : fs)
        if (std::find(f.begin(), f.end(), Dart{1}) != f.end())
          CHECK(m.face_degree(m.outer_face()) == f.size());
      CHECK(m.root_degree() == vs[0].size());  // orbit of dart 0 comes first
      const auto dist = distances(m, m.root_vertex());
      const auto ref = oracle::bfs(sigma, oracle::vertex_ids(sigma)[0]);
      CHECK(*std::max_element(dist.begin(), dist.end()) ==
            *std::max_element(ref.begin(), ref.end()));
    }
}

TEST_CASE("build rejects malformed rotation systems") {
  CHECK(RootedMap::build({}).empty());  // the degenerate ball
  CHECK_THROWS_AS(RootedMap::build({0, 0}), MapError);
  CHECK_THROWS_AS(RootedMap::build({0, 5}), MapError);
  try {
    // Two disjoint loops.
    RootedMap::build({1, 0, 3, 2});
    FAIL("expected MapError");
  } catch (const MapError& e) {
    CHECK(e.kind() == MapError::Kind::NotConnected);
  }
  try {
    // One vertex carrying two interleaved loops: a torus.
    RootedMap::build({2, 3, 1, 0});
    FAIL("expected MapError");
  } catch (const MapError& e) {
    CHECK(e.kind() == MapError::Kind::NotPlanar);
  }
}

TEST_CASE("rerooting at every dart and back is the identity") {
  for (const RootedMap& m : enumerate_rooted_maps(3).maps) {
    const CanonicalCode code = canonical_code(m);
    for (Dart d = 0; d < m.num_darts(); ++d) {
      const RootedMap r = reroot(m, d);
      CHECK(canonical_code(r) == canonical_code(m, d));
      CHECK(r.num_vertices() == m.num_vertices());
      CHECK(r.num_faces() == m.num_faces());
    }
    CHECK(canonical_code(reroot(m, 0)) == code);
  }
}

TEST_CASE("canonical codes are labelling invariant and decode back") {
  CounterRng rng(7, 0);
  for (std::size_t i = 0; i < 50; ++i) {
    const RootedMap m = sample_uniform_map(30, 11, i);
    const auto perm = random_pairing_perm(m.num_darts(), rng);
    const RootedMap r = relabel(m, perm);
    CHECK(canonical_code(r) == canonical_code(m));
    CHECK(canonical_code(decode(canonical_code(m))) == canonical_code(m));
  }
}

TEST_CASE("distinct rooted maps have distinct codes") {
  const EnumerationTable t = enumerate_rooted_maps(4);
  std::set<CanonicalCode> codes(t.codes.begin(), t.codes.end());
  CHECK(codes.size() == t.maps.size());
}

TEST_CASE("alpha times kappa equals the root degree") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const RootedMap& m : enumerate_rooted_maps(n).maps) {
      // Oracle: codes of all reroots at root-vertex darts.
      std::vector<CanonicalCode> at_root;
      Dart d = 0;
      do {
        at_root.push_back(canonical_code(reroot(m, d)));
        d = m.sigma(d);
      } while (d != 0);
      const auto code = canonical_code(m);
      const std::size_t kappa = static_cast<std::size_t>(std::count(at_root.begin(), at_root.end(), code));
      const std::size_t alpha = std::set<CanonicalCode>(at_root.begin(), at_root.end()).size();
      const RootSymmetry s = root_symmetries(m);
      CHECK(s.kappa == kappa);
      CHECK(s.alpha_orbits == alpha);
      CHECK(s.kappa * s.alpha_orbits == m.root_degree());
    }
}

TEST_CASE("vertex-rooted codes do not depend on the corner") {
  const RootedMap m = sample_uniform_map(40, 3, 0);
  for (std::uint32_t v = 0; v < m.num_vertices(); ++v) {
    const CanonicalCode c = vertex_code(m, v);
    Dart d = m.dart_of_vertex(v);
    const Dart start = d;
    do {
      CHECK(VertexRootedMap(reroot(m, d)).code() == c);
      d = m.sigma(d);
    } while (d != start);
  }
}

TEST_CASE("early-exit minimum code equals the brute-force minimum") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const RootedMap m = sample_uniform_map(60, 13, i);
    for (std::uint32_t v = 0; v < m.num_vertices(); ++v) {
      CanonicalCode best;
      Dart d = m.dart_of_vertex(v);
      do {
        const CanonicalCode c = canonical_code(m, d);
        if (best.empty() || c < best) best = c;
        d = m.sigma(d);
      } while (d != m.dart_of_vertex(v));
      CHECK(min_vertex_code(m.sigma_table(), m.dart_of_vertex(v)) == best);
    }
  }
  // Symmetric vertex: all four corners of the central vertex of a 4-star tie.
  const RootedMap star = star_map(4);
  CHECK(min_vertex_code(star.sigma_table(), 0) == canonical_code(star));
}

TEST_CASE("text format round-trips and reports parse positions") {
  const RootedMap m = sample_uniform_map(25, 5, 2);
  const std::string text = write_map(m);
  CHECK(text.back() != '\n');
  CHECK(canonical_code(read_map(text)) == canonical_code(m));
  CHECK(canonical_code(read_map(text + "\n")) == canonical_code(m));
  CHECK(write_map(read_map(text)) == text);

  const std::vector<RootedMap> many{loop_map(), cycle_map(3), two_triangles_map()};
  const auto back = read_maps(write_maps(many));
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(canonical_code(back[i]) == canonical_code(many[i]));

  CHECK_THROWS_AS(read_map("planarmap v2 ndarts=2\nsigma: 1 0\nroot: 0"), ParseError);
  CHECK_THROWS_AS(read_map("planarmap v1 ndarts=2\nsigma: 1\nroot: 0"), ParseError);
  CHECK_THROWS_AS(read_map("planarmap v1 ndarts=2\nsigma: 1 0\nroot: 1"), ParseError);
  try {
    read_map("planarmap v1 ndarts=2\nsigma: 1 x\nroot: 0");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
  }
  // Well-formed text but not a planar rotation system.
  CHECK_THROWS(read_map("planarmap v1 ndarts=4\nsigma: 2 3 1 0\nroot: 0"));
}

TEST_CASE("Boltzmann weights") {
  const std::map<std::size_t, Rational> unit{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}};
  for (const RootedMap& m : enumerate_rooted_maps(3).maps) CHECK(boltzmann_weight(m, unit) == 1);
  const std::map<std::size_t, Rational> q{{3, make_rational(1, 2)}, {5, 3}};
  CHECK(boltzmann_weight(two_triangles_map(), std::map<std::size_t, Rational>{{3, 2}, {4, 5}}) == 20);
  CHECK_THROWS_AS(boltzmann_weight(loop_map(), q), MissingWeight);
}
