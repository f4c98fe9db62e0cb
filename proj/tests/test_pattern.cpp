#include <doctest.h>

#include "oracles.hpp"
#include "planarmap/enumerate.hpp"
#include "planarmap/pattern.hpp"
#include "planarmap/standard_maps.hpp"

using namespace planarmap;

namespace {

std::vector<RootedMap> suite() {
  return {cycle_map(1), cycle_map(2), cycle_map(3), two_triangles_map(), single_edge_map(), path_map(2)};
}

}  // namespace

TEST_CASE("beta of the standard patterns") {
  CHECK(make_pattern(cycle_map(1)).beta == 1);
  CHECK(make_pattern(cycle_map(2)).beta == 2);
  CHECK(make_pattern(cycle_map(3)).beta == 3);
  CHECK(make_pattern(two_triangles_map()).beta == 2);
  CHECK(make_pattern(single_edge_map()).beta == 2);
  CHECK(make_pattern(path_map(2)).beta == 2);
  const PlanePattern tt = make_pattern(two_triangles_map());
  CHECK(tt.bounded_faces.size() == 2);
  CHECK(tt.boundary_darts.size() == 4);
}

TEST_CASE("a loop host holds exactly one 1-cycle") {
  const PlanePattern p = make_pattern(cycle_map(1));
  CHECK(anchored_count(loop_map(), p) == 1);
  CHECK(pattern_count(loop_map(), p) == 1);
  CHECK(anchored_count(loop_map(), p, FaceScope::Sphere) == 2);
}

TEST_CASE("cycle counts equal the simple-cycle face census") {
  const PlanePattern c1 = make_pattern(cycle_map(1)), c2 = make_pattern(cycle_map(2)),
                     c3 = make_pattern(cycle_map(3));
  for (std::size_t n = 1; n <= 4; ++n)
    for (const RootedMap& m : enumerate_rooted_maps(n).maps) {
      CHECK(pattern_count(m, c1) == oracle::simple_cycle_faces(m, 1));
      CHECK(pattern_count(m, c2) == oracle::simple_cycle_faces(m, 2));
      CHECK(pattern_count(m, c3) == oracle::simple_cycle_faces(m, 3));
    }
}

TEST_CASE("Z is divisible by beta on the suite") {
  std::vector<PlanePattern> ps;
  for (const auto& m : suite()) ps.push_back(make_pattern(m));
  for (std::size_t n = 1; n <= 4; ++n)
    for (const RootedMap& m : enumerate_rooted_maps(n).maps)
      for (const auto& p : ps) {
        CHECK(anchored_count(m, p) % p.beta == 0);
        CHECK(anchored_count(m, p, FaceScope::Sphere) % p.beta == 0);
      }
}

TEST_CASE("single edges and paths count edges and length-2 paths") {
  const PlanePattern e = make_pattern(single_edge_map());
  const PlanePattern p2 = make_pattern(path_map(2));
  for (std::size_t n = 1; n <= 3; ++n)
    for (const RootedMap& m : enumerate_rooted_maps(n).maps) {
      // Non-loop edges.
      std::size_t links = 0;
      for (Dart d = 0; d < m.num_darts(); d += 2) links += m.vertex_of(d) != m.vertex_of(d + 1);
      CHECK(pattern_count(m, e, FaceScope::Sphere) == links);
      CHECK(anchored_count(m, p2, FaceScope::Sphere) % 2 == 0);
    }
}

TEST_CASE("at most one embedding per corner for cycles and two triangles") {
  std::vector<PlanePattern> ps{make_pattern(cycle_map(1)), make_pattern(cycle_map(2)),
                               make_pattern(cycle_map(3)), make_pattern(two_triangles_map())};
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const RootedMap& m : enumerate_rooted_maps(n).maps)
      for (const auto& p : ps)
        for (Dart c = 0; c < m.num_darts(); ++c) {
          const std::size_t k = count_embeddings_at(m, c, p);
          CHECK(k <= 1);
          CHECK((k == 1) == occurs_at(m, c, p).has_value());
        }
  }
}

TEST_CASE("embeddings preserve faces and stay injective") {
  const PlanePattern p = make_pattern(two_triangles_map());
  for (const RootedMap& m : enumerate_rooted_maps(4).maps)
    for (Dart c = 0; c < m.num_darts(); ++c) {
      const auto e = occurs_at(m, c, p);
      if (!e) continue;
      CHECK(e->image[0] == c);
      std::set<Dart> used(e->image.begin(), e->image.end());
      CHECK(used.size() == e->image.size());
      for (std::uint32_t f : p.bounded_faces) {
        // A bounded pattern face maps onto a whole host face.
        const Dart d0 = p.base.dart_of_face(f);
        CHECK(m.face_degree(m.face_of(e->image[d0])) == p.base.face_degree(f));
      }
    }
}

TEST_CASE("rerooting the host leaves s unchanged") {
  std::vector<PlanePattern> ps;
  for (const auto& m : suite()) ps.push_back(make_pattern(m));
  for (std::size_t n = 1; n <= 3; ++n)
    for (const RootedMap& m : enumerate_rooted_maps(n).maps)
      for (const auto& p : ps) {
        const std::size_t inner = pattern_count(m, p);
        const std::size_t sphere = pattern_count(m, p, FaceScope::Sphere);
        for (Dart d = 0; d < m.num_darts(); ++d) {
          const RootedMap r = reroot(m, d);
          CHECK(pattern_count(r, p, FaceScope::Sphere) == sphere);
          if (m.face_of(d ^ 1u) == m.outer_face()) CHECK(pattern_count(r, p) == inner);
        }
      }
}

TEST_CASE("E[s(1-cycle, m_2)] by exhaustion and by Monte Carlo") {
  const EnumerationTable t = enumerate_rooted_maps(2);
  Rational exact = 0;
  for (const auto& m : t.maps) exact += static_cast<unsigned long>(oracle::simple_cycle_faces(m, 1));
  exact /= static_cast<unsigned long>(t.maps.size());
  const PlanePattern p = make_pattern(cycle_map(1));
  const GammaEstimate g = estimate_gamma(p, 2, 20000, 99);
  CHECK(g.identity_holds);
  CHECK(g.rows.size() == 20000);
  const double mc = 2 * g.gamma_hat;
  CHECK(std::abs(mc - exact.get_d()) <= 4 * 2 * g.stderr_gamma);
}

TEST_CASE("gamma estimates do not depend on the worker count") {
  const PlanePattern p = make_pattern(cycle_map(1));
  const GammaEstimate a = estimate_gamma(p, 200, 64, 5, 1);
  const GammaEstimate b = estimate_gamma(p, 200, 64, 5, 3);
  CHECK(a.gamma_exact == b.gamma_exact);
  CHECK(a.gamma_hat == b.gamma_hat);
  CHECK(a.stderr_gamma == b.stderr_gamma);
}
