#include "planarmap/standard_maps.hpp"

#include <stdexcept>
#include <vector>

namespace planarmap {

RootedMap loop_map() { return RootedMap::build({1, 0}, 0); }

RootedMap single_edge_map() { return RootedMap::build({0, 1}, 0); }

RootedMap cycle_map(std::size_t length) {
  if (length == 0) throw std::invalid_argument("cycle length must be >= 1");
  if (length == 1) return loop_map();
  // edge i joins vertex i (dart 2i) to vertex i+1 (dart 2i+1).
  std::vector<std::vector<Dart>> rot(length);
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t prev = (i + length - 1) % length;
    rot[i] = {Dart(2 * i), Dart(2 * prev + 1)};
  }
  return map_from_rotations(rot, 0);
}

RootedMap path_map(std::size_t edges) {
  if (edges == 0) throw std::invalid_argument("path needs at least one edge");
  std::vector<std::vector<Dart>> rot(edges + 1);
  for (std::size_t i = 0; i < edges; ++i) {
    rot[i].push_back(Dart(2 * i));
    rot[i + 1].push_back(Dart(2 * i + 1));
  }
  return map_from_rotations(rot, 0);
}

RootedMap star_map(std::size_t leaves) {
  if (leaves == 0) throw std::invalid_argument("star needs at least one leaf");
  std::vector<std::vector<Dart>> rot(leaves + 1);
  for (std::size_t i = 0; i < leaves; ++i) {
    rot[0].push_back(Dart(2 * i));
    rot[i + 1].push_back(Dart(2 * i + 1));
  }
  return map_from_rotations(rot, 0);
}

RootedMap two_triangles_map() {
  // Vertices A, B, C, D with triangles ABC and ABD glued along AB.
  // Darts: AB 0/1, BC 2/3, CA 4/5, AD 6/7, DB 8/9.
  const std::vector<std::vector<Dart>> rot = {
      {0, 5, 6},  // A
      {2, 1, 9},  // B
      {4, 3},     // C
      {8, 7},     // D
  };
  // Dart 3 (C -> B) has the 4-face {2, 4, 6, 8} through its partner.
  return map_from_rotations(rot, 3);
}

}  // namespace planarmap
