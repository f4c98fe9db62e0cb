#pragma once

#include <cstddef>

#include "planarmap/rooted_map.hpp"

namespace planarmap {

// Small named maps used as patterns and test fixtures.

RootedMap loop_map();         // one vertex, one loop
RootedMap single_edge_map();  // two vertices, one edge
RootedMap cycle_map(std::size_t length);  // simple cycle; 1 gives the loop
RootedMap path_map(std::size_t edges);    // rooted at an end vertex
RootedMap star_map(std::size_t leaves);   // rooted at the centre

/// Two triangles sharing an edge, rooted on the outer 4-face.
RootedMap two_triangles_map();

}  // namespace planarmap
