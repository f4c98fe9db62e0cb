#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "planarmap/canonical.hpp"
#include "planarmap/rational.hpp"
#include "planarmap/rooted_map.hpp"

namespace planarmap {

inline constexpr std::size_t kMaxEnumerationEdges = 5;

struct CensusKey {
  std::size_t vertices;
  std::size_t root_degree;
  std::vector<std::size_t> face_degrees;  // sorted

  friend auto operator<=>(const CensusKey&, const CensusKey&) = default;
};

/// All corner-rooted planar maps with n edges, sorted by canonical code.
struct EnumerationTable {
  std::size_t n = 0;
  std::vector<RootedMap> maps;
  std::vector<CanonicalCode> codes;
  std::map<CensusKey, std::size_t> census;

  /// Count of maps with the given number of vertices.
  std::map<std::size_t, std::size_t> vertex_census() const;
  /// Census as CSV rows: n, vertices, root_degree, count.
  std::string census_csv(bool header = true) const;
};

/// Brute force over all permutations sigma of 2n darts with alpha(d) = d^1,
/// keeping connected genus-0 ones and deduplicating by code at dart 0.
EnumerationTable enumerate_rooted_maps(std::size_t n);

struct Moments {
  Rational mean;
  Rational variance;
};

Moments exact_vertex_moments(const EnumerationTable& table);

struct RerootReport {
  bool passed = false;
  std::size_t rerootings = 0;
  std::size_t expected_multiplicity = 0;
  std::optional<CanonicalCode> counterexample;
  std::size_t counterexample_multiplicity = 0;
};

/// Every code of the table must occur exactly 2n times among rerootings.
RerootReport verify_reroot_invariance(const EnumerationTable& table);

struct UnrootedOrbit {
  std::vector<std::size_t> members;  // indices into table.maps
  std::size_t automorphism_order = 0;
};

/// Partition of the table into re-rooting orbits (one per unrooted map).
std::vector<UnrootedOrbit> group_by_unrooted(const EnumerationTable& table);

}  // namespace planarmap
