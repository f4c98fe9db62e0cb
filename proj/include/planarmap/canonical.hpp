#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "planarmap/rooted_map.hpp"

namespace planarmap {

/**
 * Isomorphism code of a corner-rooted map.
 *
 * Darts are labelled in discovery order from the start dart; for each
 * labelled dart in label order we emit (label(sigma(d)), label(alpha(d))).
 * Two rooted maps have equal codes iff they are isomorphic as corner-rooted
 * maps. The empty code is reserved for the edgeless map.
 */
struct CanonicalCode {
  std::vector<std::uint32_t> pairs;  // flattened (sigma, alpha) label pairs

  bool empty() const noexcept { return pairs.empty(); }
  std::size_t num_darts() const noexcept { return pairs.size() / 2; }

  /// "s0:a0,s1:a1,..." form used as report keys; "-" for the empty code.
  std::string to_string() const;

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
};

struct CanonicalCodeHash {
  std::size_t operator()(const CanonicalCode& c) const noexcept;
};

CanonicalCode canonical_code(const RootedMap& m, Dart start = RootedMap::root());

/// Code of the vertex-rooted map: minimum over the darts at vertex v.
CanonicalCode vertex_code(const RootedMap& m, std::uint32_t v);

/// Minimum of the codes rooted at the darts in the sigma-orbit of `start`,
/// read directly from a connected rotation table (alpha = d ^ 1). Candidates
/// are abandoned at the first label that exceeds the best code so far.
CanonicalCode min_vertex_code(std::span<const Dart> sigma, Dart start);

/// Reconstructs the rooted map a code describes.
RootedMap decode(const CanonicalCode& code);

struct RootSymmetry {
  std::size_t kappa = 0;         // root-vertex darts reproducing the rooted map
  std::size_t alpha_orbits = 0;  // distinct rooted maps from root-vertex darts
};

RootSymmetry root_symmetries(const RootedMap& m);

/// A vertex-rooted map in canonical form: the representative rooted at the
/// root-vertex dart of minimal code.
class VertexRootedMap {
 public:
  explicit VertexRootedMap(const RootedMap& m);

  const RootedMap& representative() const noexcept { return rep_; }
  const CanonicalCode& code() const noexcept { return code_; }

  friend bool operator==(const VertexRootedMap& a, const VertexRootedMap& b) {
    return a.code_ == b.code_;
  }

 private:
  RootedMap rep_;
  CanonicalCode code_;
};

}  // namespace planarmap
