#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace planarmap {

using Dart = std::uint32_t;

/// Thrown by the map builders when the input does not describe a
/// connected genus-0 rotation system.
class MapError : public std::runtime_error {
 public:
  enum class Kind { BadPermutation, NotConnected, NotPlanar, EmptyMap };

  MapError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/**
 * A corner-rooted planar map stored as a rotation system on darts.
 *
 * Darts are 0..2e-1 and the two darts of an edge are d and d^1. sigma(d) is
 * the next dart around the tail vertex of d, and the face permutation is
 * phi = sigma o alpha. The root dart is always 0 after construction; the
 * root corner sits at the tail of dart 0, and the outer face is the phi-orbit
 * of alpha(0) = 1.
 *
 * The map with no edges (a single isolated vertex) is representable as the
 * default-constructed value. Operations that need a root dart reject it.
 */
class RootedMap {
 public:
  RootedMap() = default;

  /// Validates sigma (with alpha(d) = d^1) and relabels darts so that
  /// root_dart becomes dart 0.
  static RootedMap build(std::vector<Dart> sigma, Dart root_dart = 0);

  /// Builds from an arbitrary fixed-point-free involution alpha; darts are
  /// renumbered so that the result uses the d^1 pairing.
  static RootedMap from_permutations(std::span<const Dart> sigma,
                                     std::span<const Dart> alpha,
                                     Dart root_dart);

  bool empty() const noexcept { return sigma_.empty(); }
  std::size_t num_darts() const noexcept { return sigma_.size(); }
  std::size_t num_edges() const noexcept { return sigma_.size() / 2; }
  std::size_t num_vertices() const noexcept { return vertex_degree_.size(); }
  std::size_t num_faces() const noexcept { return face_degree_.size(); }

  static constexpr Dart root() noexcept { return 0; }
  static constexpr Dart alpha(Dart d) noexcept { return d ^ 1u; }
  Dart sigma(Dart d) const { return sigma_[d]; }
  Dart sigma_inv(Dart d) const { return sigma_inv_[d]; }
  Dart phi(Dart d) const { return sigma_[d ^ 1u]; }

  std::uint32_t vertex_of(Dart d) const { return vertex_[d]; }
  std::uint32_t face_of(Dart d) const { return face_[d]; }
  std::uint32_t root_vertex() const;
  std::uint32_t outer_face() const;
  std::size_t vertex_degree(std::uint32_t v) const { return vertex_degree_[v]; }
  std::size_t face_degree(std::uint32_t f) const { return face_degree_[f]; }
  std::size_t root_degree() const;

  /// Some dart with tail at vertex v (the smallest one).
  Dart dart_of_vertex(std::uint32_t v) const { return vertex_dart_[v]; }
  Dart dart_of_face(std::uint32_t f) const { return face_dart_[f]; }

  std::span<const Dart> sigma_table() const noexcept { return sigma_; }

  friend bool operator==(const RootedMap& a, const RootedMap& b) {
    return a.sigma_ == b.sigma_;
  }

 private:
  explicit RootedMap(std::vector<Dart> sigma);
  void require_root() const;

  std::vector<Dart> sigma_;
  std::vector<Dart> sigma_inv_;
  std::vector<std::uint32_t> vertex_;
  std::vector<std::uint32_t> face_;
  std::vector<std::uint32_t> vertex_degree_{0};
  std::vector<std::uint32_t> face_degree_{0};
  std::vector<Dart> vertex_dart_;
  std::vector<Dart> face_dart_;
};

/// Validation without allocation-heavy construction; used by enumeration.
/// Returns true iff sigma (alpha = d^1) is connected with V - E + F = 2.
bool is_planar_connected(std::span<const Dart> sigma);

/// The same labelled structure with dart d moved to position 0.
RootedMap reroot(const RootedMap& m, Dart d);

/// Applies the dart relabelling perm (old -> new); perm must respect the
/// d^1 pairing, i.e. perm(d^1) = perm(d)^1. The root follows perm(0).
RootedMap relabel(const RootedMap& m, std::span<const Dart> perm);

struct Face {
  std::uint32_t id;
  std::vector<Dart> darts;  // phi order starting at the smallest dart
};

std::vector<Face> faces(const RootedMap& m);

/// Sorted multiset of face degrees.
std::vector<std::size_t> face_degree_census(const RootedMap& m);

/// Graph distance from source to every vertex (loops and multi-edges allowed).
std::vector<int> distances(const RootedMap& m, std::uint32_t source);

/// Largest distance of a vertex from the root vertex.
int radius(const RootedMap& m);

/// Builds sigma from per-vertex rotation lists over darts 0..2e-1 paired d^1.
RootedMap map_from_rotations(const std::vector<std::vector<Dart>>& rotations,
                             Dart root_dart);

}  // namespace planarmap
