#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "planarmap/rational.hpp"
#include "planarmap/rooted_map.hpp"
#include "planarmap/sample.hpp"

namespace planarmap {

/**
 * Plane representation of a map, fixed by a corner-rooted version `base`
 * whose outer face lies to the right of the root edge.
 */
struct PlanePattern {
  RootedMap base;
  std::vector<std::uint32_t> bounded_faces;
  std::vector<Dart> boundary_darts;  // darts whose right face is the outer face
  std::size_t beta = 0;  // boundary rootings that reproduce `base`
  std::vector<char> face_is_bounded;  // indexed by face id of `base`
};

PlanePattern make_pattern(const RootedMap& m);

/// Pattern dart -> host dart.
struct Embedding {
  std::vector<Dart> image;
};

/// Which host faces may receive bounded pattern faces. Inner excludes the
/// host's own outer face (occurrences in the plane representation); Sphere
/// allows every face.
enum class FaceScope { Inner, Sphere };

/// Some face-preserving embedding of p into host sending p's root dart to c.
std::optional<Embedding> occurs_at(const RootedMap& host, Dart c,
                                   const PlanePattern& p,
                                   FaceScope scope = FaceScope::Inner);

/// Number of distinct embeddings sending p's root dart to c. This is 0 or 1
/// when every pattern vertex has at most one outer-face corner; patterns
/// such as paths can have several at one corner.
std::size_t count_embeddings_at(const RootedMap& host, Dart c,
                                const PlanePattern& p,
                                FaceScope scope = FaceScope::Inner);

/// Z: rooted embeddings of p summed over all corners of host.
std::size_t anchored_count(const RootedMap& host, const PlanePattern& p,
                           FaceScope scope = FaceScope::Inner);

/// Number of corners of host where p occurs at least once.
std::size_t occurrence_corners(const RootedMap& host, const PlanePattern& p,
                               FaceScope scope = FaceScope::Inner);

class NonIntegerCount : public std::logic_error {
 public:
  NonIntegerCount(std::size_t z, std::size_t beta);
};

/// s = Z / beta, the number of distinct copies of p in host.
std::size_t pattern_count(const RootedMap& host, const PlanePattern& p,
                          FaceScope scope = FaceScope::Inner);

struct PatternReplicate {
  std::size_t replicate = 0;
  std::size_t z = 0;
  std::size_t s = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

struct GammaEstimate {
  std::size_t n = 0;
  std::size_t beta = 0;
  std::vector<PatternReplicate> rows;
  double gamma_hat = 0;  // mean of s / n
  double q_hat = 0;      // mean of Z / (2n)
  double stderr_gamma = 0;
  Rational gamma_exact;  // same estimators as exact rationals
  Rational q_exact;
  bool identity_holds = false;  // gamma_exact == 2 q_exact / beta
};

GammaEstimate estimate_gamma(const PlanePattern& p, std::size_t n,
                             std::size_t replicates, std::uint64_t seed,
                             std::size_t workers = 1,
                             Model model = Model::Map);

}  // namespace planarmap
