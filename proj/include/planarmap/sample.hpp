#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "planarmap/random.hpp"
#include "planarmap/rooted_map.hpp"

namespace planarmap {

/// Rooted plane tree; vertices are numbered in preorder with the root at 0.
class PlaneTree {
 public:
  /// up[i] is true for a step away from the root; must be a Dyck word.
  static PlaneTree from_dyck(const std::vector<bool>& up);

  std::size_t num_edges() const noexcept { return parent_.size() - 1; }
  std::size_t num_vertices() const noexcept { return parent_.size(); }
  /// Parent of v; the root is its own parent.
  std::uint32_t parent(std::uint32_t v) const { return parent_[v]; }
  const std::vector<bool>& dyck_word() const noexcept { return up_; }
  /// Vertex at each of the 2n corners, in contour order from the root corner.
  const std::vector<std::uint32_t>& contour() const noexcept { return contour_; }

  friend bool operator==(const PlaneTree& a, const PlaneTree& b) {
    return a.up_ == b.up_;
  }

 private:
  std::vector<bool> up_;
  std::vector<std::uint32_t> parent_{0};
  std::vector<std::uint32_t> contour_;
};

struct WellLabeledTree {
  PlaneTree tree;
  std::vector<int> label;  // per vertex, root label 0
  int eps = 1;             // orientation of the root arc, +1 or -1
};

struct PointedQuadrangulation {
  RootedMap map;
  std::uint32_t marked_vertex = 0;  // v*
  std::vector<int> vertex_label;    // CVS labels, v* carries min - 1
};

/// Raised when a sampler output fails its structural checks.
class SamplerError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Deliberate construction faults, used only as negative controls.
enum class SamplerFault {
  None,
  SuccessorOffByOne,  // successor search skips the adjacent corner
};

/// Uniform over the Catalan(n) plane trees with n edges (cycle lemma).
PlaneTree sample_plane_tree(std::size_t n, CounterRng& rng);

/// Independent uniform increments in {-1, 0, 1} and a uniform sign.
WellLabeledTree sample_labels(const PlaneTree& tree, CounterRng& rng);

/// Cori-Vauquelin-Schaeffer construction. The result is validated
/// (degree-4 faces, bipartite, n+2 vertices, labels = distances to v*).
PointedQuadrangulation cvs(const WellLabeledTree& wt,
                           SamplerFault fault = SamplerFault::None);

/// Throws SamplerError describing the first violated property.
void validate_pointed_quadrangulation(const PointedQuadrangulation& pq);

/// True iff every face has degree 4 and the vertex 2-colouring is proper.
bool is_quadrangulation(const RootedMap& q);

RootedMap forget_point(const PointedQuadrangulation& pq);

/// Inverse of the angular bijection: keeps the colour class of the root
/// vertex and draws one diagonal per face between its two corners of that
/// class. The root dart of q becomes, through the root corner, the root of
/// the result.
RootedMap angular_inverse(const RootedMap& q);

enum class Model { Map, Quadrangulation };

Model parse_model(const std::string& name);
std::string to_string(Model m);

/// Uniform rooted quadrangulation with n faces.
RootedMap sample_quadrangulation(std::size_t n, std::uint64_t seed,
                                 std::uint64_t stream,
                                 SamplerFault fault = SamplerFault::None);

/// Uniform rooted planar map with n edges, deterministic in (seed, stream).
RootedMap sample_uniform_map(std::size_t n, std::uint64_t seed,
                             std::uint64_t stream,
                             SamplerFault fault = SamplerFault::None);

RootedMap sample(Model model, std::size_t n, std::uint64_t seed,
                 std::uint64_t stream, SamplerFault fault = SamplerFault::None);

}  // namespace planarmap
