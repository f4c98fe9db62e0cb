#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "planarmap/canonical.hpp"
#include "planarmap/rooted_map.hpp"
#include "planarmap/sample.hpp"

namespace planarmap {

/// U_r^c: submap induced by the vertices within distance r of the tail of
/// `root`, rooted at `root`. Rotations are restricted from m. If the root
/// dart does not survive (only possible for r = 0 and a non-loop root) the
/// neighbourhood is degenerate and the empty map is returned.
RootedMap neighborhood_corner(const RootedMap& m, int r,
                              Dart root = RootedMap::root());

/// Vertex-rooted r-neighbourhood. The empty code is the reserved key for a
/// vertex whose neighbourhood keeps no dart (r = 0 without loops).
struct NeighborhoodKey {
  CanonicalCode code;
  int radius = 0;
  std::size_t root_degree = 0;

  bool degenerate() const noexcept { return code.empty(); }
  friend auto operator<=>(const NeighborhoodKey&, const NeighborhoodKey&) = default;
  friend bool operator==(const NeighborhoodKey&, const NeighborhoodKey&) = default;
};

NeighborhoodKey neighborhood_vertex(const RootedMap& m, std::uint32_t v, int r);

struct CensusXY {
  std::size_t x = 0;      // vertices whose vertex-rooted neighbourhood is key
  std::size_t y = 0;      // corners whose corner-rooted neighbourhood is key's map
  std::size_t kappa = 0;  // root-vertex symmetries of key's map
  bool identity_holds() const noexcept { return y == kappa * x; }
};

/// X and Y for one key; r must be at least 1.
CensusXY census_XY(const RootedMap& m, const NeighborhoodKey& key, int r);

/// X, Y and kappa for every key occurring in m.
std::map<NeighborhoodKey, CensusXY> census_all(const RootedMap& m, int r);

struct LawEntry {
  NeighborhoodKey key;
  double root_freq = 0;
  double vertex_freq = 0;
  double ratio = 0;            // vertex_freq / root_freq, 0 if root_freq is 0
  double predicted_ratio = 0;  // 2 / (d * mu_v_hat)
  double predicted_half = 0;   // 2 / (d * 1/2)
  double ratio_rel_stderr = 0;
};

struct DistributionReport {
  std::size_t n = 0;
  std::size_t replicates = 0;
  int radius = 1;
  double mu_v_hat = 0;
  double total_variation = 0;
  double root_mass = 0;    // sums of the two laws, 1 up to rounding
  double vertex_mass = 0;
  double unseen_vertex_mass = 0;  // vertex mass on keys never seen at a root
  std::vector<LawEntry> entries;  // keys seen at a root, by decreasing root frequency
};

/// Law of U_r^v at the root vertex against the law at a uniform vertex.
DistributionReport compare_laws(std::size_t n, std::size_t replicates, int r,
                                std::uint64_t seed, std::size_t workers = 1,
                                Model model = Model::Map);

struct DegreeReport {
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::vector<double> d_hat;  // index k: root degree frequency
  std::vector<double> p_hat;  // index k: mean fraction of vertices of degree k
  std::vector<double> residual;         // p_k - 4 d_k / k for k = 1..kmax
  std::vector<double> residual_stderr;  // paired per-replicate standard error
  double mu_v_hat = 0;
};

DegreeReport degree_distributions(std::size_t n, std::size_t replicates,
                                  std::uint64_t seed, std::size_t workers = 1,
                                  std::size_t kmax = 5, Model model = Model::Map);

}  // namespace planarmap
