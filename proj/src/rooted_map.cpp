#include "planarmap/rooted_map.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace planarmap {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

void check_permutation(std::span<const Dart> perm, const char* name) {
  std::vector<char> seen(perm.size(), 0);
  for (Dart d : perm) {
    if (d >= perm.size() || seen[d])
      throw MapError(MapError::Kind::BadPermutation,
                     std::string(name) + " is not a permutation");
    seen[d] = 1;
  }
}

// Orbit labelling of a permutation given as a functor; returns orbit count.
template <class Next>
std::uint32_t label_orbits(std::size_t n, Next next,
                           std::vector<std::uint32_t>& orbit_of) {
  orbit_of.assign(n, kUnset);
  std::uint32_t count = 0;
  for (Dart d = 0; d < n; ++d) {
    if (orbit_of[d] != kUnset) continue;
    Dart e = d;
    do {
      orbit_of[e] = count;
      e = next(e);
    } while (e != d);
    ++count;
  }
  return count;
}

}  // namespace

bool is_planar_connected(std::span<const Dart> sigma) {
  const std::size_t n = sigma.size();
  if (n == 0 || n % 2) return false;
  // Small fixed buffers keep the enumeration loop allocation free.
  constexpr std::size_t kStack = 64;
  Dart stack_buf[kStack];
  char seen_buf[kStack];
  std::vector<Dart> heap_stack;
  std::vector<char> heap_seen;
  Dart* stack = stack_buf;
  char* seen = seen_buf;
  if (n > kStack) {
    heap_stack.resize(n);
    heap_seen.resize(n);
    stack = heap_stack.data();
    seen = heap_seen.data();
  }
  std::fill(seen, seen + n, 0);
  std::size_t top = 0, reached = 1;
  stack[top++] = 0;
  seen[0] = 1;
  while (top) {
    Dart d = stack[--top];
    for (Dart e : {sigma[d], Dart(d ^ 1u)}) {
      if (!seen[e]) {
        seen[e] = 1;
        ++reached;
        stack[top++] = e;
      }
    }
  }
  if (reached != n) return false;

  std::size_t vertices = 0, faces = 0;
  std::fill(seen, seen + n, 0);
  for (Dart d = 0; d < n; ++d) {
    if (seen[d]) continue;
    ++vertices;
    for (Dart e = d; !seen[e]; e = sigma[e]) seen[e] = 1;
  }
  std::fill(seen, seen + n, 0);
  for (Dart d = 0; d < n; ++d) {
    if (seen[d]) continue;
    ++faces;
    for (Dart e = d; !seen[e]; e = sigma[e ^ 1u]) seen[e] = 1;
  }
  return vertices + faces == n / 2 + 2;
}

RootedMap::RootedMap(std::vector<Dart> sigma) : sigma_(std::move(sigma)) {
  const std::size_t n = sigma_.size();
  sigma_inv_.resize(n);
  for (Dart d = 0; d < n; ++d) sigma_inv_[sigma_[d]] = d;

  const std::uint32_t nv =
      label_orbits(n, [this](Dart d) { return sigma_[d]; }, vertex_);
  const std::uint32_t nf =
      label_orbits(n, [this](Dart d) { return sigma_[d ^ 1u]; }, face_);
  vertex_degree_.assign(nv, 0);
  face_degree_.assign(nf, 0);
  vertex_dart_.assign(nv, kUnset);
  face_dart_.assign(nf, kUnset);
  for (Dart d = 0; d < n; ++d) {
    ++vertex_degree_[vertex_[d]];
    ++face_degree_[face_[d]];
    if (vertex_dart_[vertex_[d]] == kUnset) vertex_dart_[vertex_[d]] = d;
    if (face_dart_[face_[d]] == kUnset) face_dart_[face_[d]] = d;
  }
}

RootedMap RootedMap::build(std::vector<Dart> sigma, Dart root_dart) {
  const std::size_t n = sigma.size();
  if (n == 0) return RootedMap();
  if (n % 2)
    throw MapError(MapError::Kind::BadPermutation,
                   "number of darts must be even");
  check_permutation(sigma, "sigma");
  if (root_dart >= n)
    throw MapError(MapError::Kind::BadPermutation, "root dart out of range");

  if (root_dart != 0) {
    // Swap edge 0 with the root edge and flip orientations if the root is
    // odd; this keeps the pairing and sends root to 0.
    const Dart root_edge = root_dart >> 1;
    const Dart flip = root_dart & 1u;
    auto move = [&](Dart d) {
      Dart e = d >> 1;
      if (e == 0) e = root_edge;
      else if (e == root_edge) e = 0;
      return static_cast<Dart>((e << 1) | ((d & 1u) ^ flip));
    };
    std::vector<Dart> moved(n);
    for (Dart d = 0; d < n; ++d) moved[move(d)] = move(sigma[d]);
    sigma = std::move(moved);
  }

  std::vector<char> seen(n, 0);
  std::vector<Dart> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Dart d = stack.back();
    stack.pop_back();
    for (Dart e : {sigma[d], Dart(d ^ 1u)}) {
      if (!seen[e]) {
        seen[e] = 1;
        ++reached;
        stack.push_back(e);
      }
    }
  }
  if (reached != n)
    throw MapError(MapError::Kind::NotConnected, "map is not connected");

  RootedMap m(std::move(sigma));
  const long euler = static_cast<long>(m.num_vertices()) -
                     static_cast<long>(m.num_edges()) +
                     static_cast<long>(m.num_faces());
  if (euler != 2)
    throw MapError(MapError::Kind::NotPlanar,
                   "V - E + F = " + std::to_string(euler) + ", expected 2");
  return m;
}

RootedMap RootedMap::from_permutations(std::span<const Dart> sigma,
                                       std::span<const Dart> alpha,
                                       Dart root_dart) {
  const std::size_t n = sigma.size();
  if (alpha.size() != n)
    throw MapError(MapError::Kind::BadPermutation, "sigma/alpha size mismatch");
  if (n == 0) return RootedMap();
  check_permutation(sigma, "sigma");
  check_permutation(alpha, "alpha");
  for (Dart d = 0; d < n; ++d)
    if (alpha[d] == d || alpha[alpha[d]] != d)
      throw MapError(MapError::Kind::BadPermutation,
                     "alpha is not a fixed-point-free involution");
  if (root_dart >= n)
    throw MapError(MapError::Kind::BadPermutation, "root dart out of range");

  // root edge becomes darts (0, 1); remaining edges numbered by smaller dart.
  std::vector<Dart> perm(n, kUnset);
  perm[root_dart] = 0;
  perm[alpha[root_dart]] = 1;
  Dart next = 2;
  for (Dart d = 0; d < n; ++d) {
    if (perm[d] != kUnset) continue;
    perm[d] = next;
    perm[alpha[d]] = next + 1;
    next += 2;
  }
  std::vector<Dart> relabelled(n);
  for (Dart d = 0; d < n; ++d) relabelled[perm[d]] = perm[sigma[d]];
  return build(std::move(relabelled), 0);
}

void RootedMap::require_root() const {
  if (empty())
    throw MapError(MapError::Kind::EmptyMap, "operation needs a root dart");
}

std::uint32_t RootedMap::root_vertex() const {
  require_root();
  return vertex_[0];
}

std::uint32_t RootedMap::outer_face() const {
  require_root();
  return face_[alpha(root())];
}

std::size_t RootedMap::root_degree() const {
  require_root();
  return vertex_degree_[vertex_[0]];
}

RootedMap reroot(const RootedMap& m, Dart d) {
  if (m.empty())
    throw MapError(MapError::Kind::EmptyMap, "cannot reroot the empty map");
  auto s = m.sigma_table();
  return RootedMap::build(std::vector<Dart>(s.begin(), s.end()), d);
}

RootedMap relabel(const RootedMap& m, std::span<const Dart> perm) {
  const std::size_t n = m.num_darts();
  if (perm.size() != n)
    throw MapError(MapError::Kind::BadPermutation, "relabelling has wrong size");
  check_permutation(perm, "relabelling");
  std::vector<Dart> sigma(n);
  for (Dart d = 0; d < n; ++d) {
    if (perm[d ^ 1u] != (perm[d] ^ 1u))
      throw MapError(MapError::Kind::BadPermutation,
                     "relabelling does not respect the edge pairing");
    sigma[perm[d]] = perm[m.sigma(d)];
  }
  return RootedMap::build(std::move(sigma), n ? perm[0] : 0);
}

std::vector<Face> faces(const RootedMap& m) {
  std::vector<Face> out;
  if (m.empty()) return out;
  out.reserve(m.num_faces());
  for (std::uint32_t f = 0; f < m.num_faces(); ++f) {
    Face face{f, {}};
    const Dart start = m.dart_of_face(f);
    Dart d = start;
    do {
      face.darts.push_back(d);
      d = m.phi(d);
    } while (d != start);
    out.push_back(std::move(face));
  }
  return out;
}

std::vector<std::size_t> face_degree_census(const RootedMap& m) {
  std::vector<std::size_t> degrees;
  if (m.empty()) return degrees;
  for (std::uint32_t f = 0; f < m.num_faces(); ++f)
    degrees.push_back(m.face_degree(f));
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::vector<int> distances(const RootedMap& m, std::uint32_t source) {
  std::vector<int> dist(m.num_vertices(), -1);
  if (source >= dist.size()) throw std::out_of_range("vertex out of range");
  dist[source] = 0;
  if (m.empty()) return dist;
  std::deque<std::uint32_t> queue{source};
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    const Dart start = m.dart_of_vertex(v);
    Dart d = start;
    do {
      const std::uint32_t w = m.vertex_of(RootedMap::alpha(d));
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
      d = m.sigma(d);
    } while (d != start);
  }
  return dist;
}

int radius(const RootedMap& m) {
  if (m.empty()) return 0;
  auto dist = distances(m, m.root_vertex());
  return *std::max_element(dist.begin(), dist.end());
}

RootedMap map_from_rotations(const std::vector<std::vector<Dart>>& rotations,
                             Dart root_dart) {
  std::size_t n = 0;
  for (const auto& rot : rotations) n += rot.size();
  std::vector<Dart> sigma(n, kUnset);
  for (const auto& rot : rotations) {
    for (std::size_t i = 0; i < rot.size(); ++i) {
      if (rot[i] >= n || sigma[rot[i]] != kUnset)
        throw MapError(MapError::Kind::BadPermutation,
                       "rotation lists do not partition the darts");
      sigma[rot[i]] = rot[(i + 1) % rot.size()];
    }
  }
  return RootedMap::build(std::move(sigma), root_dart);
}

}  // namespace planarmap
