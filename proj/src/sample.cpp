#include "planarmap/sample.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace planarmap {

namespace {
constexpr Dart kNoDart = std::numeric_limits<Dart>::max();
}  // namespace

PlaneTree PlaneTree::from_dyck(const std::vector<bool>& up) {
  PlaneTree t;
  t.up_ = up;
  t.contour_.reserve(up.size());
  std::uint32_t current = 0;
  long height = 0;
  for (bool step : up) {
    t.contour_.push_back(current);
    if (step) {
      const auto child = static_cast<std::uint32_t>(t.parent_.size());
      t.parent_.push_back(current);
      current = child;
      ++height;
    } else {
      if (--height < 0) throw std::invalid_argument("not a Dyck word");
      current = t.parent_[current];
    }
  }
  if (height != 0) throw std::invalid_argument("not a Dyck word");
  return t;
}

PlaneTree sample_plane_tree(std::size_t n, CounterRng& rng) {
  if (n == 0) throw std::invalid_argument("tree needs at least one edge");
  // n up-steps and n+1 down-steps, shuffled; the rotation starting right
  // after the first minimum of the walk is the unique one that first hits
  // -1 at its last step.
  const std::size_t len = 2 * n + 1;
  std::vector<bool> steps(len, false);
  std::fill(steps.begin(), steps.begin() + static_cast<long>(n), true);
  for (std::size_t i = len - 1; i > 0; --i) {
    const std::size_t j = rng.below(i + 1);
    const bool tmp = steps[i];
    steps[i] = steps[j];
    steps[j] = tmp;
  }
  long sum = 0, best = 0;
  std::size_t argmin = 0;  // walk position after which the rotation starts
  for (std::size_t i = 0; i < len; ++i) {
    sum += steps[i] ? 1 : -1;
    if (sum < best) {
      best = sum;
      argmin = i + 1;
    }
  }
  std::vector<bool> word;
  word.reserve(len - 1);
  for (std::size_t k = 0; k + 1 < len; ++k) word.push_back(steps[(argmin + k) % len]);
  return PlaneTree::from_dyck(word);
}

WellLabeledTree sample_labels(const PlaneTree& tree, CounterRng& rng) {
  WellLabeledTree wt{tree, std::vector<int>(tree.num_vertices(), 0), 1};
  for (std::uint32_t v = 1; v < tree.num_vertices(); ++v)
    wt.label[v] = wt.label[tree.parent(v)] + static_cast<int>(rng.below(3)) - 1;
  wt.eps = rng.below(2) ? 1 : -1;
  return wt;
}

PointedQuadrangulation cvs(const WellLabeledTree& wt, SamplerFault fault) {
  const PlaneTree& tree = wt.tree;
  const std::size_t n = tree.num_edges();
  if (n == 0) throw std::invalid_argument("tree needs at least one edge");
  for (std::uint32_t v = 1; v < tree.num_vertices(); ++v)
    if (std::abs(wt.label[v] - wt.label[tree.parent(v)]) > 1)
      throw std::invalid_argument("labels are not well-labelled");

  const auto& contour = tree.contour();
  const std::size_t corners = contour.size();  // 2n
  std::vector<int> lab(corners);
  for (std::size_t i = 0; i < corners; ++i) lab[i] = wt.label[contour[i]];
  const auto [lo, hi] = std::minmax_element(lab.begin(), lab.end());
  const int min_label = *lo;
  const std::size_t span = static_cast<std::size_t>(*hi - min_label) + 1;

  // Successor of corner i: the next corner in contour order, cyclically,
  // whose label is one less; corners of minimal label go to v*.
  constexpr std::size_t kStar = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> succ(corners, kStar);
  std::vector<std::size_t> next_at(span, kStar);
  for (std::size_t k = 2 * corners; k-- > 0;) {
    const std::size_t i = k % corners;
    const std::size_t level = static_cast<std::size_t>(lab[i] - min_label);
    if (k < corners && level > 0) succ[i] = next_at[level - 1];
    next_at[level] = i;
  }
  if (fault == SamplerFault::SuccessorOffByOne) {
    for (auto& s : succ)
      if (s != kStar) s = (s + 1) % corners;
  }

  // Arc i leaves corner i through dart 2i and arrives through dart 2i+1.
  // Arrivals are bucketed by target corner.
  std::vector<std::size_t> offset(corners + 1, 0);
  for (std::size_t j = 0; j < corners; ++j)
    if (succ[j] != kStar) ++offset[succ[j] + 1];
  for (std::size_t i = 0; i < corners; ++i) offset[i + 1] += offset[i];
  std::vector<std::size_t> incoming(offset[corners]);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t j = 0; j < corners; ++j)
      if (succ[j] != kStar) incoming[fill[succ[j]]++] = j;
  }

  // Rotations are emitted vertex by vertex in corner order and closed up
  // at the end.
  const std::size_t star = tree.num_vertices();
  std::vector<Dart> sigma(2 * corners, kNoDart);
  std::vector<Dart> first(star + 1, kNoDart), last(star + 1, kNoDart);
  auto emit = [&](std::size_t v, Dart d) {
    if (first[v] == kNoDart) first[v] = d;
    else sigma[last[v]] = d;
    last[v] = d;
  };
  for (std::size_t i = 0; i < corners; ++i) {
    const auto in_begin = incoming.begin() + static_cast<long>(offset[i]);
    const auto in_end = incoming.begin() + static_cast<long>(offset[i + 1]);
    // Within a corner: arriving arcs, nearest source first, then the
    // leaving arc. Arcs from farther back wrap around the nearer ones.
    std::sort(in_begin, in_end, [&](std::size_t a, std::size_t b) {
      return (i + corners - a) % corners < (i + corners - b) % corners;
    });
    for (auto it = in_begin; it != in_end; ++it)
      emit(contour[i], static_cast<Dart>(2 * *it + 1));
    emit(contour[i], static_cast<Dart>(2 * i));
  }
  // Around v* the arcs appear in reverse contour order.
  for (std::size_t i = corners; i-- > 0;)
    if (succ[i] == kStar) emit(star, static_cast<Dart>(2 * i + 1));
  for (std::size_t v = 0; v <= star; ++v)
    if (first[v] != kNoDart) sigma[last[v]] = first[v];

  const Dart root = wt.eps > 0 ? 0 : 1;
  PointedQuadrangulation pq;
  try {
    pq.map = RootedMap::build(std::move(sigma), root);
  } catch (const MapError& e) {
    throw SamplerError(std::string("CVS output is not a planar map: ") + e.what());
  }
  pq.vertex_label.assign(pq.map.num_vertices(), 0);
  for (std::size_t u = 0; u <= star; ++u) {
    if (first[u] == kNoDart)
      throw SamplerError("CVS output has an isolated vertex");
    const int l = u == star ? min_label - 1 : wt.label[u];
    const Dart d = first[u] ^ root;  // same relabelling as build()
    pq.vertex_label[pq.map.vertex_of(d)] = l;
    if (u == star) pq.marked_vertex = pq.map.vertex_of(d);
  }
  validate_pointed_quadrangulation(pq);
  return pq;
}

bool is_quadrangulation(const RootedMap& q) {
  if (q.empty()) return false;
  for (std::uint32_t f = 0; f < q.num_faces(); ++f)
    if (q.face_degree(f) != 4) return false;
  const auto dist = distances(q, q.root_vertex());
  for (Dart d = 0; d < q.num_darts(); ++d)
    if ((dist[q.vertex_of(d)] + dist[q.vertex_of(RootedMap::alpha(d))]) % 2 == 0)
      return false;
  return true;
}

void validate_pointed_quadrangulation(const PointedQuadrangulation& pq) {
  const RootedMap& q = pq.map;
  const std::size_t faces = q.num_faces();
  if (q.empty() || q.num_edges() != 2 * faces || q.num_vertices() != faces + 2)
    throw SamplerError("vertex or edge count mismatch");
  for (std::uint32_t f = 0; f < faces; ++f)
    if (q.face_degree(f) != 4) throw SamplerError("face of degree other than 4");
  if (pq.vertex_label.size() != q.num_vertices())
    throw SamplerError("label table has wrong size");
  const int base = pq.vertex_label[pq.marked_vertex];
  const auto dist = distances(q, pq.marked_vertex);
  for (std::uint32_t v = 0; v < q.num_vertices(); ++v)
    if (pq.vertex_label[v] - base != dist[v])
      throw SamplerError("label does not match distance to the marked vertex");
  // Distances along every edge differ by one, so q is bipartite.
  for (Dart d = 0; d < q.num_darts(); d += 2)
    if (std::abs(dist[q.vertex_of(d)] - dist[q.vertex_of(d + 1)]) != 1)
      throw SamplerError("not a bipartite quadrangulation");
}

RootedMap forget_point(const PointedQuadrangulation& pq) { return pq.map; }

namespace {

RootedMap angular_inverse_unchecked(const RootedMap& q) {
  const auto dist = distances(q, q.root_vertex());
  constexpr Dart kNone = std::numeric_limits<Dart>::max();
  std::vector<Dart> index(q.num_darts(), kNone);
  Dart next = 0;
  for (Dart d = 0; d < q.num_darts(); ++d)
    if (dist[q.vertex_of(d)] % 2 == 0) index[d] = next++;

  std::vector<Dart> sigma(next), alpha(next);
  for (Dart d = 0; d < q.num_darts(); ++d) {
    if (index[d] == kNone) continue;
    // Diagonal across the face at the corner between d and sigma(d).
    const Dart s = q.sigma(d);
    sigma[index[d]] = index[s];
    alpha[index[d]] = index[RootedMap::alpha(q.phi(s))];
  }
  return RootedMap::from_permutations(sigma, alpha, index[RootedMap::root()]);
}

}  // namespace

RootedMap angular_inverse(const RootedMap& q) {
  if (!is_quadrangulation(q))
    throw std::invalid_argument("angular_inverse needs a quadrangulation");
  return angular_inverse_unchecked(q);
}

Model parse_model(const std::string& name) {
  if (name == "map") return Model::Map;
  if (name == "quadrangulation" || name == "quad") return Model::Quadrangulation;
  throw std::invalid_argument("unknown model '" + name + "'");
}

std::string to_string(Model m) {
  return m == Model::Map ? "map" : "quadrangulation";
}

RootedMap sample_quadrangulation(std::size_t n, std::uint64_t seed,
                                 std::uint64_t stream, SamplerFault fault) {
  CounterRng rng(seed, stream);
  const PlaneTree tree = sample_plane_tree(n, rng);
  return forget_point(cvs(sample_labels(tree, rng), fault));
}

RootedMap sample_uniform_map(std::size_t n, std::uint64_t seed,
                             std::uint64_t stream, SamplerFault fault) {
  // The quadrangulation was validated when it was built.
  return angular_inverse_unchecked(sample_quadrangulation(n, seed, stream, fault));
}

RootedMap sample(Model model, std::size_t n, std::uint64_t seed,
                 std::uint64_t stream, SamplerFault fault) {
  return model == Model::Map ? sample_uniform_map(n, seed, stream, fault)
                             : sample_quadrangulation(n, seed, stream, fault);
}

}  // namespace planarmap
