#include "planarmap/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "planarmap/parallel.hpp"

namespace planarmap {

namespace {

constexpr Dart kNone = std::numeric_limits<Dart>::max();

std::uint64_t signature(std::size_t degree, std::size_t darts) {
  return (static_cast<std::uint64_t>(degree) << 32) | darts;
}

/// Ball extraction with stamped scratch arrays, so repeated extractions in
/// one host cost only the size of each ball.
class BallExtractor {
 public:
  explicit BallExtractor(const RootedMap& m)
      : m_(m),
        vstamp_(m.num_vertices(), 0),
        vdist_(m.num_vertices(), 0),
        dstamp_(m.num_darts(), 0),
        dlocal_(m.num_darts(), 0) {}

  /// Ball of radius r around the tail of `root`, rooted at `root`.
  RootedMap extract(Dart root, int r) {
    if (!localize(root, r)) return RootedMap();
    return RootedMap::build(local_sigma_, 0);
  }

  /// Key of the ball around vertex v, without building the ball.
  NeighborhoodKey key_of(std::uint32_t v, int r) {
    NeighborhoodKey key;
    key.radius = r;
    const Dart root = vertex_root(v, r);
    if (root == kNone || !localize(root, r)) return key;
    key.code = min_vertex_code(local_sigma_, 0);
    for (Dart d = local_sigma_[0];; d = local_sigma_[d]) {
      ++key.root_degree;
      if (d == 0) break;
    }
    return key;
  }

  /// (darts at v, darts in the ball) without building the ball; r >= 1.
  std::uint64_t signature_of(std::uint32_t v, int r) {
    ++stamp_;
    collect(v, r);
    std::uint64_t darts = 0;
    for (std::uint32_t u : ball_) {
      const Dart first = m_.dart_of_vertex(u);
      Dart d = first;
      do {
        if (kept(m_.vertex_of(RootedMap::alpha(d)))) ++darts;
        d = m_.sigma(d);
      } while (d != first);
    }
    return signature(m_.vertex_degree(v), darts);
  }

  /// Ball around vertex v rooted at its first surviving dart, or the empty
  /// map if none survives.
  RootedMap extract_vertex(std::uint32_t v, int r) {
    const Dart root = vertex_root(v, r);
    return root == kNone ? RootedMap() : extract(root, r);
  }

 private:
  bool kept(std::uint32_t v) const { return vstamp_[v] == stamp_; }

  // First dart at v that survives in its ball: any dart for r >= 1, a loop
  // for r = 0.
  Dart vertex_root(std::uint32_t v, int r) const {
    const Dart first = m_.dart_of_vertex(v);
    if (r >= 1) return first;
    Dart d = first;
    do {
      if (m_.vertex_of(RootedMap::alpha(d)) == v) return d;
      d = m_.sigma(d);
    } while (d != first);
    return kNone;
  }

  // Fills local_sigma_ with the ball's rotation table, root at dart 0.
  bool localize(Dart root, int r) {
    if (r < 0) throw std::invalid_argument("radius must be non-negative");
    ++stamp_;
    collect(m_.vertex_of(root), r);
    if (!kept(m_.vertex_of(RootedMap::alpha(root)))) return false;
    number(root);
    for (std::uint32_t u : ball_) {
      const Dart first = m_.dart_of_vertex(u);
      Dart d = first;
      do {
        if (dstamp_[d] != stamp_ && kept(m_.vertex_of(RootedMap::alpha(d)))) number(d);
        d = m_.sigma(d);
      } while (d != first);
    }
    link();
    return true;
  }

  void collect(std::uint32_t source, int r) {
    ball_.clear();
    ball_.push_back(source);
    vstamp_[source] = stamp_;
    vdist_[source] = 0;
    for (std::size_t i = 0; i < ball_.size(); ++i) {
      const std::uint32_t u = ball_[i];
      if (vdist_[u] >= r) continue;
      const Dart first = m_.dart_of_vertex(u);
      Dart d = first;
      do {
        const std::uint32_t w = m_.vertex_of(RootedMap::alpha(d));
        if (!kept(w)) {
          vstamp_[w] = stamp_;
          vdist_[w] = vdist_[u] + 1;
          ball_.push_back(w);
        }
        d = m_.sigma(d);
      } while (d != first);
    }
    local_darts_ = 0;
  }

  void number(Dart d) {
    for (Dart e : {d, RootedMap::alpha(d)}) {
      dstamp_[e] = stamp_;
      dlocal_[e] = local_darts_++;
    }
  }

  void link() {
    local_sigma_.assign(local_darts_, kNone);
    for (std::uint32_t u : ball_) {
      const Dart first = m_.dart_of_vertex(u);
      Dart prev = kNone, head = kNone;
      Dart d = first;
      do {
        if (dstamp_[d] == stamp_) {
          if (prev == kNone) head = dlocal_[d];
          else local_sigma_[prev] = dlocal_[d];
          prev = dlocal_[d];
        }
        d = m_.sigma(d);
      } while (d != first);
      if (prev != kNone) local_sigma_[prev] = head;
    }
  }

  const RootedMap& m_;
  std::vector<std::uint32_t> vstamp_;
  std::vector<int> vdist_;
  std::vector<std::uint32_t> dstamp_;
  std::vector<Dart> dlocal_;
  std::vector<std::uint32_t> ball_;
  std::vector<Dart> local_sigma_;
  Dart local_darts_ = 0;
  std::uint32_t stamp_ = 0;
};

// Codes of the ball rooted at each dart of its root vertex, in rotation
// order starting at the root.
std::vector<CanonicalCode> root_vertex_codes(const RootedMap& ball) {
  std::vector<CanonicalCode> codes;
  if (ball.empty()) return codes;
  Dart d = RootedMap::root();
  do {
    codes.push_back(canonical_code(ball, d));
    d = ball.sigma(d);
  } while (d != RootedMap::root());
  return codes;
}

NeighborhoodKey key_from_codes(const std::vector<CanonicalCode>& codes, int r) {
  NeighborhoodKey key;
  key.radius = r;
  if (codes.empty()) return key;
  key.code = *std::min_element(codes.begin(), codes.end());
  key.root_degree = codes.size();
  return key;
}

}  // namespace

RootedMap neighborhood_corner(const RootedMap& m, int r, Dart root) {
  if (m.empty()) throw MapError(MapError::Kind::EmptyMap, "empty host map");
  if (root >= m.num_darts()) throw std::out_of_range("root dart out of range");
  BallExtractor ex(m);
  return ex.extract(root, r);
}

NeighborhoodKey neighborhood_vertex(const RootedMap& m, std::uint32_t v, int r) {
  if (m.empty()) throw MapError(MapError::Kind::EmptyMap, "empty host map");
  if (v >= m.num_vertices()) throw std::out_of_range("vertex out of range");
  BallExtractor ex(m);
  return ex.key_of(v, r);
}

std::map<NeighborhoodKey, CensusXY> census_all(const RootedMap& m, int r) {
  if (r < 1) throw std::invalid_argument("census needs radius >= 1");
  if (m.empty()) throw MapError(MapError::Kind::EmptyMap, "empty host map");
  BallExtractor ex(m);
  std::map<NeighborhoodKey, CensusXY> out;
  std::map<CanonicalCode, std::size_t> corner_counts;
  for (std::uint32_t v = 0; v < m.num_vertices(); ++v) {
    const auto codes = root_vertex_codes(ex.extract_vertex(v, r));
    const NeighborhoodKey key = key_from_codes(codes, r);
    auto& entry = out[key];
    ++entry.x;
    if (entry.kappa == 0)
      entry.kappa = static_cast<std::size_t>(std::count(codes.begin(), codes.end(), key.code));
    for (const auto& c : codes) ++corner_counts[c];
  }
  for (auto& [key, entry] : out) entry.y = corner_counts[key.code];
  return out;
}

CensusXY census_XY(const RootedMap& m, const NeighborhoodKey& key, int r) {
  if (r < 1) throw std::invalid_argument("census needs radius >= 1");
  if (key.degenerate()) throw std::invalid_argument("degenerate key");
  if (m.empty()) throw MapError(MapError::Kind::EmptyMap, "empty host map");
  BallExtractor ex(m);
  CensusXY out;
  out.kappa = root_symmetries(decode(key.code)).kappa;
  for (std::uint32_t v = 0; v < m.num_vertices(); ++v) {
    const auto codes = root_vertex_codes(ex.extract_vertex(v, r));
    if (key_from_codes(codes, r).code == key.code) ++out.x;
    out.y += static_cast<std::size_t>(std::count(codes.begin(), codes.end(), key.code));
  }
  return out;
}

namespace {

struct RootAccumulator {
  std::map<NeighborhoodKey, std::size_t> hits;
  double mu_v = 0;
};

// Vertex mass per root-key index, plus the mass of keys never seen at a root.
struct VertexAccumulator {
  std::map<std::size_t, double> mass;
  double unseen = 0;
};

}  // namespace

DistributionReport compare_laws(std::size_t n, std::size_t replicates, int r,
                                std::uint64_t seed, std::size_t workers,
                                Model model) {
  if (n == 0 || replicates == 0)
    throw std::invalid_argument("n and replicates must be positive");
  if (r < 1) throw std::invalid_argument("law comparison needs radius >= 1");

  // Pass 1: root law.
  auto roots = chunked_reduce<RootAccumulator>(
      replicates, workers, 32,
      [&](RootAccumulator& acc, std::size_t i) {
        const RootedMap m = sample(model, n, seed, i);
        acc.mu_v += static_cast<double>(m.num_vertices()) / static_cast<double>(n);
        ++acc.hits[neighborhood_vertex(m, m.root_vertex(), r)];
      },
      [](RootAccumulator& into, const RootAccumulator& part) {
        into.mu_v += part.mu_v;
        for (const auto& [key, c] : part.hits) into.hits[key] += c;
      });

  std::unordered_map<CanonicalCode, std::size_t, CanonicalCodeHash> index;
  std::vector<const NeighborhoodKey*> keys;
  std::unordered_set<std::uint64_t> signatures;
  for (const auto& [key, c] : roots.hits) {
    index.emplace(key.code, keys.size());
    keys.push_back(&key);
    signatures.insert(signature(key.root_degree, key.code.num_darts()));
  }

  // Pass 2: vertex law on the same replicates, restricted to root keys.
  // Balls whose degree and size match no root key are never encoded.
  auto verts = chunked_reduce<VertexAccumulator>(
      replicates, workers, 32,
      [&](VertexAccumulator& acc, std::size_t i) {
        const RootedMap m = sample(model, n, seed, i);
        const double v = static_cast<double>(m.num_vertices());
        BallExtractor ex(m);
        for (std::uint32_t u = 0; u < m.num_vertices(); ++u) {
          if (signatures.count(ex.signature_of(u, r))) {
            const auto it = index.find(ex.key_of(u, r).code);
            if (it != index.end()) {
              acc.mass[it->second] += 1.0 / v;
              continue;
            }
          }
          acc.unseen += 1.0 / v;
        }
      },
      [](VertexAccumulator& into, const VertexAccumulator& part) {
        into.unseen += part.unseen;
        for (const auto& [k, x] : part.mass) into.mass[k] += x;
      });

  DistributionReport rep;
  rep.n = n;
  rep.replicates = replicates;
  rep.radius = r;
  const double reps = static_cast<double>(replicates);
  rep.mu_v_hat = roots.mu_v / reps;
  rep.unseen_vertex_mass = verts.unseen / reps;
  rep.total_variation = 0.5 * rep.unseen_vertex_mass;
  rep.vertex_mass = rep.unseen_vertex_mass;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    LawEntry e;
    e.key = *keys[k];
    const std::size_t hits = roots.hits.at(e.key);
    e.root_freq = static_cast<double>(hits) / reps;
    const auto it = verts.mass.find(k);
    e.vertex_freq = it == verts.mass.end() ? 0.0 : it->second / reps;
    const double d = static_cast<double>(e.key.root_degree);
    e.predicted_ratio = 2.0 / (d * rep.mu_v_hat);
    e.predicted_half = 4.0 / d;
    e.ratio = e.vertex_freq / e.root_freq;
    e.ratio_rel_stderr = std::sqrt((1.0 - e.root_freq) / static_cast<double>(hits));
    rep.total_variation += 0.5 * std::abs(e.root_freq - e.vertex_freq);
    rep.root_mass += e.root_freq;
    rep.vertex_mass += e.vertex_freq;
    rep.entries.push_back(std::move(e));
  }
  std::stable_sort(rep.entries.begin(), rep.entries.end(),
                   [](const LawEntry& a, const LawEntry& b) {
                     return a.root_freq > b.root_freq;
                   });
  return rep;
}

namespace {

struct DegreeAccumulator {
  std::vector<std::size_t> root_hits;
  std::vector<double> vertex_mass;
  std::vector<double> res_sum, res_sq;
  double mu_v = 0;

  void grow(std::size_t k) {
    if (root_hits.size() <= k) {
      root_hits.resize(k + 1, 0);
      vertex_mass.resize(k + 1, 0.0);
    }
  }
};

}  // namespace

DegreeReport degree_distributions(std::size_t n, std::size_t replicates,
                                  std::uint64_t seed, std::size_t workers,
                                  std::size_t kmax, Model model) {
  if (n == 0 || replicates == 0)
    throw std::invalid_argument("n and replicates must be positive");
  auto total = chunked_reduce<DegreeAccumulator>(
      replicates, workers, 32,
      [&](DegreeAccumulator& acc, std::size_t i) {
        const RootedMap m = sample(model, n, seed, i);
        const double v = static_cast<double>(m.num_vertices());
        acc.mu_v += v / static_cast<double>(n);
        std::vector<std::size_t> hist;
        for (std::uint32_t u = 0; u < m.num_vertices(); ++u) {
          const std::size_t k = m.vertex_degree(u);
          if (hist.size() <= k) hist.resize(k + 1, 0);
          ++hist[k];
        }
        acc.grow(hist.size() - 1);
        const std::size_t root_k = m.root_degree();
        acc.grow(root_k);
        ++acc.root_hits[root_k];
        for (std::size_t k = 1; k < hist.size(); ++k)
          acc.vertex_mass[k] += static_cast<double>(hist[k]) / v;
        if (acc.res_sum.size() < kmax + 1) {
          acc.res_sum.resize(kmax + 1, 0.0);
          acc.res_sq.resize(kmax + 1, 0.0);
        }
        for (std::size_t k = 1; k <= kmax; ++k) {
          const double pk = k < hist.size() ? static_cast<double>(hist[k]) / v : 0.0;
          const double dk = root_k == k ? 1.0 : 0.0;
          const double res = pk - 4.0 * dk / static_cast<double>(k);
          acc.res_sum[k] += res;
          acc.res_sq[k] += res * res;
        }
      },
      [](DegreeAccumulator& into, const DegreeAccumulator& part) {
        into.mu_v += part.mu_v;
        into.grow(part.root_hits.empty() ? 0 : part.root_hits.size() - 1);
        for (std::size_t k = 0; k < part.root_hits.size(); ++k) {
          into.root_hits[k] += part.root_hits[k];
          into.vertex_mass[k] += part.vertex_mass[k];
        }
        if (into.res_sum.size() < part.res_sum.size()) {
          into.res_sum.resize(part.res_sum.size(), 0.0);
          into.res_sq.resize(part.res_sq.size(), 0.0);
        }
        for (std::size_t k = 0; k < part.res_sum.size(); ++k) {
          into.res_sum[k] += part.res_sum[k];
          into.res_sq[k] += part.res_sq[k];
        }
      });

  DegreeReport rep;
  rep.n = n;
  rep.replicates = replicates;
  const double reps = static_cast<double>(replicates);
  rep.mu_v_hat = total.mu_v / reps;
  for (std::size_t k = 0; k < total.root_hits.size(); ++k) {
    rep.d_hat.push_back(static_cast<double>(total.root_hits[k]) / reps);
    rep.p_hat.push_back(total.vertex_mass[k] / reps);
  }
  rep.residual.assign(kmax + 1, 0.0);
  rep.residual_stderr.assign(kmax + 1, 0.0);
  for (std::size_t k = 1; k <= kmax && k < total.res_sum.size(); ++k) {
    const double mean = total.res_sum[k] / reps;
    rep.residual[k] = mean;
    if (replicates > 1) {
      const double var = (total.res_sq[k] - reps * mean * mean) / (reps - 1);
      rep.residual_stderr[k] = std::sqrt(std::max(0.0, var) / reps);
    }
  }
  return rep;
}

}  // namespace planarmap
