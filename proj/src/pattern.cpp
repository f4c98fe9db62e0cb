#include "planarmap/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "planarmap/canonical.hpp"
#include "planarmap/parallel.hpp"

namespace planarmap {

PlanePattern make_pattern(const RootedMap& m) {
  if (m.empty()) throw MapError(MapError::Kind::EmptyMap, "pattern needs an edge");
  PlanePattern p;
  p.base = m;
  const std::uint32_t outer = m.outer_face();
  p.face_is_bounded.assign(m.num_faces(), 1);
  p.face_is_bounded[outer] = 0;
  for (std::uint32_t f = 0; f < m.num_faces(); ++f)
    if (f != outer) p.bounded_faces.push_back(f);
  const CanonicalCode root_code = canonical_code(m);
  for (Dart d = 0; d < m.num_darts(); ++d) {
    if (m.face_of(RootedMap::alpha(d)) != outer) continue;
    p.boundary_darts.push_back(d);
    if (canonical_code(m, d) == root_code) ++p.beta;
  }
  return p;
}

NonIntegerCount::NonIntegerCount(std::size_t z, std::size_t beta)
    : std::logic_error("anchored count " + std::to_string(z) +
                       " is not divisible by beta = " + std::to_string(beta)) {}

namespace {

constexpr Dart kNone = std::numeric_limits<Dart>::max();

/**
 * Backtracking matcher for one (host, pattern) pair. Matches are propagated
 * rigidly through alpha and through corners of bounded pattern faces; the
 * only choices are at outer-face corners, where the next pattern dart may
 * land on any later host dart around the same vertex. State is sized by the
 * pattern, so one matcher serves every corner of the host.
 */
class Matcher {
 public:
  Matcher(const RootedMap& host, const PlanePattern& p, FaceScope scope)
      : host_(host), p_(p), base_(p.base), scope_(scope) {
    const std::size_t n = base_.num_darts();
    image_.assign(n, kNone);
    vimage_.assign(base_.num_vertices(), kNone);
    rigid_after_.resize(n);
    in_bounded_.resize(n);
    for (Dart d = 0; d < n; ++d) {
      rigid_after_[d] = p_.face_is_bounded[base_.face_of(base_.sigma(d))];
      in_bounded_[d] = p_.face_is_bounded[base_.face_of(d)];
    }
    host_outer_ = host_.empty() ? kNone : host_.outer_face();
  }

  /// Visits every embedding with root -> c; visitor returns false to stop.
  template <class Visitor>
  void run(Dart c, Visitor&& visit) {
    reset();
    if (host_.empty()) return;
    stop_ = false;
    if (assign(0, c) && propagate()) search(visit);
    reset();
  }

 private:
  void reset() {
    for (Dart d : dart_trail_) image_[d] = kNone;
    for (std::uint32_t v : vertex_trail_) vimage_[v] = kNone;
    dart_trail_.clear();
    vertex_trail_.clear();
    used_hosts_.clear();
    used_host_vertices_.clear();
    queue_.clear();
  }

  void undo_to(std::size_t darts, std::size_t vertices) {
    while (dart_trail_.size() > darts) {
      image_[dart_trail_.back()] = kNone;
      dart_trail_.pop_back();
      used_hosts_.pop_back();
    }
    while (vertex_trail_.size() > vertices) {
      vimage_[vertex_trail_.back()] = kNone;
      vertex_trail_.pop_back();
      used_host_vertices_.pop_back();
    }
    queue_.clear();
  }

  bool assign(Dart pd, Dart hd) {
    if (image_[pd] != kNone) return image_[pd] == hd;
    if (std::find(used_hosts_.begin(), used_hosts_.end(), hd) != used_hosts_.end())
      return false;
    if (in_bounded_[pd] && scope_ == FaceScope::Inner &&
        host_.face_of(hd) == host_outer_)
      return false;
    const std::uint32_t pv = base_.vertex_of(pd);
    const std::uint32_t hv = host_.vertex_of(hd);
    if (vimage_[pv] == kNone) {
      if (std::find(used_host_vertices_.begin(), used_host_vertices_.end(), hv) !=
          used_host_vertices_.end())
        return false;
      vimage_[pv] = hv;
      vertex_trail_.push_back(pv);
      used_host_vertices_.push_back(hv);
    } else if (vimage_[pv] != hv) {
      return false;
    }
    image_[pd] = hd;
    dart_trail_.push_back(pd);
    used_hosts_.push_back(hd);
    queue_.push_back(pd);
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const Dart pd = queue_.back();
      queue_.pop_back();
      const Dart hd = image_[pd];
      if (!assign(RootedMap::alpha(pd), RootedMap::alpha(hd))) return false;
      if (rigid_after_[pd] && !assign(base_.sigma(pd), host_.sigma(hd)))
        return false;
      const Dart prev = base_.sigma_inv(pd);
      if (rigid_after_[prev] && !assign(prev, host_.sigma_inv(hd))) return false;
    }
    return true;
  }

  // Images around each pattern vertex must appear in the same cyclic order.
  bool cyclic_orders_hold() const {
    for (std::uint32_t v = 0; v < base_.num_vertices(); ++v) {
      const Dart first = base_.dart_of_vertex(v);
      if (base_.vertex_degree(v) == 1) continue;
      Dart expect = base_.sigma(first);
      const Dart start = image_[first];
      for (Dart h = host_.sigma(start); h != start; h = host_.sigma(h)) {
        if (h == image_[expect]) {
          expect = base_.sigma(expect);
          if (expect == first) break;
          continue;
        }
        // Any other image of a dart at v met here is out of order.
        for (Dart d = base_.sigma(first); d != first; d = base_.sigma(d))
          if (image_[d] == h) return false;
      }
      if (expect != first) return false;
    }
    return true;
  }

  template <class Visitor>
  void search(Visitor& visit) {
    if (stop_) return;
    if (dart_trail_.size() == base_.num_darts()) {
      if (cyclic_orders_hold() && !visit(image_)) stop_ = true;
      return;
    }
    // An unmatched dart right after a matched one sits behind an outer
    // corner (bounded corners were forced by propagation).
    Dart pick = kNone;
    for (Dart d = 0; d < base_.num_darts() && pick == kNone; ++d)
      if (image_[d] == kNone && image_[base_.sigma_inv(d)] != kNone) pick = d;
    if (pick == kNone) return;

    const Dart anchor = image_[base_.sigma_inv(pick)];
    Dart bound_pd = base_.sigma(pick);
    while (image_[bound_pd] == kNone) bound_pd = base_.sigma(bound_pd);
    const Dart bound = image_[bound_pd];

    const std::size_t darts = dart_trail_.size();
    const std::size_t vertices = vertex_trail_.size();
    for (Dart h = host_.sigma(anchor); h != bound && h != anchor;
         h = host_.sigma(h)) {
      if (assign(pick, h) && propagate()) search(visit);
      undo_to(darts, vertices);
      if (stop_) return;
    }
  }

  const RootedMap& host_;
  const PlanePattern& p_;
  const RootedMap& base_;
  FaceScope scope_;
  std::uint32_t host_outer_;
  std::vector<Dart> image_;
  std::vector<std::uint32_t> vimage_;
  std::vector<char> rigid_after_;
  std::vector<char> in_bounded_;
  std::vector<Dart> dart_trail_;
  std::vector<std::uint32_t> vertex_trail_;
  std::vector<Dart> used_hosts_;
  std::vector<std::uint32_t> used_host_vertices_;
  std::vector<Dart> queue_;
  bool stop_ = false;
};

}  // namespace

std::optional<Embedding> occurs_at(const RootedMap& host, Dart c,
                                   const PlanePattern& p, FaceScope scope) {
  if (c >= host.num_darts()) throw std::out_of_range("corner out of range");
  Matcher matcher(host, p, scope);
  std::optional<Embedding> found;
  matcher.run(c, [&](const std::vector<Dart>& image) {
    found = Embedding{image};
    return false;
  });
  return found;
}

std::size_t count_embeddings_at(const RootedMap& host, Dart c,
                                const PlanePattern& p, FaceScope scope) {
  if (c >= host.num_darts()) throw std::out_of_range("corner out of range");
  Matcher matcher(host, p, scope);
  std::size_t count = 0;
  matcher.run(c, [&](const std::vector<Dart>&) {
    ++count;
    return true;
  });
  return count;
}

std::size_t anchored_count(const RootedMap& host, const PlanePattern& p,
                           FaceScope scope) {
  Matcher matcher(host, p, scope);
  std::size_t count = 0;
  for (Dart c = 0; c < host.num_darts(); ++c)
    matcher.run(c, [&](const std::vector<Dart>&) {
      ++count;
      return true;
    });
  return count;
}

std::size_t occurrence_corners(const RootedMap& host, const PlanePattern& p,
                               FaceScope scope) {
  Matcher matcher(host, p, scope);
  std::size_t count = 0;
  for (Dart c = 0; c < host.num_darts(); ++c)
    matcher.run(c, [&](const std::vector<Dart>&) {
      ++count;
      return false;
    });
  return count;
}

std::size_t pattern_count(const RootedMap& host, const PlanePattern& p,
                          FaceScope scope) {
  const std::size_t z = anchored_count(host, p, scope);
  if (p.beta == 0 || z % p.beta) throw NonIntegerCount(z, p.beta);
  return z / p.beta;
}

GammaEstimate estimate_gamma(const PlanePattern& p, std::size_t n,
                             std::size_t replicates, std::uint64_t seed,
                             std::size_t workers, Model model) {
  if (n == 0 || replicates == 0)
    throw std::invalid_argument("n and replicates must be positive");
  GammaEstimate est;
  est.n = n;
  est.beta = p.beta;
  est.rows.resize(replicates);
  parallel_for(replicates, workers, [&](std::size_t i) {
    const RootedMap host = sample(model, n, seed, i);
    PatternReplicate& row = est.rows[i];
    row.replicate = i;
    row.z = anchored_count(host, p);
    if (row.z % p.beta) throw NonIntegerCount(row.z, p.beta);
    row.s = row.z / p.beta;
    row.vertices = host.num_vertices();
    row.edges = host.num_edges();
  });

  unsigned long sum_s = 0, sum_z = 0;
  double mean = 0, m2 = 0;
  for (std::size_t i = 0; i < replicates; ++i) {
    const auto& row = est.rows[i];
    sum_s += row.s;
    sum_z += row.z;
    const double x = static_cast<double>(row.s) / static_cast<double>(n);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  const Rational scale(static_cast<unsigned long>(n * replicates));
  est.gamma_exact = Rational(sum_s) / scale;
  est.q_exact = Rational(sum_z) / (2 * scale);
  est.identity_holds =
      est.gamma_exact == 2 * est.q_exact / Rational(static_cast<unsigned long>(p.beta));
  est.gamma_hat = est.gamma_exact.get_d();
  est.q_hat = est.q_exact.get_d();
  est.stderr_gamma =
      replicates > 1 ? std::sqrt(m2 / static_cast<double>(replicates - 1) /
                                 static_cast<double>(replicates))
                     : 0.0;
  return est;
}

}  // namespace planarmap
