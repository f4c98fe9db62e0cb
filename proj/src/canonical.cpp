#include "planarmap/canonical.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace planarmap {

std::string CanonicalCode::to_string() const {
  if (pairs.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < pairs.size(); i += 2) {
    if (i) out += ',';
    out += std::to_string(pairs[i]);
    out += ':';
    out += std::to_string(pairs[i + 1]);
  }
  return out;
}

std::size_t CanonicalCodeHash::operator()(const CanonicalCode& c) const noexcept {
  // FNV-1a over the label words.
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t v : c.pairs) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 32));
}

CanonicalCode canonical_code(const RootedMap& m, Dart start) {
  CanonicalCode code;
  const std::size_t n = m.num_darts();
  if (n == 0) return code;
  if (start >= n) throw std::out_of_range("start dart out of range");

  constexpr std::uint32_t kUnlabelled = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(n, kUnlabelled);
  std::vector<Dart> order;
  order.reserve(n);
  label[start] = 0;
  order.push_back(start);
  code.pairs.reserve(2 * n);

  auto label_of = [&](Dart d) {
    if (label[d] == kUnlabelled) {
      label[d] = static_cast<std::uint32_t>(order.size());
      order.push_back(d);
    }
    return label[d];
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Dart d = order[i];
    const std::uint32_t s = label_of(m.sigma(d));
    const std::uint32_t a = label_of(RootedMap::alpha(d));
    code.pairs.push_back(s);
    code.pairs.push_back(a);
  }
  return code;
}

CanonicalCode vertex_code(const RootedMap& m, std::uint32_t v) {
  if (m.empty()) return {};
  if (v >= m.num_vertices()) throw std::out_of_range("vertex out of range");
  return min_vertex_code(m.sigma_table(), m.dart_of_vertex(v));
}

CanonicalCode min_vertex_code(std::span<const Dart> sigma, Dart start) {
  CanonicalCode best;
  const std::size_t n = sigma.size();
  if (n == 0) return best;
  if (start >= n) throw std::out_of_range("start dart out of range");

  constexpr std::uint32_t kUnlabelled = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(n, kUnlabelled);
  std::vector<Dart> order;
  std::vector<std::uint32_t> current;
  order.reserve(n);
  current.reserve(2 * n);
  Dart s = start;
  do {
    for (Dart d : order) label[d] = kUnlabelled;
    order.assign(1, s);
    label[s] = 0;
    current.clear();
    bool below = best.pairs.empty();
    bool above = false;
    for (std::size_t i = 0; i < order.size() && !above; ++i) {
      const Dart d = order[i];
      for (const Dart next : {sigma[d], Dart(d ^ 1u)}) {
        if (label[next] == kUnlabelled) {
          label[next] = static_cast<std::uint32_t>(order.size());
          order.push_back(next);
        }
        const std::uint32_t l = label[next];
        if (!below) {
          const std::uint32_t b = best.pairs[current.size()];
          if (l > b) {
            above = true;
            break;
          }
          below = l < b;
        }
        current.push_back(l);
      }
    }
    if (!above && below) best.pairs = current;
    s = sigma[s];
  } while (s != start);
  return best;
}

RootedMap decode(const CanonicalCode& code) {
  const std::size_t n = code.num_darts();
  if (n == 0) return RootedMap();
  std::vector<Dart> sigma(n), alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = code.pairs[2 * i];
    alpha[i] = code.pairs[2 * i + 1];
    if (sigma[i] >= n || alpha[i] >= n)
      throw MapError(MapError::Kind::BadPermutation, "corrupt canonical code");
  }
  return RootedMap::from_permutations(sigma, alpha, 0);
}

RootSymmetry root_symmetries(const RootedMap& m) {
  RootSymmetry sym;
  if (m.empty()) return sym;
  const CanonicalCode root_code = canonical_code(m);
  std::set<CanonicalCode> distinct;
  Dart d = RootedMap::root();
  do {
    CanonicalCode c = canonical_code(m, d);
    if (c == root_code) ++sym.kappa;
    distinct.insert(std::move(c));
    d = m.sigma(d);
  } while (d != RootedMap::root());
  sym.alpha_orbits = distinct.size();
  return sym;
}

VertexRootedMap::VertexRootedMap(const RootedMap& m) {
  if (m.empty()) return;
  const std::uint32_t v = m.root_vertex();
  Dart best_dart = m.dart_of_vertex(v);
  code_ = canonical_code(m, best_dart);
  for (Dart d = m.sigma(best_dart); d != m.dart_of_vertex(v); d = m.sigma(d)) {
    CanonicalCode c = canonical_code(m, d);
    if (c < code_) {
      code_ = std::move(c);
      best_dart = d;
    }
  }
  rep_ = reroot(m, best_dart);
}

}  // namespace planarmap
