#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library beyond reading a map's sigma table.

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "planarmap/poly.hpp"
#include "planarmap/rational.hpp"
#include "planarmap/rooted_map.hpp"

namespace oracle {

using planarmap::Dart;
using planarmap::Rational;
using planarmap::RootedMap;

inline std::vector<Dart> sigma_of(const RootedMap& m) {
  return {m.sigma_table().begin(), m.sigma_table().end()};
}

// Orbits of a permutation given as a table.
inline std::vector<std::vector<Dart>> orbits(const std::vector<Dart>& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::vector<std::vector<Dart>> out;
  for (Dart d = 0; d < perm.size(); ++d) {
    if (seen[d]) continue;
    std::vector<Dart> orbit;
    for (Dart x = d; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      orbit.push_back(x);
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

inline std::vector<Dart> phi_table(const std::vector<Dart>& sigma) {
  std::vector<Dart> phi(sigma.size());
  for (Dart d = 0; d < sigma.size(); ++d) phi[d] = sigma[d ^ 1u];
  return phi;
}

inline std::vector<std::uint32_t> vertex_ids(const std::vector<Dart>& sigma) {
  std::vector<std::uint32_t> id(sigma.size());
  std::uint32_t k = 0;
  for (const auto& o : orbits(sigma)) {
    for (Dart d : o) id[d] = k;
    ++k;
  }
  return id;
}

// Bounded faces (all but the orbit of dart 1) of degree d with d distinct
// vertices on the boundary.
inline std::size_t simple_cycle_faces(const RootedMap& m, std::size_t d) {
  const auto sigma = sigma_of(m);
  const auto vid = vertex_ids(sigma);
  std::size_t count = 0;
  for (const auto& f : orbits(phi_table(sigma))) {
    if (std::find(f.begin(), f.end(), Dart{1}) != f.end()) continue;
    if (f.size() != d) continue;
    std::set<std::uint32_t> vs;
    for (Dart x : f) vs.insert(vid[x]);
    if (vs.size() == d) ++count;
  }
  return count;
}

// Breadth-first distances over vertex ids.
inline std::vector<int> bfs(const std::vector<Dart>& sigma, std::uint32_t source) {
  const auto vid = vertex_ids(sigma);
  const std::uint32_t nv = vid.empty() ? 1 : *std::max_element(vid.begin(), vid.end()) + 1;
  std::vector<std::vector<std::uint32_t>> adj(nv);
  for (Dart d = 0; d < sigma.size(); ++d) adj[vid[d]].push_back(vid[d ^ 1u]);
  std::vector<int> dist(nv, -1);
  std::queue<std::uint32_t> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    for (auto w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

// 2 * 3^n * (2n)! / (n! (n+2)!), computed in 64-bit arithmetic.
inline std::uint64_t tutte_count(unsigned n) {
  Rational r = 2;
  for (unsigned i = 0; i < n; ++i) r *= 3;
  for (unsigned i = n + 1; i <= 2 * n; ++i) r *= i;
  for (unsigned i = 1; i <= n + 2; ++i) r /= i;
  return r.get_num().get_ui();
}

// Determinant by fraction-full Gaussian elimination.
inline Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Sylvester resultant of two univariate polynomials (index = power).
inline Rational sylvester_resultant(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1;
  std::vector<std::vector<Rational>> s(m + n, std::vector<Rational>(m + n, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  return determinant(std::move(s));
}

// Coefficients in u of p with z and x fixed.
inline std::vector<Rational> univariate_at(const planarmap::RationalPoly& p, const Rational& z,
                                           const Rational& x) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(0, p.degree(planarmap::Var::U))) + 1, 0);
  for (const auto& [mono, coef] : p.terms()) {
    Rational t = coef;
    for (unsigned i = 0; i < mono[1]; ++i) t *= z;
    for (unsigned i = 0; i < mono[2]; ++i) t *= x;
    c[mono[0]] += t;
  }
  return c;
}

}  // namespace oracle
