#include "planarmap/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace planarmap {

std::map<std::size_t, std::size_t> EnumerationTable::vertex_census() const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& [key, count] : census) out[key.vertices] += count;
  return out;
}

std::string EnumerationTable::census_csv(bool header) const {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> rows;
  for (const auto& [key, count] : census)
    rows[{key.vertices, key.root_degree}] += count;
  std::ostringstream out;
  if (header) out << "n,vertices,root_degree,count\n";
  for (const auto& [vk, count] : rows)
    out << n << ',' << vk.first << ',' << vk.second << ',' << count << '\n';
  return out.str();
}

EnumerationTable enumerate_rooted_maps(std::size_t n) {
  if (n < 1 || n > kMaxEnumerationEdges)
    throw std::out_of_range("enumeration supports 1 <= n <= " +
                            std::to_string(kMaxEnumerationEdges));
  const std::size_t darts = 2 * n;
  std::vector<Dart> sigma(darts);
  std::iota(sigma.begin(), sigma.end(), Dart{0});

  std::unordered_set<CanonicalCode, CanonicalCodeHash> seen;
  std::vector<std::vector<Dart>> representatives;
  do {
    if (!is_planar_connected(sigma)) continue;
    RootedMap m = RootedMap::build(sigma, 0);
    if (seen.insert(canonical_code(m)).second) representatives.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  EnumerationTable table;
  table.n = n;
  std::vector<std::pair<CanonicalCode, RootedMap>> entries;
  entries.reserve(representatives.size());
  for (auto& s : representatives) {
    RootedMap m = RootedMap::build(std::move(s), 0);
    entries.emplace_back(canonical_code(m), std::move(m));
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [code, m] : entries) {
    CensusKey key{m.num_vertices(), m.root_degree(), face_degree_census(m)};
    ++table.census[key];
    table.codes.push_back(std::move(code));
    table.maps.push_back(std::move(m));
  }
  return table;
}

Moments exact_vertex_moments(const EnumerationTable& table) {
  Moments out;
  if (table.maps.empty()) return out;
  Rational sum = 0, sum_sq = 0;
  for (const auto& m : table.maps) {
    const Rational v(static_cast<unsigned long>(m.num_vertices()));
    sum += v;
    sum_sq += v * v;
  }
  const Rational count(static_cast<unsigned long>(table.maps.size()));
  out.mean = sum / count;
  out.variance = sum_sq / count - out.mean * out.mean;
  return out;
}

RerootReport verify_reroot_invariance(const EnumerationTable& table) {
  RerootReport report;
  report.expected_multiplicity = 2 * table.n;
  std::unordered_map<CanonicalCode, std::size_t, CanonicalCodeHash> counts;
  for (const auto& m : table.maps) {
    for (Dart d = 0; d < m.num_darts(); ++d) {
      ++counts[canonical_code(reroot(m, d))];
      ++report.rerootings;
    }
  }
  report.passed = counts.size() == table.codes.size();
  for (const auto& code : table.codes) {
    auto it = counts.find(code);
    const std::size_t c = it == counts.end() ? 0 : it->second;
    if (c != report.expected_multiplicity) {
      report.passed = false;
      report.counterexample = code;
      report.counterexample_multiplicity = c;
      break;
    }
  }
  return report;
}

std::vector<UnrootedOrbit> group_by_unrooted(const EnumerationTable& table) {
  std::unordered_map<CanonicalCode, std::size_t, CanonicalCodeHash> index;
  for (std::size_t i = 0; i < table.codes.size(); ++i) index[table.codes[i]] = i;

  std::vector<char> assigned(table.maps.size(), 0);
  std::vector<UnrootedOrbit> orbits;
  for (std::size_t i = 0; i < table.maps.size(); ++i) {
    if (assigned[i]) continue;
    const RootedMap& m = table.maps[i];
    std::set<std::size_t> members;
    for (Dart d = 0; d < m.num_darts(); ++d) {
      auto it = index.find(canonical_code(m, d));
      if (it == index.end())
        throw std::logic_error("rerooted map missing from the enumeration");
      members.insert(it->second);
    }
    UnrootedOrbit orbit;
    orbit.members.assign(members.begin(), members.end());
    orbit.automorphism_order = m.num_darts() / orbit.members.size();
    for (std::size_t j : orbit.members) assigned[j] = 1;
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace planarmap
