#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

#include "planarmap/rooted_map.hpp"

namespace planarmap {

class MissingWeight : public std::out_of_range {
 public:
  explicit MissingWeight(std::size_t degree)
      : std::out_of_range("no Boltzmann weight for face degree " +
                          std::to_string(degree)),
        degree_(degree) {}
  std::size_t degree() const noexcept { return degree_; }

 private:
  std::size_t degree_;
};

/// Product of q[deg(f)] over the faces of m. T is any multiplicative type
/// (Rational for exact weights, double for real ones).
template <class T>
T boltzmann_weight(const RootedMap& m, const std::map<std::size_t, T>& q) {
  T w(1);
  for (std::uint32_t f = 0; f < m.num_faces(); ++f) {
    auto it = q.find(m.face_degree(f));
    if (it == q.end()) throw MissingWeight(m.face_degree(f));
    w *= it->second;
  }
  return w;
}

}  // namespace planarmap
