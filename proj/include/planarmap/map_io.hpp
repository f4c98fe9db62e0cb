#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planarmap/rooted_map.hpp"

namespace planarmap {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Three-line text form:
///   planarmap v1 ndarts=<2e>
///   sigma: s0 s1 ... s_{2e-1}
///   root: 0
/// without a trailing newline.
std::string write_map(const RootedMap& m);

/// Parses one map; a single trailing LF is accepted.
RootedMap read_map(std::string_view text);

/// Maps separated by blank lines, as written by write_maps.
std::vector<RootedMap> read_maps(std::string_view text);
std::string write_maps(const std::vector<RootedMap>& maps);

RootedMap read_map_file(const std::string& path);

}  // namespace planarmap
