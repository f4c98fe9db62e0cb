#include "planarmap/map_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace planarmap {

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::string write_map(const RootedMap& m) {
  std::string out = "planarmap v1 ndarts=" + std::to_string(m.num_darts());
  out += "\nsigma:";
  for (Dart s : m.sigma_table()) {
    out += ' ';
    out += std::to_string(s);
  }
  out += "\nroot: 0";
  return out;
}

namespace {

class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  void expect(std::string_view literal) {
    if (line_.substr(pos_, literal.size()) != literal)
      fail("expected '" + std::string(literal) + "'");
    pos_ += literal.size();
  }

  std::uint64_t number() {
    std::uint64_t value = 0;
    auto* first = line_.data() + pos_;
    auto* last = line_.data() + line_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  bool at_end() const { return pos_ == line_.size(); }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing characters");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_no_, pos_ + 1, msg);
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

RootedMap parse_record(const std::vector<std::string_view>& lines,
                       std::size_t first, std::size_t line_offset) {
  if (lines.size() < first + 3)
    throw ParseError(line_offset + lines.size() - first + 1, 1,
                     "truncated map record");
  LineCursor header(lines[first], line_offset + 1);
  header.expect("planarmap v1 ndarts=");
  const std::uint64_t n = header.number();
  header.expect_end();
  if (n % 2) header.fail("ndarts must be even");

  LineCursor sig(lines[first + 1], line_offset + 2);
  sig.expect("sigma:");
  std::vector<Dart> sigma;
  sigma.reserve(n);
  while (!sig.at_end()) {
    sig.expect(" ");
    const std::uint64_t s = sig.number();
    if (s >= n) sig.fail("dart index out of range");
    sigma.push_back(static_cast<Dart>(s));
  }
  if (sigma.size() != n) sig.fail("expected " + std::to_string(n) + " entries");
  std::vector<char> seen(n, 0);
  for (Dart s : sigma) {
    if (seen[s]) sig.fail("sigma is not a permutation");
    seen[s] = 1;
  }

  LineCursor root(lines[first + 2], line_offset + 3);
  root.expect("root: ");
  if (root.number() != 0) root.fail("root must be 0");
  root.expect_end();

  try {
    return RootedMap::build(std::move(sigma), 0);
  } catch (const MapError& e) {
    throw ParseError(line_offset + 2, 1, e.what());
  }
}

}  // namespace

RootedMap read_map(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  auto lines = split_lines(text);
  if (lines.size() > 3)
    throw ParseError(4, 1, "unexpected content after map record");
  return parse_record(lines, 0, 0);
}

std::vector<RootedMap> read_maps(std::string_view text) {
  auto lines = split_lines(text);
  std::vector<RootedMap> maps;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (lines[i].empty()) {
      ++i;
      continue;
    }
    maps.push_back(parse_record(lines, i, i));
    i += 3;
    if (i < lines.size() && !lines[i].empty())
      throw ParseError(i + 1, 1, "expected a blank separator line");
  }
  return maps;
}

std::string write_maps(const std::vector<RootedMap>& maps) {
  std::string out;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (i) out += '\n';
    out += write_map(maps[i]);
    out += '\n';
  }
  return out;
}

RootedMap read_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_map(buf.str());
}

}  // namespace planarmap
