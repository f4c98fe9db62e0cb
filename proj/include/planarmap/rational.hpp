#pragma once

#include <gmpxx.h>

#include <string>

namespace planarmap {

/// Arbitrary-precision rational in canonical reduced form.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Accepts "p", "p/q" and "-p/q".
inline Rational parse_rational(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

}  // namespace planarmap
