#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "planarmap/rational.hpp"

namespace planarmap {

/// Variables of the catalytic equation: u (root face valency), z (edges),
/// x (vertices).
enum class Var : std::size_t { U = 0, Z = 1, X = 2 };

using Monomial = std::array<std::uint16_t, 3>;  // exponents of u, z, x

class NotExact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Sparse polynomial in u, z, x over the rationals. Terms are kept in
 * lexicographic order of (u, z, x) exponents and zero coefficients are
 * never stored.
 */
class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(const Rational& c);  // NOLINT: constants convert implicitly
  RationalPoly(long c) : RationalPoly(Rational(c)) {}

  static RationalPoly var(Var v, unsigned power = 1);
  static RationalPoly monomial(const Rational& c, Monomial m);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t num_terms() const noexcept { return terms_.size(); }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

  int degree(Var v) const;  // -1 for the zero polynomial
  /// Coefficient of v^k, as a polynomial in the remaining variables.
  RationalPoly coeff(Var v, unsigned k) const;

  RationalPoly derivative(Var v) const;
  /// Substitutes a rational value for one variable.
  RationalPoly substitute(Var v, const Rational& value) const;
  Rational evaluate(const Rational& u, const Rational& z, const Rational& x) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(RationalPoly a) { return a *= Rational(-1); }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.terms_ == b.terms_;
  }

  RationalPoly pow(unsigned e) const;

  /// Exact quotient a / b; throws NotExact when b does not divide a.
  static RationalPoly divide_exact(const RationalPoly& a, const RationalPoly& b);

  /// Largest monomial dividing every term.
  Monomial monomial_content() const;
  /// Divides out monomial and rational content; leading coefficient > 0.
  RationalPoly primitive() const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Polynomial in u with coefficients in Q[z, x]; index = power of u.
using UPoly = std::vector<RationalPoly>;

UPoly to_upoly(const RationalPoly& p);

/// Resultant with respect to u by the subresultant algorithm.
RationalPoly resultant_u(const RationalPoly& a, const RationalPoly& b);

}  // namespace planarmap
