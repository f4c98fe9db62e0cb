#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "planarmap/poly.hpp"
#include "planarmap/rational.hpp"

namespace planarmap {

/**
 * Truncated power series in z whose coefficients are polynomials in u and
 * x. A series of order N knows the coefficients of z^0 .. z^(N-1); binary
 * operations return the smaller order and never extend it.
 */
class RationalSeries {
 public:
  RationalSeries() = default;
  explicit RationalSeries(std::size_t order) : coeff_(order) {}
  /// Expands a polynomial in (u, z, x) by powers of z, truncated to `order`.
  static RationalSeries from_poly(const RationalPoly& p, std::size_t order);

  std::size_t order() const noexcept { return coeff_.size(); }
  const RationalPoly& operator[](std::size_t k) const { return coeff_.at(k); }
  RationalPoly& operator[](std::size_t k) { return coeff_.at(k); }

  RationalSeries truncated(std::size_t order) const;
  RationalSeries substitute(Var v, const Rational& value) const;
  bool is_zero() const;
  /// Number of leading zero coefficients (the valuation, capped by order).
  std::size_t valuation() const;
  /// Drops k leading coefficients, which must be zero (division by z^k).
  RationalSeries shifted_down(std::size_t k) const;
  /// Multiplicative inverse; the constant coefficient must be a nonzero
  /// rational.
  RationalSeries inverse() const;

  RationalSeries& operator+=(const RationalSeries& o);
  RationalSeries& operator-=(const RationalSeries& o);
  RationalSeries& operator*=(const RationalPoly& c);
  friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
  friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
  friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
  friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

 private:
  std::vector<RationalPoly> coeff_;
};

/// P(u(z), z_sub(z), x) for a polynomial P; z_sub is the series put in for
/// z and must have zero constant term unless P has no z.
RationalSeries compose(const RationalPoly& p, const RationalSeries& u,
                       const RationalSeries& z_sub);

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The quartic P(u, z, x) = 0 defining u(z, x).
RationalPoly quartic();
/// Numerator and denominator of the closed form of M(z, x, 1) in u, z, x.
RationalPoly closed_form_numerator();
RationalPoly closed_form_denominator();
/// A commonly quoted ρ-polynomial. It does not vanish at (z, x) = (1/12, 1);
/// kept only for the regression check of that fact.
RationalPoly quoted_rho_polynomial();

struct MSeries {
  RationalSeries full;    // M(z, x, u)
  RationalSeries at_one;  // M(z, x, 1)
};

/// Coefficients z^0 .. z^n of M from the catalytic equation. Each step
/// divides by (1 - u), which must be exact (SeriesError otherwise).
MSeries solve_M_series(std::size_t n);

/// u(z, x) = 1 + a_1 z + ... to z^n on the branch with the given a_1 = ±1.
RationalSeries u_series_branch(std::size_t n, int a1);

/// Closed form of M(z, x, 1) expanded to z^n from a u-series that knows at
/// least z^(n+3). Throws SeriesError if the numerator does not vanish to
/// order z^3 (an inconsistent branch).
RationalSeries closed_form_series(const RationalSeries& u, std::size_t n);

/// The branch of u whose closed form agrees with the catalytic equation to
/// z^n. Throws SeriesError if neither branch does.
struct UBranch {
  int a1 = 0;
  RationalSeries u;
};
UBranch solve_u_series(std::size_t n);

struct ClosedFormReport {
  std::size_t order = 0;  // coefficients z^0 .. z^order compared
  int branch = 0;
  bool series_match = false;        // closed form == catalytic solution, all x
  bool quartic_vanishes = false;    // P(u(z,x), z, x) == 0 to order
  std::string first_mismatch;       // empty when everything matches
  Rational numerator_at_branch;     // closed form pieces at (6/5, 1/12, 1)
  Rational denominator_at_branch;
  Rational value_at_branch;
  bool pass() const noexcept { return series_match && quartic_vanishes; }
};
ClosedFormReport check_closed_form_M(std::size_t n = 12);

struct BranchPointReport {
  Rational u0, rho, x;
  Rational p, p_u, p_z, p_uu;
  Rational u1_squared;
  Rational u1;  // negative square root
  bool pass = false;
};
BranchPointReport verify_branch_point();

struct RhoPolynomial {
  RationalPoly resultant;   // res_u(P, dP/du)
  RationalPoly discarded;   // leading coefficient of P in u, times z-powers and content
  RationalPoly d;           // primitive factor vanishing at (1/12, 1)
  Rational value_at_point;  // D(1/12, 1)
  Rational rho, rho_prime, rho_second;
};
RhoPolynomial derive_rho_poly();

struct CltConstants {
  Rational rho, rho_prime, rho_second;
  Rational mu, sigma2;
  std::vector<Rational> mean_vertices;      // index n: E[v(m_n)] from the series
  std::vector<Rational> variance_vertices;  // index n: Var[v(m_n)]
};
CltConstants clt_constants(std::size_t n = 12);

struct PuiseuxReport {
  std::vector<Rational> u;  // u = sum u_k t^k, t = sqrt(1 - z / rho), x = 1
  std::vector<Rational> b;  // M(z, 1, 1) = sum b_k t^k
};
PuiseuxReport puiseux_at_one(std::size_t terms = 5);

}  // namespace planarmap
