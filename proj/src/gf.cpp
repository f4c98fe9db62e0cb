#include "planarmap/gf.hpp"

#include <algorithm>

namespace planarmap {

namespace {

RationalPoly term(long c, unsigned u, unsigned z, unsigned x) {
  return RationalPoly::monomial(Rational(c), {static_cast<std::uint16_t>(u),
                                              static_cast<std::uint16_t>(z),
                                              static_cast<std::uint16_t>(x)});
}

const RationalPoly kU = RationalPoly::var(Var::U);
const RationalPoly kZ = RationalPoly::var(Var::Z);
const RationalPoly kX = RationalPoly::var(Var::X);

// The series z itself, to the given order.
RationalSeries z_series(std::size_t order) {
  RationalSeries z(order);
  if (order > 1) z[1] = RationalPoly(Rational(1));
  return z;
}

// Sets u[k] so that the coefficient of index k+1 of P(u, z_sub) vanishes;
// u[k] enters that coefficient linearly once u[1] != 0 is fixed.
void solve_linear_step(const RationalPoly& p, RationalSeries& u,
                       const RationalSeries& z_sub, std::size_t k) {
  RationalSeries probe(k + 2);
  for (std::size_t j = 0; j < k; ++j) probe[j] = u[j];
  const RationalSeries zs = z_sub.truncated(k + 2);
  const RationalPoly r0 = compose(p, probe, zs)[k + 1];
  probe[k] = RationalPoly(Rational(1));
  const RationalPoly r1 = compose(p, probe, zs)[k + 1];
  const RationalPoly slope = r1 - r0;
  if (slope.is_zero()) throw SeriesError("coefficient is not determined linearly");
  try {
    u[k] = RationalPoly::divide_exact(-r0, slope);
  } catch (const NotExact&) {
    throw SeriesError("coefficient is not polynomial in x");
  }
}

std::string describe_mismatch(const RationalSeries& a, const RationalSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  for (std::size_t k = 0; k < n; ++k)
    if (!(a[k] == b[k]))
      return "z^" + std::to_string(k) + ": " + a[k].to_string() + " vs " + b[k].to_string();
  return {};
}

// Exact square root of a nonnegative rational square.
bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  const mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return false;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  root = Rational(a, b);
  root.canonicalize();
  return true;
}

}  // namespace

RationalSeries RationalSeries::from_poly(const RationalPoly& p, std::size_t order) {
  RationalSeries s(order);
  for (const auto& [m, c] : p.terms()) {
    if (m[1] >= order) continue;
    s[m[1]] += RationalPoly::monomial(c, {m[0], 0, m[2]});
  }
  return s;
}

RationalSeries RationalSeries::truncated(std::size_t order) const {
  if (order > coeff_.size()) throw SeriesError("cannot extend a truncated series");
  RationalSeries s;
  s.coeff_.assign(coeff_.begin(), coeff_.begin() + static_cast<long>(order));
  return s;
}

RationalSeries RationalSeries::substitute(Var v, const Rational& value) const {
  if (v == Var::Z) throw std::invalid_argument("substitute z by evaluating the series");
  RationalSeries s(order());
  for (std::size_t k = 0; k < order(); ++k) s[k] = coeff_[k].substitute(v, value);
  return s;
}

bool RationalSeries::is_zero() const {
  return std::all_of(coeff_.begin(), coeff_.end(), [](const auto& c) { return c.is_zero(); });
}

std::size_t RationalSeries::valuation() const {
  std::size_t k = 0;
  while (k < coeff_.size() && coeff_[k].is_zero()) ++k;
  return k;
}

RationalSeries RationalSeries::shifted_down(std::size_t k) const {
  if (valuation() < k) throw SeriesError("series is not divisible by z^" + std::to_string(k));
  RationalSeries s;
  s.coeff_.assign(coeff_.begin() + static_cast<long>(k), coeff_.end());
  return s;
}

RationalSeries RationalSeries::inverse() const {
  if (coeff_.empty()) return {};
  if (!coeff_[0].is_constant() || coeff_[0].is_zero())
    throw SeriesError("constant coefficient is not a unit");
  const Rational c0 = coeff_[0].constant_term();
  RationalSeries inv(order());
  inv[0] = RationalPoly(1 / c0);
  for (std::size_t k = 1; k < order(); ++k) {
    RationalPoly acc;
    for (std::size_t j = 1; j <= k; ++j) acc += coeff_[j] * inv[k - j];
    acc *= Rational(-1 / c0);
    inv[k] = std::move(acc);
  }
  return inv;
}

RationalSeries& RationalSeries::operator+=(const RationalSeries& o) {
  coeff_.resize(std::min(order(), o.order()));
  for (std::size_t k = 0; k < order(); ++k) coeff_[k] += o.coeff_[k];
  return *this;
}

RationalSeries& RationalSeries::operator-=(const RationalSeries& o) {
  coeff_.resize(std::min(order(), o.order()));
  for (std::size_t k = 0; k < order(); ++k) coeff_[k] -= o.coeff_[k];
  return *this;
}

RationalSeries& RationalSeries::operator*=(const RationalPoly& c) {
  for (auto& x : coeff_) x *= c;
  return *this;
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  RationalSeries s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeff_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (!b.coeff_[j].is_zero()) s.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
  }
  return s;
}

RationalSeries compose(const RationalPoly& p, const RationalSeries& u,
                       const RationalSeries& z_sub) {
  const std::size_t order = std::min(u.order(), z_sub.order());
  const RationalSeries us = u.truncated(order), zs = z_sub.truncated(order);
  const int zdeg = std::max(0, p.degree(Var::Z));
  std::vector<RationalSeries> zpow{RationalSeries::from_poly(RationalPoly(Rational(1)), order)};
  for (int j = 1; j <= zdeg; ++j) zpow.push_back(zpow.back() * zs);

  // Horner in u; each u-coefficient is a polynomial in z and x.
  RationalSeries acc(order);
  for (int i = p.degree(Var::U); i >= 0; --i) {
    const RationalPoly ci = p.coeff(Var::U, static_cast<unsigned>(i));
    RationalSeries cs(order);
    for (int j = 0; j <= zdeg; ++j) {
      const RationalPoly cij = ci.coeff(Var::Z, static_cast<unsigned>(j));
      if (cij.is_zero()) continue;
      RationalSeries t = zpow[static_cast<std::size_t>(j)];
      t *= cij;
      cs += t;
    }
    acc = acc * us + cs;
  }
  return acc;
}

RationalPoly quartic() {
  return term(4, 4, 1, 1) + term(1, 4, 2, 0) + term(-2, 4, 1, 0) + term(-8, 3, 1, 1) +
         term(4, 3, 1, 0) + term(4, 2, 1, 1) + term(2, 3, 0, 0) + term(-2, 2, 1, 0) +
         term(-7, 2, 0, 0) + term(8, 1, 0, 0) + term(-3, 0, 0, 0);
}

RationalPoly closed_form_numerator() {
  const RationalPoly one(Rational(1));
  return one - (4 * kX * kZ - kZ * kZ) * kU.pow(4) - (-8 * kX + 2) * kZ * kU.pow(3) -
         (RationalPoly(Rational(-1)) + (4 * kX - 2) * kZ) * kU.pow(2) - 2 * kU;
}

RationalPoly closed_form_denominator() {
  return 4 * (RationalPoly(Rational(1)) - kU) * kU.pow(3) * kZ.pow(2);
}

RationalPoly quoted_rho_polynomial() {
  return term(3072, 0, 4, 3) + term(-4608, 0, 4, 2) + term(-1536, 0, 3, 2) +
         term(4608, 0, 4, 1) + term(1536, 0, 3, 1) + term(-1536, 0, 4, 0) +
         term(192, 0, 2, 1) + term(768, 0, 3, 0) + term(-96, 0, 2, 0);
}

MSeries solve_M_series(std::size_t n) {
  const RationalPoly one(Rational(1));
  const RationalPoly one_minus_u = one - kU;
  const RationalPoly u2 = kU * kU;
  RationalSeries m(n + 1);
  std::vector<RationalPoly> q;  // q[j] = [z^j] (M(z,x,1) - u M(z,x,u)) / (1 - u)
  m[0] = kX;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t j = k - 1;
    const RationalPoly numer = m[j].substitute(Var::U, Rational(1)) - kU * m[j];
    try {
      q.push_back(RationalPoly::divide_exact(numer, one_minus_u));
    } catch (const NotExact&) {
      throw SeriesError("(1 - u) division is not exact at z^" + std::to_string(j));
    }
    RationalPoly square;
    for (std::size_t i = 0; i <= j; ++i) square += m[i] * m[j - i];
    m[k] = u2 * square + kU * q[j];
  }
  MSeries out;
  out.at_one = m.substitute(Var::U, Rational(1));
  out.full = std::move(m);
  return out;
}

RationalSeries u_series_branch(std::size_t n, int a1) {
  if (n < 1) throw std::invalid_argument("u-series needs n >= 1");
  if (a1 != 1 && a1 != -1) throw std::invalid_argument("a1 must be +1 or -1");
  const RationalPoly p = quartic();
  RationalSeries u(n + 1);
  u[0] = RationalPoly(Rational(1));
  u[1] = RationalPoly(Rational(a1));
  // u = 1 is a double root at z = 0, so a1 solves the quadratic at z^2.
  RationalSeries start(3);
  start[0] = u[0];
  start[1] = u[1];
  if (!compose(p, start, z_series(3)).is_zero())
    throw SeriesError("a1 does not solve the order-z^2 equation");
  const RationalSeries z = z_series(n + 2);
  for (std::size_t k = 2; k <= n; ++k) solve_linear_step(p, u, z, k);
  return u;
}

RationalSeries closed_form_series(const RationalSeries& u, std::size_t n) {
  if (u.order() < n + 4) throw std::invalid_argument("u-series too short");
  const RationalSeries us = u.truncated(n + 4);
  const RationalSeries z = z_series(n + 4);
  const RationalSeries num = compose(closed_form_numerator(), us, z);
  const RationalSeries den = compose(closed_form_denominator(), us, z);
  if (num.valuation() < 3)
    throw SeriesError("closed-form numerator does not vanish to order z^3");
  return num.shifted_down(3) * den.shifted_down(3).inverse();
}

UBranch solve_u_series(std::size_t n) {
  const MSeries m = solve_M_series(n);
  for (int a1 : {1, -1}) {
    try {
      RationalSeries u = u_series_branch(n + 3, a1);
      if (closed_form_series(u, n) == m.at_one) return {a1, std::move(u)};
    } catch (const SeriesError&) {
    }
  }
  throw SeriesError("no branch of u(z, x) reproduces the catalytic solution");
}

ClosedFormReport check_closed_form_M(std::size_t n) {
  ClosedFormReport rep;
  rep.order = n;
  const MSeries m = solve_M_series(n);
  for (int a1 : {1, -1}) {
    RationalSeries u;
    RationalSeries cf;
    try {
      u = u_series_branch(n + 3, a1);
      cf = closed_form_series(u, n);
    } catch (const SeriesError& e) {
      if (rep.first_mismatch.empty())
        rep.first_mismatch = "branch a1=" + std::to_string(a1) + ": " + e.what();
      continue;
    }
    const std::string diff = describe_mismatch(cf, m.at_one);
    if (!diff.empty()) {
      if (rep.first_mismatch.empty())
        rep.first_mismatch = "branch a1=" + std::to_string(a1) + ": " + diff;
      continue;
    }
    rep.branch = a1;
    rep.series_match = true;
    rep.first_mismatch.clear();
    rep.quartic_vanishes = compose(quartic(), u, z_series(u.order())).is_zero();
    break;
  }
  const Rational u0(6, 5), rho(1, 12), x(1);
  rep.numerator_at_branch = closed_form_numerator().evaluate(u0, rho, x);
  rep.denominator_at_branch = closed_form_denominator().evaluate(u0, rho, x);
  rep.value_at_branch = rep.numerator_at_branch / rep.denominator_at_branch;
  return rep;
}

BranchPointReport verify_branch_point() {
  BranchPointReport rep;
  rep.u0 = Rational(6, 5);
  rep.rho = Rational(1, 12);
  rep.x = Rational(1);
  const RationalPoly p = quartic();
  rep.p = p.evaluate(rep.u0, rep.rho, rep.x);
  rep.p_u = p.derivative(Var::U).evaluate(rep.u0, rep.rho, rep.x);
  rep.p_z = p.derivative(Var::Z).evaluate(rep.u0, rep.rho, rep.x);
  rep.p_uu = p.derivative(Var::U).derivative(Var::U).evaluate(rep.u0, rep.rho, rep.x);
  if (sgn(rep.p_uu) == 0) throw SeriesError("P_uu vanishes at the branch point");
  // 1/2 P_uu u1^2 (1 - z/rho) = rho P_z (1 - z/rho) at leading order.
  rep.u1_squared = 2 * rep.rho * rep.p_z / rep.p_uu;
  Rational root;
  const bool square = rational_sqrt(rep.u1_squared, root);
  rep.u1 = -root;
  rep.pass = sgn(rep.p) == 0 && sgn(rep.p_u) == 0 && square && sgn(rep.u1) < 0;
  return rep;
}

RhoPolynomial derive_rho_poly() {
  RhoPolynomial out;
  const RationalPoly p = quartic();
  out.resultant = resultant_u(p, p.derivative(Var::U));
  if (out.resultant.is_zero()) throw SeriesError("P has a repeated factor in u");
  const Rational z0(1, 12), x0(1);

  // The leading coefficient of P in u divides the discriminant-type
  // resultant; remove it while it does and does not vanish at the point.
  const RationalPoly lc = p.coeff(Var::U, static_cast<unsigned>(p.degree(Var::U)));
  RationalPoly rest = out.resultant;
  if (sgn(lc.evaluate(0, z0, x0)) != 0) {
    while (true) {
      try {
        rest = RationalPoly::divide_exact(rest, lc);
      } catch (const NotExact&) {
        break;
      }
    }
  }
  out.d = rest.primitive();
  out.discarded = RationalPoly::divide_exact(out.resultant, out.d);
  out.value_at_point = out.d.evaluate(0, z0, x0);
  if (sgn(out.value_at_point) != 0)
    throw SeriesError("no factor of the resultant vanishes at (1/12, 1)");

  const RationalPoly dz = out.d.derivative(Var::Z), dx = out.d.derivative(Var::X);
  const Rational fz = dz.evaluate(0, z0, x0), fx = dx.evaluate(0, z0, x0);
  if (sgn(fz) == 0) throw SeriesError("D has a singular point at (1/12, 1)");
  const Rational fzz = dz.derivative(Var::Z).evaluate(0, z0, x0);
  const Rational fzx = dz.derivative(Var::X).evaluate(0, z0, x0);
  const Rational fxx = dx.derivative(Var::X).evaluate(0, z0, x0);
  out.rho = z0;
  out.rho_prime = -fx / fz;
  out.rho_second = -(fxx + 2 * fzx * out.rho_prime + fzz * out.rho_prime * out.rho_prime) / fz;
  return out;
}

CltConstants clt_constants(std::size_t n) {
  const RhoPolynomial rp = derive_rho_poly();
  CltConstants c;
  c.rho = rp.rho;
  c.rho_prime = rp.rho_prime;
  c.rho_second = rp.rho_second;
  c.mu = -c.rho_prime / c.rho;
  c.sigma2 = c.mu + c.mu * c.mu - c.rho_second / c.rho;

  const MSeries m = solve_M_series(n);
  for (std::size_t k = 0; k <= n; ++k) {
    const RationalPoly& ck = m.at_one[k];
    const Rational total = ck.evaluate(0, 0, 1);
    const Rational first = ck.derivative(Var::X).evaluate(0, 0, 1);
    const Rational second = ck.derivative(Var::X).derivative(Var::X).evaluate(0, 0, 1);
    const Rational mean = first / total;
    c.mean_vertices.push_back(mean);
    c.variance_vertices.push_back(second / total + mean - mean * mean);
  }
  return c;
}

PuiseuxReport puiseux_at_one(std::size_t terms) {
  if (terms < 2) throw std::invalid_argument("need at least two terms");
  const BranchPointReport bp = verify_branch_point();
  if (!bp.pass) throw SeriesError("branch point identities fail");
  const RationalPoly p = quartic().substitute(Var::X, bp.x);

  // z = rho (1 - t^2); the series index now counts powers of t.
  RationalSeries z(terms + 1);
  z[0] = RationalPoly(bp.rho);
  if (terms + 1 > 2) z[2] = RationalPoly(Rational(-bp.rho));
  RationalSeries u(terms);
  u[0] = RationalPoly(bp.u0);
  u[1] = RationalPoly(bp.u1);
  for (std::size_t k = 2; k < terms; ++k) solve_linear_step(p, u, z, k);

  const RationalSeries zt = z.truncated(terms);
  const RationalSeries num = compose(closed_form_numerator().substitute(Var::X, bp.x), u, zt);
  const RationalSeries den = compose(closed_form_denominator().substitute(Var::X, bp.x), u, zt);
  const RationalSeries mt = num * den.inverse();

  PuiseuxReport rep;
  for (std::size_t k = 0; k < terms; ++k) {
    rep.u.push_back(u[k].constant_term());
    rep.b.push_back(mt[k].constant_term());
  }
  return rep;
}

}  // namespace planarmap
