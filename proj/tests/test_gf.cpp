#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "planarmap/enumerate.hpp"
#include "planarmap/gf.hpp"
#include "planarmap/poly.hpp"

using namespace planarmap;

namespace {

const RationalPoly U = RationalPoly::var(Var::U);
const RationalPoly Z = RationalPoly::var(Var::Z);
const RationalPoly X = RationalPoly::var(Var::X);

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const RationalPoly a = U * U + Z * X - 3;
  const RationalPoly b = U - Z;
  CHECK((a * b).evaluate(2, 3, 5) == a.evaluate(2, 3, 5) * b.evaluate(2, 3, 5));
  CHECK(RationalPoly::divide_exact(a * b, b) == a);
  CHECK_THROWS_AS(RationalPoly::divide_exact(a, b), NotExact);
  CHECK((a - a).is_zero());
  CHECK(a.degree(Var::U) == 2);
  CHECK(RationalPoly().degree(Var::U) == -1);
  CHECK(a.derivative(Var::U) == 2 * U);
  CHECK(a.coeff(Var::U, 0) == Z * X - 3);
  CHECK(a.substitute(Var::U, 1) == Z * X - 2);
  CHECK(b.pow(3) == b * b * b);
  const RationalPoly c = 6 * Z * Z * X + 4 * Z * Z * X * X;
  CHECK(c.monomial_content() == Monomial{0, 2, 1});
  CHECK(c.primitive() == 2 * X + 3);
  CHECK((-c).primitive() == 2 * X + 3);
}

TEST_CASE("resultant agrees with the Sylvester determinant at rational points") {
  const RationalPoly f = 3 * U * U * U * Z + U * U * X - 2 * U + Z * X + 1;
  const RationalPoly g = (X + 1) * U * U + Z * U - 5 * X * X;
  const RationalPoly r = resultant_u(f, g);
  CHECK(r.degree(Var::U) <= 0);
  for (const auto& [z, x] : std::vector<std::pair<Rational, Rational>>{
           {1, 2}, {make_rational(1, 3), make_rational(-2, 7)}, {5, make_rational(3, 4)}}) {
    const Rational expect = oracle::sylvester_resultant(oracle::univariate_at(f, z, x),
                                                        oracle::univariate_at(g, z, x));
    CHECK(r.evaluate(0, z, x) == expect);
  }
  // Common root u = z forces a zero resultant.
  CHECK(resultant_u((U - Z) * (U + 1), (U - Z) * (U - X)).is_zero());
}

TEST_CASE("catalytic series matches the exhaustive census") {
  const MSeries s = solve_M_series(5);
  CHECK(s.at_one.order() == 6);
  CHECK(s.at_one[0].evaluate(0, 0, 1) == 1);
  for (unsigned n = 1; n <= 4; ++n) {
    CHECK(s.at_one[n].evaluate(0, 0, 1) == static_cast<unsigned long>(oracle::tutte_count(n)));
    const EnumerationTable t = enumerate_rooted_maps(n);
    // u marks the root face degree.
    std::map<std::size_t, std::size_t> by_outer;
    for (const auto& m : t.maps) ++by_outer[m.face_degree(m.outer_face())];
    for (const auto& [deg, count] : by_outer)
      CHECK(s.full[n].substitute(Var::X, 1).coeff(Var::U, static_cast<unsigned>(deg)).constant_term() ==
            static_cast<unsigned long>(count));
  }
}

TEST_CASE("closed form and branch point") {
  const ClosedFormReport cf = check_closed_form_M(8);
  CHECK(cf.pass());
  CHECK(cf.branch == 1);
  CHECK(cf.value_at_branch == make_rational(4, 3));
  const BranchPointReport bp = verify_branch_point();
  CHECK(bp.pass);
  CHECK(bp.p == 0);
  CHECK(bp.p_u == 0);
  CHECK(bp.u1 == make_rational(-6, 25));
  CHECK(bp.u1 * bp.u1 == bp.u1_squared);
  CHECK(quartic().evaluate(make_rational(6, 5), make_rational(1, 12), 1) == 0);
}

TEST_CASE("the u-series solves the quartic on the selected branch only") {
  const UBranch b = solve_u_series(8);
  CHECK(b.a1 == 1);
  const RationalSeries on = compose(quartic(), b.u, RationalSeries::from_poly(Z, b.u.order()));
  CHECK(on.valuation() == on.order());
  CHECK_THROWS_AS(closed_form_series(u_series_branch(11, -1), 8), SeriesError);
}

TEST_CASE("discriminant factor vanishes at the critical point") {
  const RhoPolynomial rp = derive_rho_poly();
  CHECK(rp.value_at_point == 0);
  CHECK(rp.d.evaluate(0, make_rational(1, 12), 1) == 0);
  CHECK(rp.rho == make_rational(1, 12));
  CHECK(rp.rho_prime == make_rational(-1, 24));
  CHECK(rp.resultant == RationalPoly::divide_exact(rp.resultant, rp.d) * rp.d);

  // Independent check of rho'(1) and rho''(1): Newton on D(z, x) = 0 and
  // centred differences in x.
  auto root = [&](double x) {
    double z = 1.0 / 12;
    for (int it = 0; it < 60; ++it) {
      double f = 0, fz = 0;
      for (const auto& [m, c] : rp.d.terms()) {
        const double k = c.get_d() * std::pow(x, m[2]);
        f += k * std::pow(z, m[1]);
        if (m[1]) fz += k * m[1] * std::pow(z, m[1] - 1);
      }
      z -= f / fz;
    }
    return z;
  };
  const double h = 1e-3;
  const double r0 = root(1), rp1 = root(1 + h), rm1 = root(1 - h);
  CHECK((rp1 - rm1) / (2 * h) == doctest::Approx(rp.rho_prime.get_d()).epsilon(1e-5));
  CHECK((rp1 - 2 * r0 + rm1) / (h * h) == doctest::Approx(rp.rho_second.get_d()).epsilon(1e-4));
}

TEST_CASE("the quoted closed-form rho polynomial does not vanish at (1/12, 1)") {
  const RationalPoly q = quoted_rho_polynomial();
  CHECK(q.evaluate(0, make_rational(1, 12), 1) == make_rational(32, 27));
  const RationalPoly z4 = 4 * Z + 1;
  CHECK(q.substitute(Var::X, 1) == 96 * Z * Z * z4 * z4);
}

TEST_CASE("vertex moments from the series agree with enumeration") {
  const CltConstants c = clt_constants(8);
  CHECK(c.mu == make_rational(1, 2));
  for (std::size_t n = 1; n <= 4; ++n) {
    const Moments mo = exact_vertex_moments(enumerate_rooted_maps(n));
    CHECK(c.mean_vertices[n] == mo.mean);
    CHECK(c.variance_vertices[n] == mo.variance);
  }
  // sigma^2 = mu + mu^2 - rho''/rho
  CHECK(c.sigma2 == c.mu + c.mu * c.mu - c.rho_second / c.rho);
  // The per-edge growth of the exact variance approaches sigma^2.
  const double growth = Rational(c.variance_vertices[8] - c.variance_vertices[7]).get_d();
  CHECK(std::abs(growth - c.sigma2.get_d()) < 0.02);
}

TEST_CASE("Puiseux expansion at x = 1") {
  const PuiseuxReport p = puiseux_at_one(5);
  CHECK(p.u[0] == make_rational(6, 5));
  CHECK(p.u[1] == make_rational(-6, 25));
  CHECK(p.b[0] == make_rational(4, 3));
  CHECK(p.b[1] == 0);
}

TEST_CASE("series arithmetic") {
  const RationalSeries a = RationalSeries::from_poly(1 + Z + X * Z * Z, 5);
  const RationalSeries inv = a.inverse();
  const RationalSeries one = a * inv;
  CHECK(one[0] == 1);
  for (std::size_t k = 1; k < one.order(); ++k) CHECK(one[k].is_zero());
  CHECK((a - a).is_zero());
  CHECK(RationalSeries::from_poly(Z * Z * Z, 5).valuation() == 3);
  CHECK(RationalSeries::from_poly(Z * Z * Z, 5).shifted_down(3)[0] == 1);
  CHECK((a * RationalSeries::from_poly(Z, 3)).order() == 3);
}
