#include "planarmap/poly.hpp"

#include <algorithm>
#include <sstream>

namespace planarmap {

namespace {

constexpr std::size_t idx(Var v) { return static_cast<std::size_t>(v); }

Rational power(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

RationalPoly::RationalPoly(const Rational& c) { add_term({0, 0, 0}, c); }

RationalPoly RationalPoly::var(Var v, unsigned power) {
  Monomial m{0, 0, 0};
  m[idx(v)] = static_cast<std::uint16_t>(power);
  return monomial(Rational(1), m);
}

RationalPoly RationalPoly::monomial(const Rational& c, Monomial m) {
  RationalPoly p;
  p.add_term(m, c);
  return p;
}

void RationalPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

bool RationalPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0, 0});
}

Rational RationalPoly::constant_term() const {
  const auto it = terms_.find({0, 0, 0});
  return it == terms_.end() ? Rational(0) : it->second;
}

int RationalPoly::degree(Var v) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[idx(v)]));
  return d;
}

RationalPoly RationalPoly::coeff(Var v, unsigned k) const {
  RationalPoly out;
  for (const auto& [m, c] : terms_) {
    if (m[idx(v)] != k) continue;
    Monomial rest = m;
    rest[idx(v)] = 0;
    out.add_term(rest, c);
  }
  return out;
}

RationalPoly RationalPoly::derivative(Var v) const {
  RationalPoly out;
  for (const auto& [m, c] : terms_) {
    if (m[idx(v)] == 0) continue;
    Monomial lower = m;
    --lower[idx(v)];
    out.add_term(lower, c * Rational(m[idx(v)]));
  }
  return out;
}

RationalPoly RationalPoly::substitute(Var v, const Rational& value) const {
  RationalPoly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[idx(v)] = 0;
    out.add_term(rest, c * power(value, m[idx(v)]));
  }
  return out;
}

Rational RationalPoly::evaluate(const Rational& u, const Rational& z,
                                const Rational& x) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) sum += c * power(u, m[0]) * power(z, m[1]) * power(x, m[2]);
  return sum;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
      out.add_term(m, ca * cb);
    }
  return out;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) { return *this = *this * o; }

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

RationalPoly RationalPoly::pow(unsigned e) const {
  RationalPoly result(Rational(1)), base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

RationalPoly RationalPoly::divide_exact(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& [lb, cb] = *b.terms_.rbegin();
  RationalPoly q, r = a;
  // Lex-leading terms strictly decrease, so this terminates.
  while (!r.is_zero()) {
    const auto [lr, cr] = *r.terms_.rbegin();
    Monomial m;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (lr[i] < lb[i]) throw NotExact("polynomial division is not exact");
      m[i] = static_cast<std::uint16_t>(lr[i] - lb[i]);
    }
    const RationalPoly t = monomial(cr / cb, m);
    q += t;
    r -= t * b;
  }
  return q;
}

Monomial RationalPoly::monomial_content() const {
  if (terms_.empty()) return {0, 0, 0};
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], m[i]);
  return g;
}

RationalPoly RationalPoly::primitive() const {
  if (terms_.empty()) return {};
  const Monomial g = monomial_content();
  mpz_class den = 1, num = 0;
  for (const auto& [m, c] : terms_) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (sgn(terms_.rbegin()->second) < 0) scale = -scale;
  RationalPoly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    for (std::size_t i = 0; i < m.size(); ++i) rest[i] = static_cast<std::uint16_t>(m[i] - g[i]);
    out.add_term(rest, c * scale);
  }
  return out;
}

std::string RationalPoly::to_string() const {
  if (terms_.empty()) return "0";
  static constexpr const char* kNames[] = {"u", "z", "x"};
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = m == Monomial{0, 0, 0};
    bool wrote = false;
    if (mag != 1 || unit) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << '*';
      os << kNames[i];
      if (m[i] > 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

UPoly to_upoly(const RationalPoly& p) {
  UPoly out(static_cast<std::size_t>(std::max(0, p.degree(Var::U) + 1)));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(Var::U, static_cast<unsigned>(k));
  return out;
}

namespace {

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

// lc(b)^(deg a - deg b + 1) * a mod b.
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const int db = deg(b);
  const RationalPoly& lb = b.back();
  int e = deg(a) - db + 1;
  while (deg(a) >= db) {
    const RationalPoly lead = a.back();
    const std::size_t shift = static_cast<std::size_t>(deg(a) - db);
    for (auto& c : a) c *= lb;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= lead * b[k];
    trim(a);
    --e;
  }
  if (e > 0) {
    const RationalPoly f = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

}  // namespace

RationalPoly resultant_u(const RationalPoly& a, const RationalPoly& b) {
  UPoly A = to_upoly(a), B = to_upoly(b);
  if (A.empty() || B.empty()) return {};
  RationalPoly s(Rational(1));
  if (deg(A) < deg(B)) {
    std::swap(A, B);
    if (deg(A) % 2 && deg(B) % 2) s = RationalPoly(Rational(-1));
  }
  if (deg(B) == 0) return s * B[0].pow(static_cast<unsigned>(deg(A)));

  RationalPoly g(Rational(1)), h(Rational(1));
  while (true) {
    const int delta = deg(A) - deg(B);
    if (deg(A) % 2 && deg(B) % 2) s *= Rational(-1);
    UPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    const RationalPoly divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : R) c = RationalPoly::divide_exact(c, divisor);
    B = std::move(R);
    g = A.back();
    if (delta > 0)
      h = RationalPoly::divide_exact(g.pow(static_cast<unsigned>(delta)),
                                     h.pow(static_cast<unsigned>(delta - 1)));
    if (B.empty()) return {};
    if (deg(B) == 0) break;
  }
  const unsigned da = static_cast<unsigned>(deg(A));
  return s * RationalPoly::divide_exact(B[0].pow(da), h.pow(da - 1));
}

}  // namespace planarmap
