#include "rfsym/criterion.hpp"

#include <stdexcept>

namespace rfsym {

Rational barycenter_margin(const FacetData& fd) {
  return fd.bar_dh - Rational(fd.n1 + 2 * fd.n2);
}

bool ke_exists(const FacetData& fd) { return barycenter_margin(fd).sign() > 0; }

std::pair<Rational, Rational> beta_condition_margins(long m1, long m2, long m3) {
  Rational first = exact_beta(Rational(m2 + m3) / Rational(2) + Rational(1), m1 + 1) -
                   Rational(m2 + 2 * m3) / Rational(2 * m1 + m2 + 2 * m3) *
                       exact_beta(Rational(m2 + m3 + 1) / Rational(2), m1 + 1);
  Rational second = exact_beta(Rational(m1) / Rational(2) + Rational(1), m2 + m3 + 1) -
                    Rational(m1) / Rational(m1 + m2 + 2 * m3) *
                        exact_beta(Rational(m1 + 1) / Rational(2), m2 + m3 + 1);
  return {first, second};
}

namespace {

/// (upper^2 - x^2)^e as a polynomial in x.
UniPoly even_window(const Rational& upper, int e) {
  return UniPoly({upper * upper, Rational(0), Rational(-1)}).pow(e);
}

Rational weighted_moment(const UniPoly& density, const Rational& center,
                         const Rational& upper) {
  UniPoly weight({-center, Rational(1)});
  return poly_integrate(weight * density, Rational(0), upper);
}

}  // namespace

std::pair<Rational, Rational> moment_condition_margins(long m1, long m2, long m3) {
  // Fiber root of multiplicity m1: density x^{m2+m3} (A1^2 - x^2)^{m1} on
  // [0, A1], A1 = m1 + m2/2 + m3, weighted by x - (m2/2 + m3).
  Rational A1 = Rational(m1) + Rational(m2) / Rational(2) + Rational(m3);
  UniPoly d1 = UniPoly::monomial(Rational(1), int(m2 + m3)) * even_window(A1, int(m1));
  Rational first = weighted_moment(d1, Rational(m2) / Rational(2) + Rational(m3), A1);

  // Fiber root of multiplicity m2: density w^{m1} (t^2 - 4 w^2)^{m2+m3} on
  // [0, t/2], t = m1 + m2 + 2 m3, weighted by w - m1/2.
  Rational t(m1 + m2 + 2 * m3);
  UniPoly win = UniPoly({t * t, Rational(0), Rational(-4)}).pow(int(m2 + m3));
  UniPoly d2 = UniPoly::monomial(Rational(1), int(m1)) * win;
  Rational second = weighted_moment(d2, Rational(m1) / Rational(2), t / Rational(2));
  return {first, second};
}

Rational condA_margin(long m) {
  Rational up = Rational(3 * m) / Rational(2);
  UniPoly d = UniPoly::monomial(Rational(1), int(m)) * even_window(up, int(m));
  return weighted_moment(d, Rational(m) / Rational(2), up);
}

std::pair<Rational, Rational> condG2_margins(long m) {
  // Long fiber root: density x^m ((9m/2)^2 - x^2)^m ((3m/2)^2 - x^2)^m on
  // [0, 3m/2], weighted by x - m/2.
  Rational up1 = Rational(3 * m) / Rational(2);
  UniPoly d1 = UniPoly::monomial(Rational(1), int(m)) *
               even_window(Rational(9 * m) / Rational(2), int(m)) * even_window(up1, int(m));
  Rational first = weighted_moment(d1, Rational(m) / Rational(2), up1);

  // Short fiber root: density w^m ((5m/2)^2 - w^2)^m ((5m/2)^2 - 9 w^2)^m on
  // [0, 5m/6], weighted by w - m/2.
  Rational h = Rational(5 * m) / Rational(2);
  UniPoly win3 = UniPoly({h * h, Rational(0), Rational(-9)}).pow(int(m));
  UniPoly d2 = UniPoly::monomial(Rational(1), int(m)) * even_window(h, int(m)) * win3;
  Rational second = weighted_moment(d2, Rational(m) / Rational(2), Rational(5 * m) / Rational(6));
  return {first, second};
}

Rational condition_quotient_cii(long m) {
  if (m < 4) throw std::invalid_argument("condition_quotient_cii: rank must be >= 4");
  long m1 = 4, m2 = 4 * m - 16, m3 = 3;
  Rational lhs = exact_beta(Rational(m1) / Rational(2) + Rational(1), m2 + m3 + 1);
  Rational rhs = Rational(m1) / Rational(m1 + m2 + 2 * m3) *
                 exact_beta(Rational(m1 + 1) / Rational(2), m2 + m3 + 1);
  return lhs / rhs;
}

}  // namespace rfsym
