#include "rfsym/facet.hpp"

#include <stdexcept>

namespace rfsym {

FacetData facet(const RestrictedRootSystem& rs, int fiber) {
  FacetData fd;
  fd.sys = oriented(rs, fiber);
  fd.fiber = fiber;
  const auto& S = fd.sys;

  for (const auto& r : S.roots) {
    if (r.c2 == 0) {
      if (r.c1 == 1) fd.n1 = r.mult;
      else if (r.c1 == 2) fd.n2 = r.mult;
    }
    if (r.c1 == 0) fd.k += r.mult;
  }

  long n = dim_n(S);
  auto w = varpi(S);
  fd.chi = {w[0] - (Rational(fd.n1) / Rational(2) + Rational(fd.n2)), w[1]};

  Rational A2 = w[1];
  Rational b = Rational(2) * A2 / Rational(n);
  Rational zeta = -S.gram[0][1] / S.gram[1][1];
  Rational a0 = b / zeta;
  Rational b1 = a0 + b * S.gram[0][1] / S.gram[0][0];
  fd.lambda = Rational(n) * b1;

  if (!(fd.lambda > Rational(fd.n1 + 2 * fd.n2)))
    throw std::runtime_error("facet: slope bound does not exceed fiber weight");
  fd.delta = (fd.lambda - Rational(fd.n1 + 2 * fd.n2)) / Rational(fd.k + 1);

  // P(y) = y^{n1+n2} prod over positive roots not proportional to alpha1 of
  //        (1/2)(<alpha, 2 chi> - <alpha, alpha1> y)^{mult}.
  std::array<Rational, 2> two_chi{Rational(2) * fd.chi[0], Rational(2) * fd.chi[1]};
  std::array<Rational, 2> e1{Rational(1), Rational(0)};
  std::vector<std::pair<UniPoly, int>> factors;
  factors.push_back({UniPoly::monomial(Rational(1), 1), int(fd.n1 + fd.n2)});
  for (const auto& r : S.roots) {
    if (r.c2 == 0) continue;
    std::array<Rational, 2> a{Rational(r.c1), Rational(r.c2)};
    Rational A = pair_rb(S, a, two_chi);
    Rational B = pair_rb(S, a, e1);
    if (A.sign() <= 0) throw std::runtime_error("facet: nonpositive constant term in factor");
    if (B.sign() > 0 && A / B < fd.lambda)
      throw std::runtime_error("facet: factor vanishes inside (0, lambda)");
    factors.push_back({UniPoly({A / Rational(2), -B / Rational(2)}), int(r.mult)});
  }
  fd.P = poly_from_factors(factors);

  // Zero of exact order k at lambda.
  UniPoly q = fd.P;
  for (long i = 0; i < fd.k; ++i) {
    if (!q.eval(fd.lambda).is_zero())
      throw std::runtime_error("facet: vanishing order at lambda below k");
    q = q.derivative();
  }
  if (q.eval(fd.lambda).is_zero())
    throw std::runtime_error("facet: vanishing order at lambda above k");

  // P / y^{n1+n2} is even.
  for (int i = 0; i <= fd.P.degree(); ++i)
    if (!fd.P.coeff(i).is_zero() && (i - (fd.n1 + fd.n2)) % 2 != 0)
      throw std::runtime_error("facet: density polynomial has wrong parity");

  fd.V = poly_integrate(fd.P, Rational(0), fd.lambda);
  UniPoly yP = UniPoly::monomial(Rational(1), 1) * fd.P;
  fd.bar_dh = poly_integrate(yP, Rational(0), fd.lambda) / fd.V;
  return fd;
}

AnsatzConstants ansatz_constants(const FacetData& fd) {
  const auto& S = fd.sys;
  AnsatzConstants c;
  c.n = dim_n(S);
  c.n1 = fd.n1;
  c.n2 = fd.n2;
  c.k = fd.k;
  c.g11 = S.gram[0][0];
  c.g12 = S.gram[0][1];
  c.g22 = S.gram[1][1];

  Rational A2 = varpi(S)[1];
  c.b = Rational(2) * A2 / Rational(c.n);
  c.zeta = -c.g12 / c.g22;
  c.a0 = c.b / c.zeta;
  c.b1 = c.a0 + c.b * c.g12 / c.g11;
  c.a1 = (Rational(c.n) * c.b1 - Rational(c.n1 + 2 * c.n2)) / Rational(1 + c.k);
  if (c.a1 != fd.delta)
    throw std::logic_error("ansatz_constants: a1 does not match facet decay rate");
  c.eta_max = c.zeta * (Rational(2) / c.b - Rational(1));

  long e = c.n - 2 - c.n1 - c.n2;
  c.cu_arg = Rational(2).pow(e) * c.b * c.b * Rational(c.n).pow(1 - c.n);

  long D = 0;  // multiplicity mass of doubled roots transverse to alpha1
  for (const auto& r : S.roots)
    if (r.doubled && r.c2 != 0) D += r.mult;
  Rational det_g = c.g11 * c.g22 - c.g12 * c.g12;
  c.c_model = c.cu_arg * c.b * c.b * Rational(c.n).pow(1 - c.n) *
              Rational(2).pow(2 * e - D) * c.g11.pow(c.n1 + c.n2) * det_g;

  // Fiber equation constant: product over roots transverse to alpha2 of the
  // pairing with t1 = alpha1 + zeta alpha2 (doubled roots paired through
  // their primitive half).
  std::array<Rational, 2> t1{Rational(1), c.zeta};
  Rational prod(1);
  for (const auto& r : S.roots) {
    if (r.c1 == 0) continue;
    std::array<Rational, 2> a{Rational(r.c1), Rational(r.c2)};
    if (r.doubled) a = {a[0] / Rational(2), a[1] / Rational(2)};
    prod *= pair_rb(S, a, t1).pow(r.mult);
  }
  c.cw_rat = c.a0.pow(c.n - c.k) * c.g22.pow(c.k) * prod *
             Rational(2).pow(c.n - 2 - c.k) * det_g / c.c_model;
  return c;
}

}  // namespace rfsym
