#pragma once

#include <array>

#include "rfsym/polynomial.hpp"
#include "rfsym/root_system.hpp"

namespace rfsym {

/// Data attached to one boundary facet of the moment body: the system is
/// re-oriented so that alpha1 is the fiber root of that facet.
struct FacetData {
  RestrictedRootSystem sys;  // oriented: alpha1 = fiber root
  int fiber = 1;             // which simple root of the input ordering is the fiber root
  long n1 = 0;               // mult(alpha1)
  long n2 = 0;               // mult(2 alpha1), 0 when absent
  long k = 0;                // mult(alpha2) + mult(2 alpha2)
  std::array<Rational, 2> chi{};  // simple-root basis
  Rational lambda;                // largest zero of P; slope range of the reduced problem
  Rational delta;                 // (lambda - n1 - 2 n2) / (k + 1)
  UniPoly P;                      // slope-density polynomial on [0, lambda]
  Rational V;                     // mass: integral of P over [0, lambda]
  Rational bar_dh;                // barycenter: first moment of P divided by V
};

/// Constructs the facet data for fiber root 1 or 2 of the given system.
/// Verifies that P is positive on (0, lambda) with a zero of exact order k at
/// lambda and that P / y^{n1+n2} is even.
FacetData facet(const RestrictedRootSystem& rs, int fiber);

/// Constants of the asymptotic model potentials attached to a facet. All
/// members are exact rationals except those involving the additive constant
/// K1 of the reduced solution, which are split into an exact prefactor.
struct AnsatzConstants {
  long n = 0, n1 = 0, n2 = 0, k = 0;
  Rational b;        // 2 A2 / n
  Rational b1;       // alpha1-component relation: a0 t1 = b1 alpha1 + b t2
  Rational a0;       // b / zeta
  Rational a1;       // (n b1 - n1 - 2 n2) / (1 + k); equals the facet delta
  Rational zeta;     // -<alpha1, alpha2> / <alpha2, alpha2>
  Rational eta_max;  // zeta (2/b - 1); admissible glue slopes are 0 < eta < eta_max
  Rational cu_arg;   // C_u = -ln(cu_arg), cu_arg = 2^{n-2-n1-n2} b^2 n^{1-n}
  Rational c_model;  // constant C of the flat-metric equation satisfied asymptotically
  Rational cw_rat;   // fiber equation constant: C_w = cw_rat * exp(n K1)
  Rational g11, g12, g22;
};

AnsatzConstants ansatz_constants(const FacetData& fd);

}  // namespace rfsym
