#pragma once

#include <stdexcept>

#include "rfsym/rational.hpp"

namespace rfsym {

/// Beta-type product with integer second argument:
///   B(a, n) = (n-1)! / (a (a+1) ... (a+n-1)),   a > 0 rational, n >= 1.
/// Satisfies B(a, 1) = 1/a and B(a+1, n) = a/(a+n) * B(a, n).
inline Rational exact_beta(const Rational& a, long n) {
  if (n < 1) throw std::domain_error("exact_beta: n must be >= 1");
  if (a.sign() <= 0) throw std::domain_error("exact_beta: a must be positive");
  Rational num(1), den(1);
  for (long i = 1; i < n; ++i) num *= Rational(i);
  for (long i = 0; i < n; ++i) den *= a + Rational(i);
  return num / den;
}

}  // namespace rfsym
