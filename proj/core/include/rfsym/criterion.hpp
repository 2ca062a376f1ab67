#pragma once

#include <utility>

#include "rfsym/beta.hpp"
#include "rfsym/facet.hpp"
#include "rfsym/polynomial.hpp"

namespace rfsym {

/// Exact barycenter criterion for a facet: positive iff the fiberwise
/// complete metric of positive curvature exists for that facet.
Rational barycenter_margin(const FacetData& fd);

bool ke_exists(const FacetData& fd);

/// Closed-form margins for the two facet choices of a B2/BC2 system with
/// multiplicities (m1, m2, m3), expressed through exact beta-type products.
/// first  <-> fiber root of multiplicity m1 (facet 1),
/// second <-> fiber root of multiplicity m2 (facet 2).
std::pair<Rational, Rational> beta_condition_margins(long m1, long m2, long m3);

/// Direct moment-integral route for the same two margins (polytope-scale
/// coordinates); signs agree with beta_condition_margins.
std::pair<Rational, Rational> moment_condition_margins(long m1, long m2, long m3);

/// A2 margin as a weighted moment integral (same for both facets).
Rational condA_margin(long m);

/// G2 margins as weighted moment integrals: first for the short fiber root
/// (facet 2), second for the long fiber root (facet 1).
std::pair<Rational, Rational> condG2_margins(long m);

/// Quotient of the two sides of the second margin condition for the CII
/// family at rank m (multiplicities (4, 4m-16, 3)); > 1 means the condition
/// holds.
Rational condition_quotient_cii(long m);

}  // namespace rfsym
