#pragma once

#include <array>
#include <string>
#include <vector>

#include "rfsym/rational.hpp"

namespace rfsym {

enum class RootSystemKind { A2, B2, BC2, G2 };

std::string kind_name(RootSystemKind k);
RootSystemKind kind_from_name(const std::string& s);

/// One positive restricted root class. Coordinates are with respect to the
/// simple-root basis (alpha1, alpha2) of the owning system.
struct PositiveRoot {
  int c1 = 0;
  int c2 = 0;
  long mult = 0;
  bool doubled = false;  // true when the root is twice another positive root
};

/// Rank-two restricted root system with multiplicities. The Gram matrix
/// stores the pairings <alpha_i, alpha_j> of the two simple roots; which of
/// the two geometric simple roots plays the role of alpha1 is part of the
/// object (see `oriented`), and downstream code never mutates a built system.
struct RestrictedRootSystem {
  RootSystemKind kind = RootSystemKind::A2;
  std::array<std::array<Rational, 2>, 2> gram{};
  std::vector<PositiveRoot> roots;
  std::vector<long> mult_params;  // {m} for A2/G2, {m1,m2,m3} for B2/BC2
  int orientation = 1;            // 1 = reference ordering, 2 = simple roots swapped
};

/// Builds the system in the reference ordering (orientation 1).
/// mults: {m} for A2/G2, {m1,m2} or {m1,m2,m3} for B2/BC2 (m3 > 0 forces BC2,
/// and kind BC2 requires m3 > 0).
RestrictedRootSystem build_system(RootSystemKind kind, const std::vector<long>& mults);

/// Returns the system with the simple root `fiber` (1 or 2) relabelled as
/// alpha1. fiber == 1 is the identity.
RestrictedRootSystem oriented(const RestrictedRootSystem& rs, int fiber);

/// n = 2 + sum of multiplicities (the complex dimension of the ambient space).
long dim_n(const RestrictedRootSystem& rs);

/// Pairing of two vectors given in the simple-root basis.
Rational pair_rb(const RestrictedRootSystem& rs, const std::array<Rational, 2>& a,
                 const std::array<Rational, 2>& b);

/// Half the multiplicity-weighted sum of the positive roots, in the
/// simple-root basis.
std::array<Rational, 2> varpi(const RestrictedRootSystem& rs);

/// Product over positive roots of <alpha, p>^{mult}, p in the simple-root basis.
Rational dh_value(const RestrictedRootSystem& rs, const std::array<Rational, 2>& p);

/// Simple reflection s_i (i = 1 or 2) acting on a vector in the simple-root basis.
std::array<Rational, 2> weyl_reflect_rb(const RestrictedRootSystem& rs, int i,
                                        const std::array<Rational, 2>& v);

/// Full Weyl group as a list of 2x2 matrices acting on "value coordinates"
/// (p1, p2) = (alpha1(x), alpha2(x)). The identity comes first.
std::vector<std::array<std::array<double, 2>, 2>> weyl_matrices_values(
    const RestrictedRootSystem& rs);

struct WeylReduction {
  std::array<double, 2> p;              // representative in the closed positive chamber
  std::vector<int> word;                // simple reflections applied (left to right)
  std::array<std::array<double, 2>, 2> map;  // matrix with map * original = p
};

/// Reduces a point in value coordinates to the closed positive chamber.
WeylReduction weyl_reduce(const RestrictedRootSystem& rs, const std::array<double, 2>& p);

/// Weyl orbit of a linear functional with the given simple-root-basis
/// coefficients (exact; orbit of alpha1 has size 6, 4, 4 or 6... as dictated
/// by the system).
std::vector<std::array<Rational, 2>> weyl_orbit_functional(
    const RestrictedRootSystem& rs, const std::array<Rational, 2>& xi);

}  // namespace rfsym
