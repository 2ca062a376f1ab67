#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfsym/root_system.hpp"

namespace rfsym {

/// One rank-two symmetric space. Parametric families (AIII, CII, BDI) are
/// instantiated at a concrete rank r; `param` is 0 for the sporadic entries.
struct CatalogEntry {
  std::string name;    // quotient notation, e.g. "SL6/Sp6"
  std::string family;  // classification label, e.g. "AII"
  RootSystemKind kind;
  std::vector<long> mults;
  long param = 0;

  RestrictedRootSystem system() const { return build_system(kind, mults); }
};

/// The full list of rank-two symmetric spaces; parametric families are listed
/// at their smallest rank (r = 5).
std::vector<CatalogEntry> catalog_all();

/// Resolves a space by name. Parametric family members at any admissible rank
/// are recognized from their quotient notation (e.g. "SL7/S(GL2xGL5)").
std::optional<CatalogEntry> catalog_lookup(const std::string& name);

/// Instantiates a parametric family ("AIII", "CII", "BDI") at rank r >= 5.
CatalogEntry catalog_family(const std::string& family, long r);

}  // namespace rfsym
