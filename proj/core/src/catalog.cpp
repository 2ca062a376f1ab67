#include "rfsym/catalog.hpp"

#include <regex>
#include <stdexcept>

namespace rfsym {

namespace {

CatalogEntry fixed(const std::string& name, const std::string& family, RootSystemKind kind,
                   std::vector<long> mults) {
  return CatalogEntry{name, family, kind, std::move(mults), 0};
}

}  // namespace

CatalogEntry catalog_family(const std::string& family, long r) {
  if (r < 5) throw std::invalid_argument("catalog_family: rank must be >= 5");
  if (family == "AIII")
    return CatalogEntry{"SL" + std::to_string(r) + "/S(GL2xGL" + std::to_string(r - 2) + ")",
                        "AIII", RootSystemKind::BC2, {2, 2 * r - 8, 1}, r};
  if (family == "CII")
    return CatalogEntry{"Sp" + std::to_string(2 * r) + "/Sp4xSp" + std::to_string(2 * r - 4),
                        "CII", RootSystemKind::BC2, {4, 4 * r - 16, 3}, r};
  if (family == "BDI")
    return CatalogEntry{"SO" + std::to_string(r) + "/S(O2xO" + std::to_string(r - 2) + ")",
                        "BDI", RootSystemKind::B2, {1, r - 4, 0}, r};
  throw std::invalid_argument("catalog_family: unknown family " + family);
}

std::vector<CatalogEntry> catalog_all() {
  return {
      fixed("SL3/SO3", "AI", RootSystemKind::A2, {1}),
      fixed("PGL3xPGL3/PGL3", "A2 group", RootSystemKind::A2, {2}),
      fixed("SL6/Sp6", "AII", RootSystemKind::A2, {4}),
      fixed("E6/F4", "EIV", RootSystemKind::A2, {8}),
      catalog_family("AIII", 5),
      catalog_family("CII", 5),
      fixed("SO10/GL5", "DIII", RootSystemKind::BC2, {4, 4, 1}),
      fixed("E6/SO10xSO2", "EIII", RootSystemKind::BC2, {6, 8, 1}),
      catalog_family("BDI", 5),
      fixed("SO5xSO5/SO5", "B2 group", RootSystemKind::B2, {2, 2, 0}),
      fixed("Sp8/Sp4xSp4", "CII r=4", RootSystemKind::B2, {3, 4, 0}),
      fixed("G2/SO4", "G", RootSystemKind::G2, {1}),
      fixed("G2xG2/G2", "G2 group", RootSystemKind::G2, {2}),
  };
}

std::optional<CatalogEntry> catalog_lookup(const std::string& name) {
  for (const auto& e : catalog_all())
    if (e.name == name) return e;

  static const std::regex aiii(R"(SL(\d+)/S\(GL2xGL(\d+)\))");
  static const std::regex cii(R"(Sp(\d+)/Sp4xSp(\d+))");
  static const std::regex bdi(R"(SO(\d+)/S\(O2xO(\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, aiii)) {
    long r = std::stol(m[1]);
    if (r >= 5 && std::stol(m[2]) == r - 2) return catalog_family("AIII", r);
  }
  if (std::regex_match(name, m, cii)) {
    long r2 = std::stol(m[1]);
    if (r2 % 2 == 0 && r2 / 2 >= 5 && std::stol(m[2]) == r2 - 4)
      return catalog_family("CII", r2 / 2);
  }
  if (std::regex_match(name, m, bdi)) {
    long r = std::stol(m[1]);
    if (r >= 5 && std::stol(m[2]) == r - 2) return catalog_family("BDI", r);
  }
  return std::nullopt;
}

}  // namespace rfsym
