#pragma once

// Named single- and two-mode generators, one kind per possible class of the
// 16-way dynamics table. Each kind takes one real rate; kinds that come in
// several geometric flavours select one with a variant string.

#include "gaussdyn/generator.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gaussdyn {

enum class CatalogKind {
  rotation,
  squeezing,
  displacement,
  thermal_noise,
  squeezed_noise,
  amplification_relaxation,
  multimode_rotation,
  multimode_squeezing,
  counter_rotation,
  counter_squeezing,
  multimode_squeezed_noise,
};

struct CatalogEntry {
  CatalogKind kind;
  std::string id;                     // stable identifier used in scenario files
  std::string class_name;             // row name reported by classify()
  std::string parameter;              // name of the rate parameter
  int modes;                          // 1 or 2
  std::vector<std::string> variants;  // first entry is the default
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(CatalogKind kind);

struct KindSelector {
  CatalogKind kind;
  std::string variant;
};

/// Accepts "<id>" or "<id>_<variant>"; throws std::invalid_argument for
/// unknown kinds or variants.
KindSelector parse_kind(const std::string& name);

/// Embeds the kind's 2x2 (one mode) or 4x4 (two modes) template at the given
/// 1-based mode indices. An empty variant selects the default. Grouped spaces
/// receive the template converted to grouped ordering.
Generator named_generator(CatalogKind kind, const std::string& variant, double rate,
                          std::span<const int> modes, const SymplecticSpace& space);

Generator named_generator(const std::string& kind, double rate, std::span<const int> modes,
                          const SymplecticSpace& space);

}  // namespace gaussdyn
