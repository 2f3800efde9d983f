#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "torifan/toric.hpp"

namespace torifan::harness {

struct CatalogEntry {
  std::string name;
  toric::Fan fan;
  std::string note;
};

using Catalog = std::vector<CatalogEntry>;

// Generators.
toric::Fan projective_space(std::size_t n);
toric::Fan p1xp1();
toric::Fan p1xp1xp1();
/// Blow-up of P2 at k of its torus-fixed points, k = 0..3 (k = 1 is F1).
toric::Fan del_pezzo(std::size_t k);
toric::Fan hirzebruch(std::size_t a);

/// P^1..P^6, the five toric del Pezzo surfaces, P1xP1xP1.
Catalog builtin_catalog();

/// $TORIFAN_CATALOG if set, otherwise the directory shipped with the sources.
std::filesystem::path default_catalog_dir();

/// Fan JSON: {"name", "dim", "rays": [[...]], "cones": [[...]], "note"?}.
/// Throws ParseError naming the offending field.
CatalogEntry entry_from_json(const nlohmann::json& j, const std::string& source);
nlohmann::ordered_json entry_to_json(const CatalogEntry& e);

/// Reads and validates a fan file. Throws ParseError or ValidationError.
toric::VarietyPtr load_fan(const std::filesystem::path& path);
CatalogEntry load_entry(const std::filesystem::path& path);

/// Every *.json in the directory, ordered by file name. A missing directory
/// is a ParseError; an empty one is an empty catalog.
Catalog load_catalog(const std::filesystem::path& dir);

/// Divisor JSON: {"coeffs": ["p/q", ...]} (integers are accepted too).
toric::TDivisor divisor_from_json(const nlohmann::json& j, const toric::VarietyPtr& x);
toric::TDivisor load_divisor(const std::filesystem::path& path, const toric::VarietyPtr& x);

/// Parses a whole file as JSON, turning syntax errors into ParseError.
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace torifan::harness
