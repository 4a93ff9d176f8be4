#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "k3cone/lattice.hpp"

namespace k3cone {

/// Contents of a lattice input file:
///   {"gram": [[int,...],...], "ample": [int,...] (optional), "name": string (optional)}
/// Integers may be JSON numbers or decimal strings (for values beyond 64 bits).
struct LatticeInput {
  GramLattice lattice;
  std::optional<LatticeVector> ample;
};

LatticeInput parse_lattice_json(const nlohmann::json& j, const std::string& fallback_name = {});
LatticeInput load_lattice_file(const std::filesystem::path& path);

Integer integer_from_json(const nlohmann::json& j);
/// Number when the value fits in int64, decimal string otherwise.
nlohmann::json integer_to_json(const Integer& x);
nlohmann::json vector_to_json(const LatticeVector& v);
LatticeVector vector_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const IntMatrix& m);

}  // namespace k3cone
