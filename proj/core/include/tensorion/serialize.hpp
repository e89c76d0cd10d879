#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "tensorion/algebra.hpp"
#include "tensorion/derivations.hpp"
#include "tensorion/jordan.hpp"
#include "tensorion/tits.hpp"

namespace tensorion {

// {"name", "dim", "labels", "unit", "sc": [[i, j, k, "p/q"], ...], "factors"}
// with rationals as lowest-terms strings; reading back is exact.
nlohmann::json to_json(const AlgebraTable& a);
AlgebraTable table_from_json(const nlohmann::json& j);

// Table JSON plus "coeff", "involution" and "grading" blocks.
nlohmann::json to_json(const HermAlgebra& h);
// Rebuilds from the coefficient table and involution and checks the stored table.
HermAlgebra herm_from_json(const nlohmann::json& j);

// Bracket table JSON plus a "realization" block of sparse operator matrices.
nlohmann::json to_json(const LieSubalgebra& l);
LieSubalgebra lie_from_json(const nlohmann::json& j);

// Bracket table JSON (when built) plus a "tits" block with grading,
// conventions and closure verdicts.
nlohmann::json to_json(const TitsAlgebra& t);
TitsAlgebra tits_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
// Writes atomically through a sibling temporary file.
void write_json(const std::filesystem::path& path, const nlohmann::json& j, int indent = -1);

// Reads any table-shaped JSON (plain, Hermitian, Lie or Tits) as an AlgebraTable.
AlgebraTable load_table(const std::filesystem::path& path);

}  // namespace tensorion
