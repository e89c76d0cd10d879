#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tensorion/report.hpp"

namespace tensorion {

class ManifestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A product of signed integers; a single integer is a one-factor product.
struct DimensionTerm {
    std::vector<std::int64_t> factors;
    [[nodiscard]] std::int64_t value() const;
};

enum class Relation { eq, le, lt };

// sum(lhs) <relation> sum(rhs)
struct DimensionIdentity {
    std::string name;
    std::string kind = "dimension";  // dimension | representation
    Relation relation = Relation::eq;
    std::vector<DimensionTerm> lhs;
    std::vector<DimensionTerm> rhs;

    [[nodiscard]] std::int64_t lhs_value() const;
    [[nodiscard]] std::int64_t rhs_value() const;
    [[nodiscard]] bool holds() const;
};

// Manifest: a JSON array of {"name", "lhs", "rhs"} with optional "relation"
// (eq, le, lt) and "kind" (dimension, representation). Terms are integers or
// arrays of integers read as products. Throws ManifestError when malformed.
std::vector<DimensionIdentity> parse_manifest(const nlohmann::json& j);
std::vector<DimensionIdentity> load_manifest(const std::filesystem::path& path);
nlohmann::json manifest_to_json(const std::vector<DimensionIdentity>& manifest);

// Location of the shipped manifest: TENSORION_DATA_DIR, the source tree, then the install data dir.
std::filesystem::path default_manifest_path();

// One report per identity of the given kind.
std::vector<VerificationReport> dimension_audit(const std::vector<DimensionIdentity>& manifest);
std::vector<VerificationReport> representation_dim_audit(const std::vector<DimensionIdentity>& manifest);

}  // namespace tensorion
