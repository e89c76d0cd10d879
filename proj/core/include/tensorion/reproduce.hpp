#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tensorion/derivations.hpp"
#include "tensorion/report.hpp"
#include "tensorion/tits.hpp"

namespace tensorion {

// 64-bit FNV-1a; stable across platforms, used for content-addressed cache keys.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex_key(std::uint64_t h);

// Disk cache of derivation algebras and Tits tables keyed by the content of
// their inputs. A disabled cache computes everything afresh.
class TableCache {
public:
    TableCache() = default;
    explicit TableCache(std::filesystem::path dir);

    [[nodiscard]] bool enabled() const noexcept { return dir_.has_value(); }
    [[nodiscard]] std::size_t hits() const noexcept { return hits_; }
    [[nodiscard]] std::size_t misses() const noexcept { return misses_; }

    LieSubalgebra derivations(const AlgebraTable& a);
    [[nodiscard]] Deriver deriver();

    // key must cover every input and convention the table depends on.
    TitsAlgebra tits(const std::string& key, const std::function<TitsAlgebra()>& build);

private:
    [[nodiscard]] std::optional<nlohmann::json> load(const std::string& file);
    void store(const std::string& file, const nlohmann::json& j);

    std::optional<std::filesystem::path> dir_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

// TENSORION_CACHE_DIR when set, otherwise fallback.
std::filesystem::path default_cache_dir(const std::filesystem::path& fallback);

enum class JacobiMode { full, sample };

struct ReproduceConfig {
    std::filesystem::path out_dir = "tensorion-report";
    std::optional<std::filesystem::path> cache_dir;  // nullopt disables caching
    std::filesystem::path manifest;                  // empty = shipped manifest
    bool canonical = false;
    JacobiMode jacobi = JacobiMode::full;
    std::optional<std::uint64_t> seed;  // required for JacobiMode::sample
    std::size_t samples = 100000;
    unsigned threads = 0;
    TitsConventions conventions;

    // Everything results depend on; thread count and paths excluded.
    [[nodiscard]] std::string fingerprint() const;
};

struct ReproduceResult {
    std::vector<VerificationReport> reports;
    nlohmann::json document;
    std::string summary;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;

    [[nodiscard]] int exit_code() const { return tensorion::exit_code(reports); }
};

// Runs every check without touching the file system except for the cache.
// Throws std::invalid_argument for an unusable configuration.
ReproduceResult run_checks(const ReproduceConfig& config);

// run_checks, then writes report.json and summary.txt into out_dir.
ReproduceResult reproduce(const ReproduceConfig& config);

}  // namespace tensorion
