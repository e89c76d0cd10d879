#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace tensorion {

enum class Status { pass, fail, reported };

std::string_view status_name(Status s);
Status parse_status(std::string_view s);

// Machine-readable outcome of one named check.
struct VerificationReport {
    std::string check;
    Status status = Status::reported;
    std::optional<nlohmann::json> expected;
    std::string provenance;  // published | derived | trivial; empty without an expectation
    nlohmann::json actual;
    std::optional<nlohmann::json> witness;
    std::string note;
    double wall_time = 0;      // seconds; omitted in canonical output
    std::string fingerprint;   // conventions, coefficients and seeds the result depends on

    // A failed check carries a witness or both sides of the comparison.
    [[nodiscard]] bool well_formed() const;
};

// pass when actual == expected, fail otherwise.
VerificationReport compare(std::string check, nlohmann::json expected, std::string provenance, nlohmann::json actual,
                           std::string fingerprint);

nlohmann::json to_json(const VerificationReport& r, bool canonical = false);
VerificationReport report_from_json(const nlohmann::json& j);

// 0 when no check failed, 1 otherwise.
int exit_code(const std::vector<VerificationReport>& reports);

// Fixed-width human-readable table, one line per check plus a totals line.
std::string summary_table(const std::vector<VerificationReport>& reports);

}  // namespace tensorion
