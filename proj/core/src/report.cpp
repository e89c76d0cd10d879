#include "tensorion/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tensorion {

std::string_view status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::reported: return "reported";
    }
    return "reported";
}

Status parse_status(std::string_view s) {
    if (s == "pass") return Status::pass;
    if (s == "fail") return Status::fail;
    if (s == "reported") return Status::reported;
    throw std::invalid_argument("unknown status '" + std::string(s) + "'");
}

bool VerificationReport::well_formed() const {
    if (fingerprint.empty()) return false;
    if (status != Status::fail) return true;
    return witness.has_value() || (expected.has_value() && !actual.is_null());
}

VerificationReport compare(std::string check, nlohmann::json expected, std::string provenance, nlohmann::json actual,
                           std::string fingerprint) {
    VerificationReport r;
    r.check = std::move(check);
    r.status = expected == actual ? Status::pass : Status::fail;
    r.expected = std::move(expected);
    r.provenance = std::move(provenance);
    r.actual = std::move(actual);
    r.fingerprint = std::move(fingerprint);
    return r;
}

nlohmann::json to_json(const VerificationReport& r, bool canonical) {
    nlohmann::json j;
    j["check"] = r.check;
    j["status"] = status_name(r.status);
    j["actual"] = r.actual;
    j["fingerprint"] = r.fingerprint;
    if (r.expected) {
        j["expected"] = *r.expected;
        j["provenance"] = r.provenance;
    }
    if (r.witness) j["witness"] = *r.witness;
    if (!r.note.empty()) j["note"] = r.note;
    if (!canonical) j["wall_time"] = r.wall_time;
    return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
    VerificationReport r;
    r.check = j.at("check").get<std::string>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.actual = j.at("actual");
    r.fingerprint = j.at("fingerprint").get<std::string>();
    if (j.contains("expected")) {
        r.expected = j.at("expected");
        r.provenance = j.value("provenance", "");
    }
    if (j.contains("witness")) r.witness = j.at("witness");
    r.note = j.value("note", "");
    r.wall_time = j.value("wall_time", 0.0);
    return r;
}

int exit_code(const std::vector<VerificationReport>& reports) {
    return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.status == Status::fail; }) ? 1 : 0;
}

std::string summary_table(const std::vector<VerificationReport>& reports) {
    std::size_t width = 5;
    for (const auto& r : reports) width = std::max(width, r.check.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(8) << "status" << "  actual\n";
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& r : reports) {
        ++counts[static_cast<int>(r.status)];
        std::string actual = r.actual.dump();
        if (actual.size() > 60) actual = actual.substr(0, 57) + "...";
        out << std::setw(static_cast<int>(width)) << r.check << "  " << std::setw(8) << status_name(r.status) << "  "
            << actual << "\n";
    }
    out << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " reported\n";
    return out.str();
}

}  // namespace tensorion
