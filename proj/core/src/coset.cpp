#include "tensorion/coset.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

namespace tensorion {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ManifestError("dimension term overflows");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ManifestError("dimension sum overflows");
    return r;
}

std::int64_t sum(const std::vector<DimensionTerm>& terms) {
    std::int64_t s = 0;
    for (const auto& t : terms) s = checked_add(s, t.value());
    return s;
}

std::string_view relation_name(Relation r) {
    switch (r) {
        case Relation::eq: return "eq";
        case Relation::le: return "le";
        case Relation::lt: return "lt";
    }
    return "eq";
}

std::vector<DimensionTerm> parse_terms(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ManifestError(where + " must be a nonempty array");
    std::vector<DimensionTerm> out;
    for (const auto& t : j) {
        DimensionTerm term;
        if (t.is_number_integer()) {
            term.factors.push_back(t.get<std::int64_t>());
        } else if (t.is_array() && !t.empty()) {
            for (const auto& f : t) {
                if (!f.is_number_integer()) throw ManifestError(where + ": product factors must be integers");
                term.factors.push_back(f.get<std::int64_t>());
            }
        } else {
            throw ManifestError(where + ": terms must be integers or nonempty integer arrays");
        }
        out.push_back(std::move(term));
    }
    return out;
}

nlohmann::json terms_to_json(const std::vector<DimensionTerm>& terms) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : terms) {
        if (t.factors.size() == 1) out.push_back(t.factors.front());
        else out.push_back(t.factors);
    }
    return out;
}

std::vector<VerificationReport> audit(const std::vector<DimensionIdentity>& manifest, std::string_view kind) {
    std::vector<VerificationReport> out;
    for (const auto& id : manifest) {
        if (id.kind != kind) continue;
        VerificationReport r;
        r.check = "coset." + id.name;
        r.status = id.holds() ? Status::pass : Status::fail;
        r.expected = nlohmann::json{{"relation", relation_name(id.relation)}, {"rhs", id.rhs_value()}};
        r.provenance = "published";
        r.actual = nlohmann::json{{"lhs", id.lhs_value()}, {"rhs", id.rhs_value()}};
        r.fingerprint = "manifest:" + std::string(kind);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::int64_t DimensionTerm::value() const {
    std::int64_t v = 1;
    for (auto f : factors) v = checked_mul(v, f);
    return v;
}

std::int64_t DimensionIdentity::lhs_value() const { return sum(lhs); }
std::int64_t DimensionIdentity::rhs_value() const { return sum(rhs); }

bool DimensionIdentity::holds() const {
    const auto l = lhs_value();
    const auto r = rhs_value();
    switch (relation) {
        case Relation::eq: return l == r;
        case Relation::le: return l <= r;
        case Relation::lt: return l < r;
    }
    return false;
}

std::vector<DimensionIdentity> parse_manifest(const nlohmann::json& j) {
    if (!j.is_array()) throw ManifestError("manifest must be a JSON array");
    std::vector<DimensionIdentity> out;
    std::set<std::string> names;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        const std::string where = "manifest entry " + std::to_string(i);
        if (!e.is_object()) throw ManifestError(where + " is not an object");
        if (!e.contains("name") || !e["name"].is_string()) throw ManifestError(where + " needs a string name");
        DimensionIdentity id;
        id.name = e["name"].get<std::string>();
        if (!names.insert(id.name).second) throw ManifestError("duplicate manifest entry '" + id.name + "'");
        if (!e.contains("lhs") || !e.contains("rhs")) throw ManifestError(where + " needs lhs and rhs");
        id.lhs = parse_terms(e["lhs"], id.name + ".lhs");
        id.rhs = parse_terms(e["rhs"], id.name + ".rhs");
        const std::string rel = e.value("relation", "eq");
        if (rel == "eq") id.relation = Relation::eq;
        else if (rel == "le") id.relation = Relation::le;
        else if (rel == "lt") id.relation = Relation::lt;
        else throw ManifestError(id.name + ": unknown relation '" + rel + "'");
        id.kind = e.value("kind", "dimension");
        if (id.kind != "dimension" && id.kind != "representation")
            throw ManifestError(id.name + ": unknown kind '" + id.kind + "'");
        out.push_back(std::move(id));
    }
    return out;
}

std::vector<DimensionIdentity> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError(path.string() + ": " + e.what());
    }
    return parse_manifest(j);
}

nlohmann::json manifest_to_json(const std::vector<DimensionIdentity>& manifest) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& id : manifest) {
        nlohmann::json e;
        e["name"] = id.name;
        e["kind"] = id.kind;
        e["relation"] = relation_name(id.relation);
        e["lhs"] = terms_to_json(id.lhs);
        e["rhs"] = terms_to_json(id.rhs);
        out.push_back(std::move(e));
    }
    return out;
}

std::filesystem::path default_manifest_path() {
    if (const char* env = std::getenv("TENSORION_DATA_DIR")) return std::filesystem::path(env) / "dixon_rosenfeld_dims.json";
    const auto source = std::filesystem::path(TENSORION_DATA_DIR) / "dixon_rosenfeld_dims.json";
    if (std::filesystem::exists(source)) return source;
    return std::filesystem::path(TENSORION_INSTALL_DATA_DIR) / "dixon_rosenfeld_dims.json";
}

std::vector<VerificationReport> dimension_audit(const std::vector<DimensionIdentity>& manifest) {
    return audit(manifest, "dimension");
}

std::vector<VerificationReport> representation_dim_audit(const std::vector<DimensionIdentity>& manifest) {
    return audit(manifest, "representation");
}

}  // namespace tensorion
