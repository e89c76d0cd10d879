#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <map>

#include "support/generators.hpp"
#include "tensorion/coset.hpp"

using namespace tensorion;
using nlohmann::json;

namespace {

// Independent evaluation of one side of a manifest entry.
std::int64_t side(const json& terms) {
    std::int64_t s = 0;
    for (const auto& t : terms) {
        if (t.is_number_integer()) {
            s += t.get<std::int64_t>();
        } else {
            std::int64_t p = 1;
            for (const auto& f : t) p *= f.get<std::int64_t>();
            s += p;
        }
    }
    return s;
}

json entry(std::string name, json lhs, json rhs) { return json{{"name", std::move(name)}, {"lhs", lhs}, {"rhs", rhs}}; }

}  // namespace

TEST(Manifest, ShippedIdentitiesHoldAgainstDirectEvaluation) {
    const json raw = [] {
        std::ifstream in(default_manifest_path());
        return json::parse(in);
    }();
    const auto manifest = parse_manifest(raw);
    ASSERT_EQ(manifest.size(), raw.size());
    ASSERT_GE(manifest.size(), 60u);
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const std::int64_t l = side(raw[i]["lhs"]), r = side(raw[i]["rhs"]);
        const std::string rel = raw[i].value("relation", "eq");
        const bool holds = rel == "eq" ? l == r : rel == "le" ? l <= r : l < r;
        EXPECT_TRUE(holds) << manifest[i].name;
        EXPECT_EQ(manifest[i].lhs_value(), l);
        EXPECT_EQ(manifest[i].rhs_value(), r);
        EXPECT_EQ(manifest[i].holds(), holds);
    }
}

TEST(Manifest, KnownEntries) {
    const auto manifest = load_manifest(default_manifest_path());
    std::map<std::string, const DimensionIdentity*> by_name;
    for (const auto& id : manifest) by_name[id.name] = &id;
    for (const char* name : {"plane_I.isometry", "plane_II.tits", "plane_III.isometry"}) ASSERT_TRUE(by_name.count(name)) << name;
    EXPECT_EQ(by_name["plane_I.isometry"]->rhs_value(), 237);
    EXPECT_EQ(by_name["plane_II.tits"]->rhs_value(), 199);
    EXPECT_EQ(by_name["plane_III.isometry"]->rhs_value(), 245);
}

TEST(Manifest, ParseErrors) {
    EXPECT_THROW(parse_manifest(json::object()), ManifestError);
    EXPECT_THROW(parse_manifest(json::array({1})), ManifestError);
    EXPECT_THROW(parse_manifest(json::array({json{{"lhs", {1}}, {"rhs", {1}}}})), ManifestError);
    EXPECT_THROW(parse_manifest(json::array({json{{"name", "x"}, {"rhs", {1}}}})), ManifestError);
    EXPECT_THROW(parse_manifest(json::array({entry("x", json::array(), {1})})), ManifestError);
    EXPECT_THROW(parse_manifest(json::array({entry("x", {"a"}, {1})})), ManifestError);
    EXPECT_THROW(parse_manifest(json::array({entry("x", {json::array({2, "b"})}, {1})})), ManifestError);
    EXPECT_THROW(parse_manifest(json::array({entry("x", {1}, {1}), entry("x", {2}, {2})})), ManifestError);
    json rel = entry("x", {1}, {1});
    rel["relation"] = "ge";
    EXPECT_THROW(parse_manifest(json::array({rel})), ManifestError);
    json kind = entry("x", {1}, {1});
    kind["kind"] = "volume";
    EXPECT_THROW(parse_manifest(json::array({kind})), ManifestError);
    EXPECT_THROW(load_manifest("/nonexistent/manifest.json"), std::runtime_error);
}

TEST(Manifest, OverflowIsReported) {
    const auto m = parse_manifest(json::array({entry("big", {json::array({INT64_C(1) << 40, INT64_C(1) << 40})}, {1})}));
    EXPECT_THROW((void)m[0].lhs_value(), ManifestError);
}

TEST(Manifest, RelationsAndSignedTerms) {
    json le = entry("le", {json::array({2, 3}), -1}, {5});
    le["relation"] = "le";
    json lt = entry("lt", {5}, {5});
    lt["relation"] = "lt";
    const auto m = parse_manifest(json::array({le, lt, entry("eq", {json::array({-2, -3})}, {6})}));
    EXPECT_TRUE(m[0].holds());
    EXPECT_FALSE(m[1].holds());
    EXPECT_TRUE(m[2].holds());
    EXPECT_EQ(manifest_to_json(m)[0]["lhs"], json::array({json::array({2, 3}), -1}));
    EXPECT_EQ(parse_manifest(manifest_to_json(m))[2].lhs_value(), 6);
}

TEST(Audit, FailuresCarryBothSides) {
    json rep = entry("rep", {3}, {4});
    rep["kind"] = "representation";
    const auto m = parse_manifest(json::array({entry("good", {1, 2}, {3}), entry("bad", {1}, {2}), rep}));
    const auto dims = dimension_audit(m);
    ASSERT_EQ(dims.size(), 2u);
    EXPECT_EQ(dims[0].check, "coset.good");
    EXPECT_EQ(dims[0].status, Status::pass);
    EXPECT_EQ(dims[1].status, Status::fail);
    EXPECT_TRUE(dims[1].well_formed());
    EXPECT_EQ(dims[1].actual["lhs"], 1);
    const auto reps = representation_dim_audit(m);
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0].status, Status::fail);
}

TEST(AuditProperty, VerdictsIndependentOfManifestOrder) {
    std::ifstream in(default_manifest_path());
    const json raw = json::parse(in);
    auto verdicts = [](const json& j) {
        std::map<std::string, Status> out;
        for (const auto& r : dimension_audit(parse_manifest(j))) out[r.check] = r.status;
        for (const auto& r : representation_dim_audit(parse_manifest(j))) out[r.check] = r.status;
        return out;
    };
    const auto base = verdicts(raw);
    EXPECT_EQ(base.size(), raw.size());
    gen::Source src(6);
    for (int t = 0; t < 5; ++t) {
        const auto p = src.permutation(raw.size());
        json shuffled = json::array();
        for (auto i : p) shuffled.push_back(raw[i]);
        EXPECT_EQ(verdicts(shuffled), base);
    }
}
