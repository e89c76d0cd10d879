#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tensorion/construct.hpp"
#include "tensorion/coset.hpp"
#include "tensorion/derivations.hpp"
#include "tensorion/jordan.hpp"
#include "tensorion/lie.hpp"
#include "tensorion/report.hpp"
#include "tensorion/reproduce.hpp"
#include "tensorion/serialize.hpp"
#include "tensorion/tits.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tensorion;

namespace {

constexpr int usage_error = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A path to an algebra JSON file, or a spec such as "C*H".
AlgebraTable table_arg(const std::string& arg) {
    if (fs::exists(arg)) return load_table(arg);
    return from_spec(arg);
}

DerivationChoice choice_arg(const std::string& s) {
    return s == "full" ? DerivationChoice::full : DerivationChoice::designated;
}

std::optional<Rational> rational_arg(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return Rational::parse(s);
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) std::cout << j.dump(2) << '\n';
    else write_json(out, j);
}

int finish(const std::vector<VerificationReport>& reports, const std::string& report_path) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    if (!report_path.empty()) write_json(report_path, arr, 2);
    std::cout << summary_table(reports);
    return exit_code(reports);
}

JacobiOptions jacobi_arg(const std::string& mode, const std::optional<std::uint64_t>& seed, std::size_t samples,
                         unsigned threads) {
    JacobiOptions o;
    o.sampled = mode == "sample";
    if (o.sampled && !seed) throw UsageError("--seed is required with --jacobi sample");
    o.seed = seed.value_or(0);
    o.samples = samples;
    o.threads = threads;
    return o;
}

json profile_json(const StructuralProfile& p) {
    return json{{"commutative", p.commutative.holds},
                {"associative", p.associative.holds},
                {"alternative", p.alternative.holds},
                {"flexible", p.flexible.holds},
                {"power_associative", p.power_associative.holds}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact structure constants for Hurwitz tensor algebras, Jordan algebras and Tits constructions"};
    app.require_subcommand(1);
    std::function<int()> action;

    // algebra build | inspect
    auto* algebra = app.add_subcommand("algebra", "Build or inspect algebra tables");
    algebra->require_subcommand(1);
    std::string spec, out, file;
    auto* a_build = algebra->add_subcommand("build", "Build a table from a spec such as C*H*O");
    a_build->add_option("--spec", spec, "Factors joined by *")->required();
    a_build->add_option("--out", out, "Output JSON (stdout when omitted)");
    a_build->callback([&] { action = [&] { emit(to_json(from_spec(spec)), out); return 0; }; });

    auto* a_inspect = algebra->add_subcommand("inspect", "Print dim, unit and structural profile");
    a_inspect->add_option("algebra", file, "Algebra JSON or spec")->required();
    a_inspect->callback([&] {
        action = [&] {
            const AlgebraTable a = table_arg(file);
            json j{{"name", a.name()}, {"dim", a.dim()}, {"nonzero_constants", a.nonzero_count()}};
            j["unit"] = a.unit() ? json(*a.unit()) : json(nullptr);
            j["profile"] = profile_json(structural_profile(a));
            j["nucleus_dim"] = nucleus(a).dim();
            j["center_dim"] = center(a).dim();
            std::cout << j.dump(2) << '\n';
            return 0;
        };
    });

    // jordan build | check
    auto* jordan = app.add_subcommand("jordan", "Hermitian 3x3 matrix algebras");
    jordan->require_subcommand(1);
    std::string coeff, involution = "auto", product = "jordan";
    auto* j_build = jordan->add_subcommand("build", "Build H3 over a coefficient algebra");
    j_build->add_option("--coeff", coeff, "Coefficient algebra JSON or spec")->required();
    j_build->add_option("--involution", involution, "auto, conjugation, gamma or gamma_tilde")
        ->check(CLI::IsMember({"auto", "conjugation", "gamma", "gamma_tilde"}));
    j_build->add_option("--product", product, "jordan or raw")->check(CLI::IsMember({"jordan", "raw"}));
    j_build->add_option("--out", out, "Output JSON (stdout when omitted)");
    auto build_herm_arg = [&] {
        const AlgebraTable c = table_arg(coeff);
        const HermProduct p = product == "raw" ? HermProduct::raw : HermProduct::jordan;
        if (involution == "auto") return build_herm(c, jordan_over(c).involution(), p);
        if (involution == "conjugation") return build_herm(c, standard_conjugation(c), p);
        return build_herm(c,
                          involution_gamma(c, involution == "gamma" ? GammaFlavor::real_diagonal
                                                                    : GammaFlavor::complex_diagonal),
                          p);
    };
    j_build->callback([&] { action = [&] { emit(to_json(build_herm_arg()), out); return 0; }; });

    std::optional<std::uint64_t> seed;
    std::string report_path;
    auto* j_check = jordan->add_subcommand("check", "Jordan identity, nuclearity and the existence criterion");
    auto* j_file = j_check->add_option("--algebra", file, "Hermitian algebra JSON from jordan build");
    j_check->add_option("--coeff", coeff, "Coefficient algebra JSON or spec")->excludes(j_file);
    j_check->add_option("--involution", involution, "auto, conjugation, gamma or gamma_tilde")
        ->check(CLI::IsMember({"auto", "conjugation", "gamma", "gamma_tilde"}));
    j_check->add_option("--seed", seed, "Seed of the random pre-filter");
    j_check->add_option("--report", report_path, "Write the reports as JSON");
    j_check->callback([&] {
        action = [&] {
            if (file.empty() && coeff.empty()) throw UsageError("jordan check needs --algebra or --coeff");
            const HermAlgebra h = file.empty() ? build_herm_arg() : herm_from_json(read_json(file));
            const auto check = jordan_identity_check(h, seed.value_or(0));
            const auto nuc = is_nuclear(h.coeff(), h.involution());
            std::vector<VerificationReport> reports;
            VerificationReport r;
            r.check = "jordan.identity";
            r.status = check.pass ? Status::pass : Status::fail;
            r.actual = json{{"pass", check.pass}, {"failure", check.failure}, {"tuples", check.tuples_checked}};
            json w = json::array();
            for (const auto& v : check.witness) w.push_back(format_element(h.table(), v));
            if (!check.pass) r.witness = w;
            r.fingerprint = "seed=" + std::to_string(seed.value_or(0));
            reports.push_back(r);
            VerificationReport n;
            n.check = "jordan.nuclear";
            n.status = Status::reported;
            n.actual = nuc.nuclear;
            if (!nuc.nuclear) n.witness = format_element(h.coeff(), nuc.witness);
            n.fingerprint = "exact";
            reports.push_back(n);
            return finish(reports, report_path);
        };
    });

    // derive
    auto* derive = app.add_subcommand("derive", "Derivation algebra of a table");
    derive->add_option("--algebra", file, "Algebra JSON or spec")->required();
    derive->add_option("--out", out, "Output JSON (stdout when omitted)");
    derive->callback([&] {
        action = [&] {
            const LieSubalgebra d = derivation_algebra(table_arg(file));
            std::cerr << "dim " << d.dim() << '\n';
            emit(to_json(d), out);
            return 0;
        };
    });

    // tits build | verify
    auto* tits = app.add_subcommand("tits", "Tits construction L3(A, J3(B))");
    tits->require_subcommand(1);
    std::string a_arg, b_arg, der_a = "designated", der_j, policy = "project", bullet_coeff;
    bool full_derivations = false;
    auto* t_build = tits->add_subcommand("build", "Assemble the bracket table");
    t_build->add_option("--A", a_arg, "Coefficient algebra JSON or spec")->required();
    t_build->add_option("--B", b_arg, "Jordan coefficient algebra JSON or spec")->required();
    t_build->add_option("--derA", der_a, "designated or full")->check(CLI::IsMember({"designated", "full"}));
    t_build->add_option("--derJ", der_j, "designated or full (defaults to --derA)")
        ->check(CLI::IsMember({"designated", "full"}));
    t_build->add_flag("--full-derivations", full_derivations, "Use full derivation algebras on both sides");
    t_build->add_option("--policy", policy, "strict or project")->check(CLI::IsMember({"strict", "project"}));
    t_build->add_option("--bullet-coeff", bullet_coeff, "Scalar of <X,Y>1 in the bullet product (p/q)");
    t_build->add_option("--out", out, "Output JSON (stdout when omitted)");
    t_build->callback([&] {
        action = [&] {
            if (full_derivations) der_a = der_j = "full";
            if (der_j.empty()) der_j = der_a;
            const AlgebraTable a = table_arg(a_arg);
            const HermAlgebra j = jordan_over(table_arg(b_arg));
            TitsConventions conv;
            conv.bullet_coeff = rational_arg(bullet_coeff);
            TitsOptions opts;
            opts.policy = policy == "strict" ? ClosurePolicy::strict : ClosurePolicy::project;
            const TitsAlgebra t = build_tits(a, coefficient_derivations(a, choice_arg(der_a)), j,
                                             jordan_derivations(j, choice_arg(der_j)), conv, opts);
            const auto& g = t.grading;
            std::cerr << "grading " << g.der_a << " + " << g.der_j << " + " << g.a_prime << "*" << g.j_prime << " = "
                      << g.total() << (t.closure.closed() ? ", closed" : ", closure fails") << '\n';
            emit(to_json(t), out);
            return t.table ? 0 : 1;
        };
    });

    std::string jacobi = "full";
    std::size_t samples = 100000;
    unsigned threads = 0;
    auto* t_verify = tits->add_subcommand("verify", "Antisymmetry and Jacobi on a bracket table");
    t_verify->add_option("--algebra", file, "Tits or Lie table JSON")->required();
    t_verify->add_option("--jacobi", jacobi, "full or sample")->check(CLI::IsMember({"full", "sample"}));
    t_verify->add_option("--seed", seed, "Required with --jacobi sample");
    t_verify->add_option("--samples", samples, "Triples drawn in sample mode");
    t_verify->add_option("--threads", threads, "Worker threads (0 = all cores)");
    t_verify->add_option("--report", report_path, "Write the reports as JSON");
    t_verify->callback([&] {
        action = [&] {
            const JacobiOptions opts = jacobi_arg(jacobi, seed, samples, threads);
            const json j = read_json(file);
            const AlgebraTable table = table_from_json(j);
            std::string fp = j.contains("tits") ? j["tits"].value("fingerprint", "") : "";
            fp += (fp.empty() ? "" : ";") + std::string("jacobi=") + jacobi;
            if (opts.sampled) fp += ";seed=" + std::to_string(opts.seed) + ";samples=" + std::to_string(samples);
            const JacobiReport jr = verify_jacobi(table, opts);
            std::vector<VerificationReport> reports;
            VerificationReport anti;
            anti.check = table.name() + ".antisymmetry";
            anti.status = jr.antisymmetric ? Status::pass : Status::fail;
            anti.actual = jr.antisymmetric;
            if (jr.antisymmetry_witness)
                anti.witness = json::array({jr.antisymmetry_witness->first, jr.antisymmetry_witness->second});
            anti.fingerprint = fp;
            reports.push_back(anti);
            VerificationReport jac;
            jac.check = table.name() + ".jacobi";
            jac.status = jr.jacobi ? Status::pass : Status::fail;
            jac.actual = json{{"jacobi", jr.jacobi}, {"triples", jr.triples_checked}, {"failing", jr.failing_triples}};
            if (jr.witness) {
                const auto& [x, y, z] = *jr.witness;
                jac.witness = json{{"triple", {x, y, z}}, {"jacobiator", format_element(table, jr.jacobiator)}};
            }
            jac.wall_time = jr.seconds;
            jac.fingerprint = fp;
            reports.push_back(jac);
            return finish(reports, report_path);
        };
    });

    // lie analyze
    auto* lie = app.add_subcommand("lie", "Lie algebra diagnostics");
    lie->require_subcommand(1);
    auto* l_analyze = lie->add_subcommand("analyze", "Killing inertia, derived algebra, center");
    l_analyze->add_option("--algebra", file, "Lie table JSON")->required();
    l_analyze->add_option("--out", out, "Output JSON (stdout when omitted)");
    l_analyze->callback([&] {
        action = [&] {
            const AlgebraTable l = load_table(file);
            const Inertia in = inertia(killing_form(l));
            json j{{"name", l.name()},
                   {"dim", l.dim()},
                   {"killing_inertia", {in.positive, in.zero, in.negative}},
                   {"killing_negative_definite", in.negative == l.dim()},
                   {"derived_dim", derived_algebra(l).dim()},
                   {"center_dim", center_lie(l).dim()},
                   {"semisimple", in.zero == 0}};
            emit(j, out);
            return 0;
        };
    });

    // coset audit
    auto* coset = app.add_subcommand("coset", "Coset dimension bookkeeping");
    coset->require_subcommand(1);
    std::string manifest;
    auto* c_audit = coset->add_subcommand("audit", "Check every identity of a dimension manifest");
    c_audit->add_option("--manifest", manifest, "Manifest JSON (shipped manifest when omitted)");
    c_audit->add_option("--report", report_path, "Write the reports as JSON");
    c_audit->callback([&] {
        action = [&] {
            const auto m = load_manifest(manifest.empty() ? default_manifest_path() : fs::path(manifest));
            auto reports = dimension_audit(m);
            for (auto& r : representation_dim_audit(m)) reports.push_back(std::move(r));
            return finish(reports, report_path);
        };
    });

    // reproduce
    auto* repro = app.add_subcommand("reproduce", "Run every check and write a consolidated report");
    std::string out_dir = "tensorion-report", cache_dir;
    bool canonical = false, no_cache = false;
    repro->add_option("--out", out_dir, "Output directory");
    repro->add_flag("--canonical", canonical, "Omit timings and cache statistics");
    repro->add_option("--jacobi", jacobi, "full or sample")->check(CLI::IsMember({"full", "sample"}));
    repro->add_option("--seed", seed, "Required with --jacobi sample");
    repro->add_option("--samples", samples, "Triples drawn in sample mode");
    repro->add_option("--threads", threads, "Worker threads (0 = all cores)");
    repro->add_option("--bullet-coeff", bullet_coeff, "Scalar of <X,Y>1 in the bullet product (p/q)");
    repro->add_option("--manifest", manifest, "Dimension manifest (shipped manifest when omitted)");
    repro->add_option("--cache-dir", cache_dir, "Cache location (TENSORION_CACHE_DIR, else <out>/cache)");
    repro->add_flag("--no-cache", no_cache, "Recompute everything");
    repro->callback([&] {
        action = [&] {
            if (jacobi == "sample" && !seed) throw UsageError("--seed is required with --jacobi sample");
            ReproduceConfig config;
            config.out_dir = out_dir;
            config.canonical = canonical;
            config.jacobi = jacobi == "sample" ? JacobiMode::sample : JacobiMode::full;
            config.seed = seed;
            config.samples = samples;
            config.threads = threads;
            config.conventions.bullet_coeff = rational_arg(bullet_coeff);
            config.manifest = manifest;
            if (!no_cache)
                config.cache_dir = cache_dir.empty() ? default_cache_dir(fs::path(out_dir) / "cache") : fs::path(cache_dir);
            const ReproduceResult result = reproduce(config);
            std::cout << result.summary;
            std::cerr << "cache: " << result.cache_hits << " hits, " << result.cache_misses << " misses\n";
            return result.exit_code();
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : usage_error;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    }
}
