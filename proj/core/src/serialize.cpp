#include "tensorion/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace tensorion {

namespace {

using nlohmann::json;

json rational_json(const Rational& q) { return q.str(); }

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) throw std::invalid_argument("expected a rational string");
    return Rational::parse(j.get<std::string>());
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (const auto& v : m.row(i)) row.push_back(rational_json(v));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from(const json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j.at(i).size() != cols) throw std::invalid_argument("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from(j.at(i).at(c));
    }
    return m;
}

json sparse_operator_json(const LinearOperator& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(i, c).is_zero()) entries.push_back(json::array({i, c, rational_json(m(i, c))}));
    return entries;
}

Vector flat_operator_from(const json& entries, std::size_t n) {
    Vector flat = zero_vector(n * n);
    for (const auto& e : entries) {
        const auto i = e.at(0).get<std::size_t>();
        const auto c = e.at(1).get<std::size_t>();
        if (i >= n || c >= n) throw std::invalid_argument("operator entry out of range");
        flat[i * n + c] = rational_from(e.at(2));
    }
    return flat;
}

json pair_json(const std::optional<std::pair<std::size_t, std::size_t>>& p) {
    if (!p) return nullptr;
    return json::array({p->first, p->second});
}

std::optional<std::pair<std::size_t, std::size_t>> pair_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return std::pair{j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()};
}

json span_closure_json(const SpanClosure& c) {
    json j{{"closed", c.closed}, {"failures", c.failures}, {"witness", pair_json(c.witness)},
           {"enlargement_capped", c.enlargement_capped}};
    j["enlargement"] = c.enlargement ? json(*c.enlargement) : json(nullptr);
    return j;
}

SpanClosure span_closure_from(const json& j) {
    SpanClosure c;
    c.closed = j.at("closed").get<bool>();
    c.failures = j.at("failures").get<std::size_t>();
    c.witness = pair_from(j.at("witness"));
    if (!j.at("enlargement").is_null()) c.enlargement = j.at("enlargement").get<std::size_t>();
    c.enlargement_capped = j.at("enlargement_capped").get<bool>();
    return c;
}

std::string_view product_name(HermProduct p) { return p == HermProduct::jordan ? "jordan" : "raw"; }

HermProduct product_from(const std::string& s) {
    if (s == "jordan") return HermProduct::jordan;
    if (s == "raw") return HermProduct::raw;
    throw std::invalid_argument("unknown Hermitian product '" + s + "'");
}

std::string_view policy_name(ClosurePolicy p) { return p == ClosurePolicy::strict ? "strict" : "project"; }

ClosurePolicy policy_from(const std::string& s) {
    if (s == "strict") return ClosurePolicy::strict;
    if (s == "project") return ClosurePolicy::project;
    throw std::invalid_argument("unknown closure policy '" + s + "'");
}

}  // namespace

json to_json(const AlgebraTable& a) {
    json sc = json::array();
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [k, v] : a.product(i, j)) sc.push_back(json::array({i, j, k, rational_json(v)}));
    json factors = json::array();
    for (const auto& f : a.factors()) factors.push_back(json{{"name", f.name}, {"dim", f.dim}});
    json out{{"name", a.name()}, {"dim", n}, {"labels", a.labels()}, {"sc", std::move(sc)}};
    out["unit"] = a.unit() ? json(*a.unit()) : json(nullptr);
    if (!a.factors().empty()) out["factors"] = std::move(factors);
    return out;
}

AlgebraTable table_from_json(const json& j) {
    try {
        const auto n = j.at("dim").get<std::size_t>();
        auto labels = j.at("labels").get<std::vector<std::string>>();
        if (labels.size() != n) throw std::invalid_argument("label count differs from dim");
        std::optional<std::size_t> unit;
        if (j.contains("unit") && !j.at("unit").is_null()) unit = j.at("unit").get<std::size_t>();
        std::vector<std::vector<SparseVector::Entry>> entries(n * n);
        for (const auto& e : j.at("sc")) {
            if (!e.is_array() || e.size() != 4) throw std::invalid_argument("sc entries are [i, j, k, value]");
            const auto a = e.at(0).get<std::size_t>();
            const auto b = e.at(1).get<std::size_t>();
            const auto k = e.at(2).get<std::uint32_t>();
            if (a >= n || b >= n || k >= n) throw std::invalid_argument("sc index out of range");
            entries[a * n + b].emplace_back(k, rational_from(e.at(3)));
        }
        std::vector<SparseVector> products;
        products.reserve(n * n);
        for (auto& e : entries) products.emplace_back(std::move(e));
        std::vector<Factor> factors;
        if (j.contains("factors"))
            for (const auto& f : j.at("factors"))
                factors.push_back({f.at("name").get<std::string>(), f.at("dim").get<std::size_t>()});
        return AlgebraTable(j.at("name").get<std::string>(), std::move(labels), unit, std::move(products),
                            std::move(factors));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed algebra JSON: ") + e.what());
    }
}

json to_json(const HermAlgebra& h) {
    json out = to_json(h.table());
    out["product"] = product_name(h.product_kind());
    out["coeff"] = to_json(h.coeff());
    out["involution"] = json{{"name", h.involution().name}, {"matrix", matrix_json(h.involution().map)}};
    json diagonal = json::array();
    json off_diagonal = json::array();
    for (std::size_t b = 0; b < h.basis().size(); ++b)
        (h.basis()[b].diagonal ? diagonal : off_diagonal).push_back(h.table().labels()[b]);
    out["grading"] = json{{"diagonal", std::move(diagonal)}, {"off_diagonal", std::move(off_diagonal)}};
    return out;
}

HermAlgebra herm_from_json(const json& j) {
    AlgebraTable coeff = table_from_json(j.at("coeff"));
    const auto& inv = j.at("involution");
    Involution sigma = make_involution(coeff, inv.at("name").get<std::string>(), matrix_from(inv.at("matrix")));
    HermAlgebra h(std::move(coeff), std::move(sigma), product_from(j.at("product").get<std::string>()));
    if (h.table() != table_from_json(j)) throw std::invalid_argument("stored Hermitian table does not match its inputs");
    return h;
}

json to_json(const LieSubalgebra& l) {
    json out = to_json(l.bracket());
    json ops = json::array();
    for (const auto& op : l.operators()) ops.push_back(sparse_operator_json(op));
    out["realization"] = json{{"acting_dim", l.acting_dim()}, {"operators", std::move(ops)}};
    return out;
}

LieSubalgebra lie_from_json(const json& j) {
    const auto& r = j.at("realization");
    const auto n = r.at("acting_dim").get<std::size_t>();
    std::vector<Vector> rows;
    for (const auto& op : r.at("operators")) rows.push_back(flat_operator_from(op, n));
    LieSubalgebra l(j.at("name").get<std::string>(), n, Subspace::span(n * n, rows));
    if (l.dim() != rows.size()) throw std::invalid_argument("realization operators are dependent");
    return l;
}

json to_json(const TitsAlgebra& t) {
    json out = t.table ? to_json(*t.table) : json{{"name", t.name}};
    const auto& g = t.grading;
    const auto& c = t.conventions;
    json conventions{{"alpha", rational_json(c.alpha)},
                     {"beta", rational_json(c.beta)},
                     {"gamma", rational_json(c.gamma)},
                     {"jordan_scale", rational_json(c.jordan_scale)}};
    conventions["bullet_coeff"] = c.bullet_coeff ? rational_json(*c.bullet_coeff) : json(nullptr);
    out["tits"] = json{
        {"name", t.name},
        {"policy", policy_name(t.policy)},
        {"coeff", t.coeff_name},
        {"jordan", t.jordan_name},
        {"der_a", t.der_a_name},
        {"der_j", t.der_j_name},
        {"grading", json{{"der_a", g.der_a}, {"der_j", g.der_j}, {"a_prime", g.a_prime}, {"j_prime", g.j_prime},
                         {"tensor", g.tensor()}, {"total", g.total()}}},
        {"conventions", std::move(conventions)},
        {"fingerprint", c.fingerprint()},
        {"closure", json{{"der_a", span_closure_json(t.closure.der_a)},
                         {"der_j", span_closure_json(t.closure.der_j)},
                         {"coefficient_action_stable", t.closure.coefficient_action_stable},
                         {"jordan_action_stable", t.closure.jordan_action_stable},
                         {"bullet_trace_zero", t.closure.bullet_trace_zero},
                         {"closed", t.closure.closed()}}},
    };
    return out;
}

TitsAlgebra tits_from_json(const json& j) {
    const auto& b = j.at("tits");
    TitsAlgebra t;
    t.name = b.at("name").get<std::string>();
    t.policy = policy_from(b.at("policy").get<std::string>());
    t.coeff_name = b.at("coeff").get<std::string>();
    t.jordan_name = b.at("jordan").get<std::string>();
    t.der_a_name = b.at("der_a").get<std::string>();
    t.der_j_name = b.at("der_j").get<std::string>();
    const auto& g = b.at("grading");
    t.grading = {g.at("der_a").get<std::size_t>(), g.at("der_j").get<std::size_t>(), g.at("a_prime").get<std::size_t>(),
                 g.at("j_prime").get<std::size_t>()};
    const auto& c = b.at("conventions");
    t.conventions.alpha = rational_from(c.at("alpha"));
    t.conventions.beta = rational_from(c.at("beta"));
    t.conventions.gamma = rational_from(c.at("gamma"));
    t.conventions.jordan_scale = rational_from(c.at("jordan_scale"));
    if (!c.at("bullet_coeff").is_null()) t.conventions.bullet_coeff = rational_from(c.at("bullet_coeff"));
    const auto& cl = b.at("closure");
    t.closure.der_a = span_closure_from(cl.at("der_a"));
    t.closure.der_j = span_closure_from(cl.at("der_j"));
    t.closure.coefficient_action_stable = cl.at("coefficient_action_stable").get<bool>();
    t.closure.jordan_action_stable = cl.at("jordan_action_stable").get<bool>();
    t.closure.bullet_trace_zero = cl.at("bullet_trace_zero").get<bool>();
    if (j.contains("sc")) {
        t.table = table_from_json(j);
        if (t.table->dim() != t.grading.total()) throw std::invalid_argument("Tits table dim differs from its grading");
    }
    return t;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j, int indent) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << j.dump(indent) << '\n';
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

AlgebraTable load_table(const std::filesystem::path& path) { return table_from_json(read_json(path)); }

}  // namespace tensorion
