#include "tensorion/tits.hpp"

#include <sstream>
#include <stdexcept>

#include "tensorion/construct.hpp"

namespace tensorion {

std::string TitsConventions::fingerprint() const {
    std::ostringstream out;
    out << "alpha=" << alpha << ";beta=" << beta << ";gamma=" << gamma << ";jordan_scale=" << jordan_scale
        << ";bullet_coeff=" << bullet() << ";inner=trace_of_symmetrized;coeff_form=orthonormal";
    return out.str();
}

Block TitsAlgebra::block_of(std::size_t index) const {
    if (index < grading.der_a) return Block::der_a;
    if (index < grading.der_a + grading.der_j) return Block::der_j;
    if (index < grading.total()) return Block::tensor;
    throw std::out_of_range("TitsAlgebra::block_of: index out of range");
}

std::size_t TitsAlgebra::tensor_index(std::size_t a_prime, std::size_t j_prime) const {
    if (a_prime >= grading.a_prime || j_prime >= grading.j_prime)
        throw std::out_of_range("TitsAlgebra::tensor_index: index out of range");
    return grading.der_a + grading.der_j + a_prime * grading.j_prime + j_prime;
}

Subspace prime_space(const AlgebraTable& a) {
    if (!a.unit()) throw std::invalid_argument("prime_space needs a unital algebra");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (i != *a.unit()) rows.push_back(unit_vector(a.dim(), i));
    }
    return Subspace::span(a.dim(), std::move(rows));
}

namespace {

// Expresses operators in the basis of a derivation span, exactly when possible
// and by Frobenius-orthogonal projection otherwise.
class SpanSolver {
public:
    explicit SpanSolver(const LieSubalgebra& s) : s_(s) {
        const auto& ops = s.operators();
        gram_ = Matrix(ops.size(), ops.size());
        for (std::size_t p = 0; p < ops.size(); ++p)
            for (std::size_t q = p; q < ops.size(); ++q) {
                gram_(p, q) = dot(ops[p].flat(), ops[q].flat());
                gram_(q, p) = gram_(p, q);
            }
    }

    [[nodiscard]] std::optional<Vector> exact(const LinearOperator& m) const { return s_.coordinates(m); }

    [[nodiscard]] Vector project(const LinearOperator& m) const {
        const auto& ops = s_.operators();
        Vector rhs(ops.size());
        for (std::size_t p = 0; p < ops.size(); ++p) rhs[p] = dot(ops[p].flat(), m.flat());
        return solve(gram_, rhs);
    }

private:
    const LieSubalgebra& s_;
    Matrix gram_;
};

// Coordinates in a subspace; falls back to the coordinates of fallback(v) and
// clears ok when v lies outside.
template <class Fallback>
Vector coordinates_or(const Subspace& s, const Vector& v, bool& ok, Fallback fallback) {
    if (auto c = s.coordinates(v)) return *c;
    ok = false;
    auto c = s.coordinates(fallback(v));
    if (!c) throw std::logic_error("coordinates_or: fallback left the subspace");
    return *c;
}

void record(SpanClosure& c, std::size_t first, std::size_t second) {
    c.closed = false;
    ++c.failures;
    if (!c.witness) c.witness = std::make_pair(first, second);
}

void measure(SpanClosure& c, const LieSubalgebra& span, std::vector<LinearOperator> offenders, std::size_t cap) {
    if (c.closed) {
        c.enlargement = span.dim();
        return;
    }
    std::vector<LinearOperator> gens = span.operators();
    for (auto& m : offenders) gens.push_back(std::move(m));
    c.enlargement = lie_closure_dim(span.acting_dim(), gens, cap);
    c.enlargement_capped = !c.enlargement;
}

}  // namespace

TitsAlgebra build_tits(const AlgebraTable& a, const LieSubalgebra& der_a, const HermAlgebra& j,
                       const LieSubalgebra& der_j, const TitsConventions& conv, const TitsOptions& options) {
    if (der_a.acting_dim() != a.dim() && der_a.dim() != 0)
        throw std::invalid_argument("build_tits: derA does not act on the coefficient algebra");
    if (der_j.acting_dim() != j.dim() && der_j.dim() != 0)
        throw std::invalid_argument("build_tits: derJ does not act on the Jordan algebra");

    const Subspace a_prime = prime_space(a);
    const Subspace j_prime = trace_zero_space(j);
    const std::size_t pa = a_prime.dim();
    const std::size_t pj = j_prime.dim();
    const std::size_t da = der_a.dim();
    const std::size_t dj = der_j.dim();

    TitsAlgebra t;
    t.name = "tits(" + a.name() + "," + j.table().name() + ")";
    t.conventions = conv;
    t.policy = options.policy;
    t.grading = {da, dj, pa, pj};
    t.coeff_name = a.name();
    t.jordan_name = j.table().name();
    t.der_a_name = der_a.name();
    t.der_j_name = der_j.name();
    ClosureReport& closure = t.closure;

    std::vector<std::size_t> a_index;  // structural index of each a' basis vector
    for (const auto p : a_prime.pivots()) a_index.push_back(p);
    const auto& j_basis = j_prime.basis();
    const Rational s = conv.jordan_scale;
    const Rational s2 = s * s;
    const Rational c_bullet = conv.bullet();
    const auto a_prime_part = [&](const Vector& v) {
        Vector r = v;
        r[*a.unit()] = 0;
        return r;
    };
    const auto j_prime_part = [&](const Vector& v) { return prime(j, v); };

    // D_{a,b} in derA coordinates.
    const SpanSolver a_solver(der_a);
    std::vector<SparseVector> d_coords(pa * pa);
    std::vector<LinearOperator> a_offenders;
    for (std::size_t x = 0; x < pa; ++x)
        for (std::size_t y = x + 1; y < pa; ++y) {
            const LinearOperator d =
                d_operator(a, basis_element(a, a_index[x]), basis_element(a, a_index[y]));
            std::optional<Vector> c = da == 0 ? (d.is_zero() ? std::optional<Vector>(Vector{}) : std::nullopt)
                                              : a_solver.exact(d);
            if (!c) {
                record(closure.der_a, x, y);
                a_offenders.push_back(d);
                c = da == 0 ? Vector{} : a_solver.project(d);
            }
            SparseVector v = SparseVector::from_dense(*c);
            d_coords[y * pa + x] = v.scaled(Rational(-1));
            d_coords[x * pa + y] = std::move(v);
        }

    // Commutators [a, b] in A' coordinates.
    std::vector<SparseVector> a_comm(pa * pa);
    for (std::size_t x = 0; x < pa; ++x)
        for (std::size_t y = 0; y < pa; ++y) {
            if (x == y) continue;
            const Vector c = commutator(a, basis_element(a, a_index[x]), basis_element(a, a_index[y]));
            a_comm[x * pa + y] =
                SparseVector::from_dense(coordinates_or(a_prime, c, closure.coefficient_action_stable, a_prime_part));
        }

    // Left multiplications, inner products, bullets and [L_X, L_Y] on J'.
    std::vector<LinearOperator> left;
    left.reserve(pj);
    for (const auto& x : j_basis) left.push_back(left_mult(j.table(), x));
    std::vector<Rational> inner_xy(pj * pj);
    std::vector<SparseVector> bullet_xy(pj * pj);
    for (std::size_t x = 0; x < pj; ++x)
        for (std::size_t y = x; y < pj; ++y) {
            inner_xy[x * pj + y] = inner_xy[y * pj + x] = inner(j, j_basis[x], j_basis[y]);
            const Vector b = bullet(j, j_basis[x], j_basis[y], s, c_bullet);
            bullet_xy[x * pj + y] = bullet_xy[y * pj + x] =
                SparseVector::from_dense(coordinates_or(j_prime, b, closure.bullet_trace_zero, j_prime_part));
        }
    const SpanSolver j_solver(der_j);
    std::vector<SparseVector> ll_coords(pj * pj);
    std::vector<LinearOperator> j_offenders;
    for (std::size_t x = 0; x < pj; ++x)
        for (std::size_t y = x + 1; y < pj; ++y) {
            const LinearOperator c = commutator(left[x], left[y]);
            std::optional<Vector> k = dj == 0 ? (c.is_zero() ? std::optional<Vector>(Vector{}) : std::nullopt)
                                              : j_solver.exact(c);
            if (!k) {
                record(closure.der_j, x, y);
                j_offenders.push_back(c);
                k = dj == 0 ? Vector{} : j_solver.project(c);
            }
            SparseVector v = SparseVector::from_dense(*k);
            ll_coords[y * pj + x] = v.scaled(Rational(-1));
            ll_coords[x * pj + y] = std::move(v);
        }

    // Derivation actions on the primed spaces.
    std::vector<SparseVector> act_a(da * pa);  // d_p(a'_x) in A' coordinates
    for (std::size_t p = 0; p < da; ++p)
        for (std::size_t x = 0; x < pa; ++x) {
            const Vector image = der_a.operators()[p].column(a_index[x]);
            act_a[p * pa + x] =
                SparseVector::from_dense(coordinates_or(a_prime, image, closure.coefficient_action_stable, a_prime_part));
        }
    std::vector<SparseVector> act_j(dj * pj);  // d_q(X'_x) in J' coordinates
    for (std::size_t q = 0; q < dj; ++q)
        for (std::size_t x = 0; x < pj; ++x) {
            const Vector image = der_j.operators()[q].apply(j_basis[x]);
            act_j[q * pj + x] =
                SparseVector::from_dense(coordinates_or(j_prime, image, closure.jordan_action_stable, j_prime_part));
        }

    if (options.measure_enlargement) {
        measure(closure.der_a, der_a, std::move(a_offenders), options.enlargement_cap);
        measure(closure.der_j, der_j, std::move(j_offenders), options.enlargement_cap);
    }
    if (options.policy == ClosurePolicy::strict && !closure.closed()) return t;

    // Assembly.
    const std::size_t n = t.grading.total();
    const std::size_t off_j = da;
    const std::size_t off_t = da + dj;
    auto tensor_at = [&](std::size_t x, std::size_t y) { return off_t + x * pj + y; };
    std::vector<SparseVector> products(n * n);
    auto set = [&](std::size_t i, std::size_t k, std::vector<SparseVector::Entry> entries) {
        SparseVector v(std::move(entries));
        products[k * n + i] = v.scaled(Rational(-1));
        products[i * n + k] = std::move(v);
    };

    for (std::size_t p = 0; p < da; ++p)
        for (std::size_t q = p + 1; q < da; ++q) {
            std::vector<SparseVector::Entry> e;
            for (const auto& [r, c] : der_a.bracket().product(p, q)) e.emplace_back(r, c);
            set(p, q, std::move(e));
        }
    for (std::size_t p = 0; p < dj; ++p)
        for (std::size_t q = p + 1; q < dj; ++q) {
            std::vector<SparseVector::Entry> e;
            for (const auto& [r, c] : der_j.bracket().product(p, q))
                e.emplace_back(static_cast<std::uint32_t>(off_j + r), c);
            set(off_j + p, off_j + q, std::move(e));
        }
    for (std::size_t p = 0; p < da; ++p)
        for (std::size_t x = 0; x < pa; ++x)
            for (std::size_t y = 0; y < pj; ++y) {
                std::vector<SparseVector::Entry> e;
                for (const auto& [b, c] : act_a[p * pa + x]) e.emplace_back(static_cast<std::uint32_t>(tensor_at(b, y)), c);
                set(p, tensor_at(x, y), std::move(e));
            }
    for (std::size_t q = 0; q < dj; ++q)
        for (std::size_t x = 0; x < pa; ++x)
            for (std::size_t y = 0; y < pj; ++y) {
                std::vector<SparseVector::Entry> e;
                for (const auto& [z, c] : act_j[q * pj + y]) e.emplace_back(static_cast<std::uint32_t>(tensor_at(x, z)), c);
                set(off_j + q, tensor_at(x, y), std::move(e));
            }
    for (std::size_t u = 0; u < pa * pj; ++u)
        for (std::size_t v = u + 1; v < pa * pj; ++v) {
            const std::size_t x = u / pj, xx = u % pj;  // a'_x (x) X'_xx
            const std::size_t y = v / pj, yy = v % pj;  // a'_y (x) X'_yy
            std::vector<SparseVector::Entry> e;
            const Rational& ip = inner_xy[xx * pj + yy];
            if (!ip.is_zero()) {
                const Rational f = conv.alpha * ip;
                for (const auto& [r, c] : d_coords[x * pa + y]) e.emplace_back(r, f * c);
            }
            if (x == y) {
                const Rational f = -(conv.beta * s2);
                for (const auto& [r, c] : ll_coords[xx * pj + yy]) e.emplace_back(static_cast<std::uint32_t>(off_j + r), f * c);
            }
            for (const auto& [b, c] : a_comm[x * pa + y]) {
                const Rational f = conv.gamma * c;
                for (const auto& [z, w] : bullet_xy[xx * pj + yy])
                    e.emplace_back(static_cast<std::uint32_t>(tensor_at(b, z)), f * w);
            }
            set(tensor_at(x, xx), tensor_at(y, yy), std::move(e));
        }

    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t p = 0; p < da; ++p) labels.push_back("dA" + std::to_string(p));
    for (std::size_t q = 0; q < dj; ++q) labels.push_back("dJ" + std::to_string(q));
    for (std::size_t x = 0; x < pa; ++x)
        for (std::size_t y = 0; y < pj; ++y)
            labels.push_back(a.labels()[a_index[x]] + "|" + j.table().labels()[j_prime.pivots()[y]] + "'");
    t.table = AlgebraTable(t.name, std::move(labels), std::nullopt, std::move(products));
    return t;
}

JacobiReport verify_lie(const TitsAlgebra& t, const JacobiOptions& options) {
    if (!t.table) throw std::logic_error("verify_lie: " + t.name + " has no bracket table");
    return verify_jacobi(*t.table, options);
}

TitsGrading grading_report(const TitsAlgebra& t) { return t.grading; }

// ---------------------------------------------------------------- standard inputs

LieSubalgebra coefficient_derivations(const AlgebraTable& a, DerivationChoice choice, const Deriver& derive) {
    LieSubalgebra full = derive(a);
    const auto factors = a.factor_list();
    if (choice == DerivationChoice::full || factors.size() < 2) return full;
    const std::size_t last = factors.size() - 1;
    const LieSubalgebra factor_der = derive(hurwitz(factors[last].name));
    return designate("der(" + factors[last].name + ")@" + a.name(), lift_factor_derivations(a, last, factor_der), full);
}

LinearOperator entrywise_lift(const HermAlgebra& j, const LinearOperator& d) {
    const std::size_t n = j.dim();
    if (d.rows() != j.coeff().dim() || d.cols() != j.coeff().dim())
        throw std::invalid_argument("entrywise_lift: operator does not act on the coefficient algebra");
    LinearOperator out(n, n);
    for (std::size_t b = 0; b < n; ++b) {
        HermMatrix m = j.matrix_of(unit_vector(n, b));
        for (auto& entry : m) entry = SparseVector::from_dense(d.apply(entry.to_dense(j.coeff().dim())));
        const Vector col = j.coords_of(m);
        for (std::size_t i = 0; i < n; ++i) out(i, b) = col[i];
    }
    return out;
}

LieSubalgebra jordan_derivations(const HermAlgebra& j, DerivationChoice choice, const Deriver& derive) {
    LieSubalgebra full = derive(j.table());
    if (choice == DerivationChoice::full || j.coeff().factor_list().size() < 2) return full;
    const LieSubalgebra coeff_der = coefficient_derivations(j.coeff(), DerivationChoice::designated, derive);
    std::vector<LinearOperator> ops;
    for (const auto& d : coeff_der.operators()) ops.push_back(entrywise_lift(j, d));
    return designate(coeff_der.name() + "@" + j.table().name(), ops, full);
}

HermAlgebra jordan_over(const AlgebraTable& b) {
    if (b.factor_list().size() < 2) return build_herm(b, standard_conjugation(b));
    return build_herm(b, involution_gamma(b, GammaFlavor::real_diagonal));
}

TitsInput plane_input(int plane, DerivationChoice choice, const Deriver& derive) {
    std::string coeff_spec;
    std::string jordan_spec;
    switch (plane) {
        case 1: coeff_spec = "C*H", jordan_spec = "O"; break;
        case 2: coeff_spec = "O", jordan_spec = "C*H"; break;
        case 3: coeff_spec = "C*O", jordan_spec = "H"; break;
        default: throw std::invalid_argument("plane_input: plane must be 1, 2 or 3");
    }
    AlgebraTable coeff = from_spec(coeff_spec);
    LieSubalgebra der_coeff = coefficient_derivations(coeff, choice, derive);
    HermAlgebra jordan = jordan_over(from_spec(jordan_spec));
    LieSubalgebra der_jordan = jordan_derivations(jordan, choice, derive);
    const std::string name = std::string("plane") + std::to_string(plane) + "-" +
                             (choice == DerivationChoice::designated ? "designated" : "full");
    return {name, std::move(coeff), std::move(der_coeff), std::move(jordan), std::move(der_jordan)};
}

}  // namespace tensorion
