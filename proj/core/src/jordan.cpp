#include "tensorion/jordan.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "tensorion/sampling.hpp"

namespace tensorion {

// ---------------------------------------------------------------- involutions

void Involution::require_valid() const {
    if (!squares_to_identity) throw std::invalid_argument("involution " + name + " does not square to the identity");
    if (!fixes_unit) throw std::invalid_argument("involution " + name + " does not fix the unit");
    if (!antihomomorphism) throw std::invalid_argument("involution " + name + " is not an antihomomorphism");
}

Involution make_involution(const AlgebraTable& a, std::string name, Matrix map) {
    const std::size_t n = a.dim();
    if (map.rows() != n || map.cols() != n) throw std::invalid_argument("involution matrix has wrong shape");
    Involution inv;
    inv.name = std::move(name);
    inv.map = std::move(map);
    inv.squares_to_identity = inv.map * inv.map == Matrix::identity(n);
    inv.fixes_unit = !a.unit() || inv.map.column(*a.unit()) == unit_element(a);
    inv.antihomomorphism = true;
    std::vector<Vector> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = inv.map.column(i);
    for (std::size_t i = 0; i < n && inv.antihomomorphism; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector lhs = inv.map.apply(a.product(i, j).to_dense(n));
            const Vector rhs = multiply(a, images[j], images[i]);
            if (lhs != rhs) {
                inv.antihomomorphism = false;
                inv.antihomomorphism_witness = std::make_pair(i, j);
                break;
            }
        }
    return inv;
}

namespace {

Matrix diagonal_signs(const std::vector<int>& signs) {
    Matrix m(signs.size(), signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) m(i, i) = signs[i];
    return m;
}

}  // namespace

Involution standard_conjugation(const AlgebraTable& a) {
    if (!a.unit()) throw std::invalid_argument("conjugation needs a unital algebra");
    std::vector<int> signs(a.dim(), -1);
    signs[*a.unit()] = 1;
    return make_involution(a, "conjugation", diagonal_signs(signs));
}

Involution involution_gamma(const AlgebraTable& a, GammaFlavor flavor) {
    if (!a.unit()) throw std::invalid_argument("gamma needs a unital algebra");
    std::vector<int> signs(a.dim(), -1);
    signs[*a.unit()] = 1;
    if (flavor == GammaFlavor::real_diagonal) return make_involution(a, "gamma_real_diagonal", diagonal_signs(signs));

    const auto& factors = a.factors();
    auto it = std::find_if(factors.begin(), factors.end(), [](const Factor& f) { return f.name == "C"; });
    if (it == factors.end()) throw std::invalid_argument("complex-diagonal gamma needs a complex tensor factor");
    const auto complex_pos = static_cast<std::size_t>(it - factors.begin());
    // Units of the complex factor tensored with the units of the others.
    std::size_t stride = 1;
    for (std::size_t f = complex_pos + 1; f < factors.size(); ++f) stride *= factors[f].dim;
    for (std::size_t c = 0; c < it->dim; ++c) signs.at(c * stride) = 1;
    return make_involution(a, "gamma_complex_diagonal", diagonal_signs(signs));
}

NuclearVerdict is_nuclear(const AlgebraTable& a, const Involution& inv) {
    const std::size_t n = a.dim();
    const Subspace nuc = nucleus(a);
    std::vector<Vector> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = inv.map.column(i);
    auto value = [&](const Vector& x) { return multiply(a, x, inv.apply(x)); };
    for (std::size_t i = 0; i < n; ++i) {
        const Vector x = basis_element(a, i);
        Vector v = multiply(a, x, images[i]);
        if (!nuc.contains(v)) return {false, x, std::move(v)};
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vector pol = add(multiply(a, basis_element(a, i), images[j]), multiply(a, basis_element(a, j), images[i]));
            if (nuc.contains(pol)) continue;
            // Diagonal terms lie in the nucleus, so x = e_i + e_j inherits the failure.
            Vector x = add(basis_element(a, i), basis_element(a, j));
            Vector v = value(x);
            return {false, std::move(x), std::move(v)};
        }
    return {};
}

// ---------------------------------------------------------------- Hermitian matrices

namespace {

constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kOffDiagonal{{{0, 1}, {0, 2}, {1, 2}}};

std::size_t cell(std::size_t r, std::size_t c) { return 3 * r + c; }

Subspace fixed_subspace(const Involution& inv, std::size_t n) {
    SparseEliminator elim(n);
    const Matrix shifted = inv.map - Matrix::identity(n);
    for (std::size_t r = 0; r < n; ++r) elim.add_row(SparseVector::from_dense(shifted.row(r)));
    return elim.null_space();
}

HermMatrix matmul(const AlgebraTable& a, const HermMatrix& x, const HermMatrix& y, Accumulator& acc) {
    HermMatrix z;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t k = 0; k < 3; ++k) {
                for (const auto& [i, xi] : x[cell(r, k)])
                    for (const auto& [jj, yj] : y[cell(k, c)]) acc.add_scaled(a.product(i, jj), xi * yj);
            }
            z[cell(r, c)] = acc.take();
        }
    return z;
}

std::string fixed_label(const AlgebraTable& coeff, const Vector& f, std::size_t k) {
    std::size_t nonzero = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].is_zero()) {
            ++nonzero;
            where = i;
        }
    }
    if (nonzero == 1 && f[where].is_one()) return coeff.labels()[where];
    return "f" + std::to_string(k);
}

}  // namespace

HermAlgebra::HermAlgebra(AlgebraTable coeff, Involution inv, HermProduct product)
    : coeff_(std::move(coeff)), inv_(std::move(inv)), product_(product) {
    const std::size_t n = coeff_.dim();
    if (inv_.map.rows() != n) throw std::invalid_argument("involution does not act on the coefficient algebra");
    if (!inv_.squares_to_identity) throw std::invalid_argument("involution " + inv_.name + " is not involutive");
    fixed_ = fixed_subspace(inv_, n);

    std::vector<std::string> labels;
    for (std::size_t d = 0; d < 3; ++d)
        for (std::size_t k = 0; k < fixed_.dim(); ++k) {
            basis_.push_back({true, d, d, fixed_.basis()[k]});
            labels.push_back("E" + std::to_string(d + 1) + std::to_string(d + 1) + ":" +
                             fixed_label(coeff_, fixed_.basis()[k], k));
        }
    for (const auto& [r, c] : kOffDiagonal)
        for (std::size_t a = 0; a < n; ++a) {
            basis_.push_back({false, r, c, unit_vector(n, a)});
            labels.push_back("F" + std::to_string(r + 1) + std::to_string(c + 1) + ":" + coeff_.labels()[a]);
        }

    const std::size_t dim = basis_.size();
    std::vector<HermMatrix> mats(dim);
    for (std::size_t b = 0; b < dim; ++b) mats[b] = matrix_of(unit_vector(dim, b));

    Accumulator acc(n);
    std::vector<SparseVector> products(dim * dim);
    const Rational half(1, 2);
    for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = 0; q < dim; ++q) {
            HermMatrix z = matmul(coeff_, mats[p], mats[q], acc);
            if (product_ == HermProduct::jordan) {
                const HermMatrix w = matmul(coeff_, mats[q], mats[p], acc);
                for (std::size_t e = 0; e < 9; ++e) z[e] = (z[e] + w[e]).scaled(half);
            }
            if (!closure_witness_ && !is_hermitian(z)) closure_witness_ = std::make_pair(p, q);
            products[p * dim + q] = SparseVector::from_dense(coords_of(z));
        }
    table_ = AlgebraTable("H3(" + coeff_.name() + "," + inv_.name + ")", std::move(labels), std::nullopt,
                          std::move(products));

    if (coeff_.unit() && fixed_.contains(unit_element(coeff_))) {
        HermMatrix one;
        for (std::size_t d = 0; d < 3; ++d) one[cell(d, d)] = SparseVector::unit(*coeff_.unit());
        identity_ = coords_of(one);
    }
}

HermMatrix HermAlgebra::matrix_of(std::span<const Rational> coords) const {
    if (coords.size() != basis_.size()) throw std::invalid_argument("Hermitian coordinates have wrong length");
    const std::size_t n = coeff_.dim();
    std::array<Vector, 9> dense;
    for (auto& e : dense) e = Vector(n);
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        const Rational& c = coords[b];
        if (c.is_zero()) continue;
        const auto& entry = basis_[b];
        axpy(dense[cell(entry.row, entry.col)], c, entry.coeff);
        if (!entry.diagonal) axpy(dense[cell(entry.col, entry.row)], c, inv_.apply(entry.coeff));
    }
    HermMatrix m;
    for (std::size_t e = 0; e < 9; ++e) m[e] = SparseVector::from_dense(dense[e]);
    return m;
}

bool HermAlgebra::is_hermitian(const HermMatrix& m) const {
    const std::size_t n = coeff_.dim();
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = r; c < 3; ++c) {
            const Vector image = inv_.apply(m[cell(c, r)].to_dense(n));
            if (SparseVector::from_dense(image) != m[cell(r, c)]) return false;
        }
    return true;
}

Vector HermAlgebra::coords_of(const HermMatrix& m) const {
    const std::size_t n = coeff_.dim();
    const Rational half(1, 2);
    Vector coords(basis_.size());
    std::size_t b = 0;
    for (std::size_t d = 0; d < 3; ++d) {
        const Vector z = m[cell(d, d)].to_dense(n);
        const Vector sym = scale(add(z, inv_.apply(z)), half);
        auto c = fixed_.coordinates(sym);
        if (!c) throw std::logic_error("symmetrized diagonal entry outside the fixed subspace");
        for (std::size_t k = 0; k < c->size(); ++k) coords[b++] = (*c)[k];
    }
    for (const auto& [r, c] : kOffDiagonal) {
        const Vector upper = m[cell(r, c)].to_dense(n);
        const Vector lower = m[cell(c, r)].to_dense(n);
        const Vector sym = scale(add(upper, inv_.apply(lower)), half);
        for (std::size_t a = 0; a < n; ++a) coords[b++] = sym[a];
    }
    return coords;
}

HermAlgebra build_herm(const AlgebraTable& coeff, const Involution& inv, HermProduct product) {
    return HermAlgebra(coeff, inv, product);
}

// ---------------------------------------------------------------- Jordan identity

Vector jordan_identity_defect(const AlgebraTable& t, std::span<const Rational> x, std::span<const Rational> y) {
    const Vector xx = multiply(t, x, x);
    const Vector lhs = multiply(t, multiply(t, x, y), xx);
    const Vector rhs = multiply(t, x, multiply(t, y, xx));
    return sub(lhs, rhs);
}

namespace {

Vector random_small_element(std::size_t dim, std::mt19937_64& rng) {
    Vector v(dim);
    const std::size_t terms = 1 + uniform_below(rng, 3);
    for (std::size_t t = 0; t < terms; ++t) {
        const std::size_t i = uniform_below(rng, dim);
        v[i] += Rational(static_cast<std::int64_t>(uniform_below(rng, 5)) - 2);
    }
    return v;
}

std::optional<std::vector<Vector>> random_identity_witness(const AlgebraTable& t, std::uint64_t seed,
                                                           std::size_t samples) {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        Vector x = random_small_element(t.dim(), rng);
        Vector y = random_small_element(t.dim(), rng);
        if (!is_zero(jordan_identity_defect(t, x, y))) return std::vector<Vector>{x, y};
    }
    return std::nullopt;
}

// sum over the three choices of a: (x_a y)(x_b x_c) - x_a (y (x_b x_c))
SparseVector linearized(const AlgebraTable& t, std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                        Accumulator& acc) {
    const std::array<std::array<std::size_t, 3>, 3> splits{{{i, j, k}, {j, i, k}, {k, i, j}}};
    Accumulator& out = acc;
    for (const auto& [a, b, c] : splits) {
        const SparseVector& bc = t.product(b, c);
        const SparseVector& al = t.product(a, l);
        for (const auto& [m, cm] : al)
            for (const auto& [r, cr] : bc) out.add_scaled(t.product(m, r), cm * cr);
        for (const auto& [r, cr] : bc)
            for (const auto& [m, cm] : t.product(l, r)) out.add_scaled(t.product(a, m), -(cr * cm));
    }
    return out.take();
}

// A concrete (x, y) from a failing linearized tuple: x = t1 e_i + t2 e_j + t3 e_k.
std::vector<Vector> grid_witness(const AlgebraTable& t, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    const Vector y = unit_vector(t.dim(), l);
    for (int a = 1; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c) {
                Vector x(t.dim());
                x[i] += a;
                x[j] += b;
                x[k] += c;
                if (!is_zero(jordan_identity_defect(t, x, y))) return {x, y};
            }
    throw std::logic_error("Jordan identity: linearization fails but no grid witness found");
}

}  // namespace

JordanCheck jordan_identity_check(const HermAlgebra& j, std::uint64_t seed, std::size_t samples) {
    JordanCheck out;
    const AlgebraTable& t = j.table();
    const std::size_t n = t.dim();
    if (!j.closed()) {
        out.pass = false;
        out.failure = "closure";
        const auto [p, q] = *j.closure_witness();
        out.witness = {unit_vector(n, p), unit_vector(n, q)};
        if (auto w = random_identity_witness(t, seed, samples)) out.identity_witness = *w;
        return out;
    }
    if (auto c = is_commutative(t); !c.holds) {
        out.pass = false;
        out.failure = "commutativity";
        out.witness = c.witness;
        return out;
    }
    if (auto w = random_identity_witness(t, seed, samples)) {
        out.pass = false;
        out.failure = "jordan_identity";
        out.witness = *w;
        out.identity_witness = *w;
        return out;
    }
    Accumulator acc(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c)
                for (std::size_t l = 0; l < n; ++l) {
                    ++out.tuples_checked;
                    if (linearized(t, a, b, c, l, acc).empty()) continue;
                    out.pass = false;
                    out.failure = "jordan_identity";
                    out.witness = grid_witness(t, a, b, c, l);
                    out.identity_witness = out.witness;
                    return out;
                }
    return out;
}

// ---------------------------------------------------------------- trace forms

Rational trace(const HermAlgebra& j, std::span<const Rational> x) {
    if (!j.coeff().unit()) throw std::invalid_argument("trace needs a unital coefficient algebra");
    const HermMatrix m = j.matrix_of(x);
    const std::size_t u = *j.coeff().unit();
    return m[0].at(u) + m[4].at(u) + m[8].at(u);
}

Rational inner(const HermAlgebra& j, std::span<const Rational> x, std::span<const Rational> y) {
    return trace(j, multiply(j.table(), x, y));
}

Vector prime(const HermAlgebra& j, std::span<const Rational> x) {
    if (j.identity().empty()) throw std::invalid_argument("prime needs an algebra with identity");
    Vector r(x.begin(), x.end());
    axpy(r, -trace(j, x) / Rational(3), j.identity());
    return r;
}

Vector bullet(const HermAlgebra& j, std::span<const Rational> x, std::span<const Rational> y, const Rational& scale_by,
              const std::optional<Rational>& coeff) {
    if (j.identity().empty()) throw std::invalid_argument("bullet needs an algebra with identity");
    const Rational c = coeff ? *coeff : scale_by / Rational(3);
    Vector r = scale(multiply(j.table(), x, y), scale_by);
    axpy(r, -(c * inner(j, x, y)), j.identity());
    return r;
}

Subspace trace_zero_space(const HermAlgebra& j) {
    const std::size_t n = j.dim();
    SparseEliminator elim(n);
    Vector row(n);
    for (std::size_t b = 0; b < n; ++b) row[b] = trace(j, unit_vector(n, b));
    elim.add_row(SparseVector::from_dense(row));
    return elim.null_space();
}

}  // namespace tensorion
