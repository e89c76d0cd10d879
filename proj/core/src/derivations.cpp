#include "tensorion/derivations.hpp"

#include <deque>
#include <stdexcept>

#include "tensorion/construct.hpp"

namespace tensorion {

LinearOperator left_mult(const AlgebraTable& a, std::span<const Rational> x) {
    const std::size_t n = a.dim();
    if (x.size() != n) throw std::invalid_argument("left_mult: dimension mismatch");
    LinearOperator m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vector col = multiply(a, x, basis_element(a, j));
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

LinearOperator right_mult(const AlgebraTable& a, std::span<const Rational> x) {
    const std::size_t n = a.dim();
    if (x.size() != n) throw std::invalid_argument("right_mult: dimension mismatch");
    LinearOperator m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vector col = multiply(a, basis_element(a, j), x);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

LinearOperator d_operator(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y) {
    const LinearOperator lx = left_mult(a, x);
    const LinearOperator ly = left_mult(a, y);
    const LinearOperator rx = right_mult(a, x);
    const LinearOperator ry = right_mult(a, y);
    return commutator(lx, ly) + commutator(lx, ry) + commutator(rx, ry);
}

bool is_derivation(const AlgebraTable& a, const LinearOperator& d) {
    const std::size_t n = a.dim();
    if (d.rows() != n || d.cols() != n) throw std::invalid_argument("is_derivation: operator has wrong shape");
    std::vector<Vector> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = d.column(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector lhs = d.apply(a.product(i, j).to_dense(n));
            const Vector rhs = add(multiply(a, images[i], basis_element(a, j)), multiply(a, basis_element(a, i), images[j]));
            if (lhs != rhs) return false;
        }
    return true;
}

Vector flatten(const LinearOperator& m) { return m.flat(); }

LinearOperator unflatten(std::size_t n, std::span<const Rational> flat) { return Matrix::from_flat(n, n, flat); }

// ---------------------------------------------------------------- LieSubalgebra

LieSubalgebra::LieSubalgebra(std::string name, std::size_t n, Subspace span)
    : name_(std::move(name)), n_(n), span_(std::move(span)) {
    if (span_.ambient_dim() != n * n) throw std::invalid_argument("LieSubalgebra: span must live in gl(n)");
    for (const auto& b : span_.basis()) operators_.push_back(unflatten(n, b));
    const std::size_t d = operators_.size();
    std::vector<SparseVector> products(d * d);
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p + 1; q < d; ++q) {
            auto c = span_.coordinates(flatten(commutator(operators_[p], operators_[q])));
            if (!c) throw std::logic_error("LieSubalgebra " + name_ + ": span is not closed under the commutator");
            SparseVector v = SparseVector::from_dense(*c);
            products[q * d + p] = v.scaled(Rational(-1));
            products[p * d + q] = std::move(v);
        }
    std::vector<std::string> labels;
    labels.reserve(d);
    for (std::size_t p = 0; p < d; ++p) labels.push_back("d" + std::to_string(p));
    bracket_ = AlgebraTable(name_, std::move(labels), std::nullopt, std::move(products));
}

LieSubalgebra derivation_algebra(const AlgebraTable& a) {
    const std::size_t n = a.dim();
    const std::size_t unknowns = n * n;
    // Index of the unknown D_{l,k} (component l of D(e_k)) is l * n + k.
    std::vector<std::vector<std::vector<SparseVector::Entry>>> by_right(n), by_left(n);
    for (std::size_t j = 0; j < n; ++j) by_right[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) by_left[i].resize(n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [l, c] : a.product(m, j)) {
                by_right[j][l].emplace_back(static_cast<std::uint32_t>(m), c);  // c_{mj}^l
                by_left[m][l].emplace_back(static_cast<std::uint32_t>(j), c);   // c_{mj}^l seen from the left
            }

    const bool commutative = is_commutative(a).holds;
    SparseEliminator elim(unknowns);
    std::vector<std::vector<SparseVector::Entry>> rows(n);
    for (std::size_t i = 0; i < n && !elim.saturated(); ++i)
        for (std::size_t j = commutative ? i : 0; j < n; ++j) {
            // D(e_i e_j) - D(e_i) e_j - e_i D(e_j) = 0, one row per component l.
            for (auto& r : rows) r.clear();
            for (const auto& [k, c] : a.product(i, j))
                for (std::size_t l = 0; l < n; ++l) rows[l].emplace_back(static_cast<std::uint32_t>(l * n + k), c);
            for (std::size_t l = 0; l < n; ++l) {
                for (const auto& [m, c] : by_right[j][l]) rows[l].emplace_back(static_cast<std::uint32_t>(m * n + i), -c);
                for (const auto& [m, c] : by_left[i][l]) rows[l].emplace_back(static_cast<std::uint32_t>(m * n + j), -c);
            }
            for (auto& r : rows) {
                if (!r.empty()) elim.add_row(SparseVector(r));
            }
        }
    return LieSubalgebra("der(" + a.name() + ")", n, elim.null_space());
}

namespace {

// Accepts generators and brackets of accepted pairs until nothing new appears
// or more than cap operators are accepted.
std::vector<LinearOperator> bracket_closure(std::size_t n, const std::vector<LinearOperator>& ops, std::size_t cap) {
    SparseEliminator elim(n * n);
    std::vector<LinearOperator> accepted;
    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    auto offer = [&](LinearOperator m) {
        if (!elim.add_row(SparseVector::from_dense(flatten(m)))) return;
        for (std::size_t p = 0; p < accepted.size(); ++p) pairs.emplace_back(p, accepted.size());
        accepted.push_back(std::move(m));
    };
    for (const auto& op : ops) {
        if (op.rows() != n || op.cols() != n) throw std::invalid_argument("lie_closure: operator has wrong shape");
        if (accepted.size() > cap) break;
        offer(op);
    }
    while (!pairs.empty() && accepted.size() <= cap) {
        const auto [p, q] = pairs.front();
        pairs.pop_front();
        offer(commutator(accepted[p], accepted[q]));
    }
    return accepted;
}

}  // namespace

LieSubalgebra lie_closure(std::string name, std::size_t n, const std::vector<LinearOperator>& ops) {
    std::vector<Vector> rows;
    for (const auto& m : bracket_closure(n, ops, n * n)) rows.push_back(flatten(m));
    return LieSubalgebra(std::move(name), n, Subspace::span(n * n, std::move(rows)));
}

std::optional<std::size_t> lie_closure_dim(std::size_t n, const std::vector<LinearOperator>& ops, std::size_t cap) {
    const std::size_t d = bracket_closure(n, ops, cap).size();
    if (d > cap) return std::nullopt;
    return d;
}

LieSubalgebra designate(std::string name, const std::vector<LinearOperator>& ops, const LieSubalgebra& ambient) {
    for (const auto& op : ops) {
        if (!ambient.contains(op))
            throw std::invalid_argument("designate: operator is not a member of " + ambient.name());
    }
    return lie_closure(std::move(name), ambient.acting_dim(), ops);
}

LinearOperator tensor_lift(const std::vector<Factor>& factors, std::size_t position, const LinearOperator& op) {
    if (position >= factors.size()) throw std::out_of_range("tensor_lift: no such factor");
    const std::size_t fd = factors[position].dim;
    if (op.rows() != fd || op.cols() != fd) throw std::invalid_argument("tensor_lift: operator does not fit the factor");
    std::size_t n = 1;
    for (const auto& f : factors) n *= f.dim;
    LinearOperator out(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<std::size_t> digits = split_index(factors, col);
        const std::size_t src = digits[position];
        for (std::size_t k = 0; k < fd; ++k) {
            const Rational& c = op(k, src);
            if (c.is_zero()) continue;
            digits[position] = k;
            out(flatten_index(factors, digits), col) = c;
        }
    }
    return out;
}

std::vector<LinearOperator> lift_factor_derivations(const AlgebraTable& product, std::size_t position,
                                                    const LieSubalgebra& factor_derivations) {
    std::vector<LinearOperator> out;
    for (const auto& d : factor_derivations.operators()) out.push_back(tensor_lift(product.factors(), position, d));
    return out;
}

}  // namespace tensorion
