#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tensorion/algebra.hpp"

namespace tensorion {

// Square matrix acting on an algebra; column j is the image of e_j.
using LinearOperator = Matrix;

LinearOperator left_mult(const AlgebraTable& a, std::span<const Rational> x);
LinearOperator right_mult(const AlgebraTable& a, std::span<const Rational> x);
// [L_x, L_y] + [L_x, R_y] + [R_x, R_y]
LinearOperator d_operator(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y);
bool is_derivation(const AlgebraTable& a, const LinearOperator& d);

// Row-major flattening used for operator subspaces: entry (i, j) at i * n + j.
Vector flatten(const LinearOperator& m);
LinearOperator unflatten(std::size_t n, std::span<const Rational> flat);

// A Lie subalgebra of gl(n) with its canonical basis and bracket table.
class LieSubalgebra {
public:
    LieSubalgebra() = default;
    // Throws std::logic_error when span is not closed under the commutator.
    LieSubalgebra(std::string name, std::size_t n, Subspace span);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t acting_dim() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return operators_.size(); }
    [[nodiscard]] const Subspace& span() const noexcept { return span_; }
    [[nodiscard]] const std::vector<LinearOperator>& operators() const noexcept { return operators_; }
    [[nodiscard]] const AlgebraTable& bracket() const noexcept { return bracket_; }

    [[nodiscard]] bool contains(const LinearOperator& m) const { return span_.contains(flatten(m)); }
    [[nodiscard]] std::optional<Vector> coordinates(const LinearOperator& m) const {
        return span_.coordinates(flatten(m));
    }

private:
    std::string name_;
    std::size_t n_ = 0;
    Subspace span_;
    std::vector<LinearOperator> operators_;
    AlgebraTable bracket_;
};

LieSubalgebra derivation_algebra(const AlgebraTable& a);

// Smallest subalgebra of gl(n) containing the given operators.
LieSubalgebra lie_closure(std::string name, std::size_t n, const std::vector<LinearOperator>& ops);
// Dimension of that closure, or nullopt once it exceeds cap.
std::optional<std::size_t> lie_closure_dim(std::size_t n, const std::vector<LinearOperator>& ops, std::size_t cap);

// Bracket closure of ops inside ambient; throws std::invalid_argument if an
// operator is not a member of ambient.
LieSubalgebra designate(std::string name, const std::vector<LinearOperator>& ops, const LieSubalgebra& ambient);

// Extends an operator on one tensor factor to the product: identity on the
// other factors.
LinearOperator tensor_lift(const std::vector<Factor>& factors, std::size_t position, const LinearOperator& op);

// The derivations of one factor, extended to the whole tensor product table.
std::vector<LinearOperator> lift_factor_derivations(const AlgebraTable& product, std::size_t position,
                                                    const LieSubalgebra& factor_derivations);

}  // namespace tensorion
