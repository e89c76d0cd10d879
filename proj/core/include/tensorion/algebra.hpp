#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tensorion/linalg.hpp"

namespace tensorion {

// A tensor factor of a product table, slowest-varying first.
struct Factor {
    std::string name;
    std::size_t dim = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
};

// Finite-dimensional algebra over Q given by structure constants:
// e_i e_j = sum_k c_ij^k e_k, stored sparsely per ordered pair (i, j).
class AlgebraTable {
public:
    AlgebraTable() = default;
    AlgebraTable(std::string name, std::vector<std::string> labels, std::optional<std::size_t> unit,
                 std::vector<SparseVector> products, std::vector<Factor> factors = {});

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t dim() const noexcept { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::optional<std::size_t>& unit() const noexcept { return unit_; }
    [[nodiscard]] const std::vector<Factor>& factors() const noexcept { return factors_; }
    [[nodiscard]] const SparseVector& product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }
    [[nodiscard]] const std::vector<SparseVector>& products() const noexcept { return products_; }
    [[nodiscard]] std::size_t index_of(std::string_view label) const;
    [[nodiscard]] std::size_t nonzero_count() const;

    // Factor records as they would appear in a tensor product with this table.
    [[nodiscard]] std::vector<Factor> factor_list() const;

    friend bool operator==(const AlgebraTable&, const AlgebraTable&) = default;

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::optional<std::size_t> unit_;
    std::vector<SparseVector> products_;
    std::vector<Factor> factors_;
};

Vector basis_element(const AlgebraTable& a, std::size_t i);
Vector unit_element(const AlgebraTable& a);  // throws std::invalid_argument when non-unital

Vector multiply(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y);
SparseVector multiply(const AlgebraTable& a, const SparseVector& x, const SparseVector& y);
Vector commutator(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y);
Vector associator(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y,
                  std::span<const Rational> z);

// Human-readable rendering such as "C1.H1.O0 - 1/2 C0.H0.O0".
std::string format_element(const AlgebraTable& a, std::span<const Rational> x);

struct Predicate {
    bool holds = true;
    std::vector<Vector> witness;  // concrete elements violating the identity
};

struct StructuralProfile {
    Predicate commutative;
    Predicate associative;
    Predicate alternative;
    Predicate flexible;
    Predicate power_associative;
};

StructuralProfile structural_profile(const AlgebraTable& a);
Predicate is_commutative(const AlgebraTable& a);
Predicate is_associative(const AlgebraTable& a);
Predicate is_alternative(const AlgebraTable& a);
Predicate is_flexible(const AlgebraTable& a);
Predicate is_power_associative(const AlgebraTable& a);

Subspace nucleus(const AlgebraTable& a);
Subspace center(const AlgebraTable& a);
bool is_closed_under_product(const AlgebraTable& a, const Subspace& s);

}  // namespace tensorion
