#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tensorion/rational.hpp"

namespace tensorion {

using Vector = std::vector<Rational>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Rational> v);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Vector add(std::span<const Rational> a, std::span<const Rational> b);
Vector sub(std::span<const Rational> a, std::span<const Rational> b);
Vector scale(std::span<const Rational> a, const Rational& s);
void axpy(Vector& y, const Rational& a, std::span<const Rational> x);  // y += a x

// Sorted list of (index, nonzero value) pairs.
class SparseVector {
public:
    using Entry = std::pair<std::uint32_t, Rational>;

    SparseVector() = default;
    explicit SparseVector(std::vector<Entry> entries);  // sorts, merges duplicates, drops zeros

    static SparseVector unit(std::size_t i, Rational value = 1);
    static SparseVector from_dense(std::span<const Rational> v);
    [[nodiscard]] Vector to_dense(std::size_t n) const;

    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t nnz() const noexcept { return entries_.size(); }
    [[nodiscard]] Rational at(std::size_t i) const;
    [[nodiscard]] std::size_t bound() const noexcept;  // one past the largest index, 0 when empty
    [[nodiscard]] SparseVector scaled(const Rational& s) const;

    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    std::vector<Entry> entries_;
};

SparseVector operator+(const SparseVector& a, const SparseVector& b);
SparseVector operator-(const SparseVector& a, const SparseVector& b);

// Dense scratch buffer that remembers which slots were touched.
class Accumulator {
public:
    explicit Accumulator(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    void add(std::size_t i, const Rational& v);
    void add_product(std::size_t i, const Rational& a, const Rational& b);
    void add_scaled(const SparseVector& v, const Rational& s);
    [[nodiscard]] const Rational& operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] SparseVector take();  // returns the nonzero entries and resets
    void clear();

private:
    void touch(std::size_t i);

    std::vector<Rational> values_;
    std::vector<std::uint8_t> marked_;
    std::vector<std::uint32_t> touched_;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::span<const Vector> rows, std::size_t cols);
    static Matrix from_flat(std::size_t rows, std::size_t cols, std::span<const Rational> flat);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    [[nodiscard]] std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] Vector column(std::size_t j) const;
    [[nodiscard]] const Vector& flat() const noexcept { return data_; }

    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] Vector apply(std::span<const Rational> x) const;
    [[nodiscard]] Rational trace() const;
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(const Rational& s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

// Solves m x = b for square nonsingular m; throws std::domain_error when singular.
Vector solve(const Matrix& m, std::span<const Rational> b);

// Reduced row echelon form computed fraction-free (Bareiss) and normalized at the end.
// Zero rows are dropped; the result has one row per pivot.
std::vector<Vector> rref(std::vector<Vector> rows, std::size_t cols);

// A linear subspace of Q^n held as its canonical reduced echelon basis.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim = 0);
    static Subspace span(std::size_t ambient_dim, std::vector<Vector> vectors);
    static Subspace full(std::size_t ambient_dim);
    // Trusts the caller that rows already form a reduced echelon basis.
    static Subspace from_rref(std::size_t ambient_dim, std::vector<Vector> rows);

    [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_; }
    [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
    [[nodiscard]] const std::vector<Vector>& basis() const noexcept { return basis_; }
    [[nodiscard]] const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    [[nodiscard]] bool contains(std::span<const Rational> v) const;
    [[nodiscard]] std::optional<Vector> coordinates(std::span<const Rational> v) const;
    [[nodiscard]] Vector residual(std::span<const Rational> v) const;
    [[nodiscard]] Subspace sum(const Subspace& other) const;
    [[nodiscard]] Subspace intersection(const Subspace& other) const;
    [[nodiscard]] Subspace annihilator() const;  // orthogonal complement under the dot product
    [[nodiscard]] bool is_subspace_of(const Subspace& other) const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::size_t ambient_ = 0;
    std::vector<Vector> basis_;
    std::vector<std::size_t> pivots_;
};

// Streaming nullspace solver: feed constraint rows one at a time, keep the row
// space fully reduced, and read off the nullspace at the end. Pivots are taken at
// the largest nonzero index so the nullspace basis comes out already canonical.
class SparseEliminator {
public:
    explicit SparseEliminator(std::size_t unknowns);

    bool add_row(const SparseVector& row);  // true when the rank grew
    [[nodiscard]] std::size_t unknowns() const noexcept { return n_; }
    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }
    [[nodiscard]] bool saturated() const noexcept { return rows_.size() == n_; }
    [[nodiscard]] Subspace null_space() const;
    [[nodiscard]] Subspace row_space() const;

private:
    std::size_t n_;
    std::vector<SparseVector> rows_;
    std::vector<std::int64_t> row_of_pivot_;
    Accumulator acc_;
};

}  // namespace tensorion
