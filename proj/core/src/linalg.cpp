#include "tensorion/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace tensorion {

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v.at(i) = 1;
    return v;
}

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.is_zero(); });
}

namespace {
void require_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}
}  // namespace

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    require_same(a.size(), b.size(), "dot");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add_product(a[i], b[i]);
    return s;
}

Vector add(std::span<const Rational> a, std::span<const Rational> b) {
    require_same(a.size(), b.size(), "add");
    Vector r(a.begin(), a.end());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Vector sub(std::span<const Rational> a, std::span<const Rational> b) {
    require_same(a.size(), b.size(), "sub");
    Vector r(a.begin(), a.end());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

Vector scale(std::span<const Rational> a, const Rational& s) {
    Vector r(a.begin(), a.end());
    for (auto& x : r) x *= s;
    return r;
}

void axpy(Vector& y, const Rational& a, std::span<const Rational> x) {
    require_same(y.size(), x.size(), "axpy");
    if (a.is_zero()) return;
    for (std::size_t i = 0; i < x.size(); ++i) y[i].add_product(a, x[i]);
}

// ---------------------------------------------------------------- SparseVector

SparseVector::SparseVector(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& e : entries) {
        if (!entries_.empty() && entries_.back().first == e.first) {
            entries_.back().second += e.second;
        } else {
            entries_.push_back(std::move(e));
        }
    }
    std::erase_if(entries_, [](const Entry& e) { return e.second.is_zero(); });
}

SparseVector SparseVector::unit(std::size_t i, Rational value) {
    SparseVector v;
    if (!value.is_zero()) v.entries_.emplace_back(static_cast<std::uint32_t>(i), std::move(value));
    return v;
}

SparseVector SparseVector::from_dense(std::span<const Rational> v) {
    SparseVector r;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero()) r.entries_.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    }
    return r;
}

Vector SparseVector::to_dense(std::size_t n) const {
    Vector v(n);
    for (const auto& [i, q] : entries_) v.at(i) = q;
    return v;
}

Rational SparseVector::at(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) return it->second;
    return {};
}

std::size_t SparseVector::bound() const noexcept { return entries_.empty() ? 0 : entries_.back().first + 1; }

SparseVector SparseVector::scaled(const Rational& s) const {
    if (s.is_zero()) return {};
    SparseVector r(*this);
    for (auto& e : r.entries_) e.second *= s;
    return r;
}

namespace {
SparseVector merge(const SparseVector& a, const SparseVector& b, bool subtract) {
    std::vector<SparseVector::Entry> out;
    out.reserve(a.nnz() + b.nnz());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || ib->first < ia->first) {
            out.emplace_back(ib->first, subtract ? -ib->second : ib->second);
            ++ib;
        } else {
            Rational v = subtract ? ia->second - ib->second : ia->second + ib->second;
            if (!v.is_zero()) out.emplace_back(ia->first, std::move(v));
            ++ia;
            ++ib;
        }
    }
    return SparseVector(std::move(out));
}
}  // namespace

SparseVector operator+(const SparseVector& a, const SparseVector& b) { return merge(a, b, false); }
SparseVector operator-(const SparseVector& a, const SparseVector& b) { return merge(a, b, true); }

// ---------------------------------------------------------------- Accumulator

Accumulator::Accumulator(std::size_t n) : values_(n), marked_(n, 0) {}

void Accumulator::touch(std::size_t i) {
    if (!marked_[i]) {
        marked_[i] = 1;
        touched_.push_back(static_cast<std::uint32_t>(i));
    }
}

void Accumulator::add(std::size_t i, const Rational& v) {
    if (v.is_zero()) return;
    touch(i);
    values_[i] += v;
}

void Accumulator::add_product(std::size_t i, const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return;
    touch(i);
    values_[i].add_product(a, b);
}

void Accumulator::add_scaled(const SparseVector& v, const Rational& s) {
    if (s.is_zero()) return;
    for (const auto& [i, q] : v) add_product(i, q, s);
}

SparseVector Accumulator::take() {
    std::sort(touched_.begin(), touched_.end());
    std::vector<SparseVector::Entry> out;
    out.reserve(touched_.size());
    for (auto i : touched_) {
        if (!values_[i].is_zero()) out.emplace_back(i, std::move(values_[i]));
        values_[i] = Rational();
        marked_[i] = 0;
    }
    touched_.clear();
    return SparseVector(std::move(out));
}

void Accumulator::clear() {
    for (auto i : touched_) {
        values_[i] = Rational();
        marked_[i] = 0;
    }
    touched_.clear();
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require_same(rows[i].size(), cols, "Matrix::from_rows");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
}

Matrix Matrix::from_flat(std::size_t rows, std::size_t cols, std::span<const Rational> flat) {
    require_same(rows * cols, flat.size(), "Matrix::from_flat");
    Matrix m(rows, cols);
    std::copy(flat.begin(), flat.end(), m.data_.begin());
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vector Matrix::apply(std::span<const Rational> x) const {
    require_same(cols_, x.size(), "Matrix::apply");
    Vector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i].add_product((*this)(i, j), x[j]);
    return y;
}

Rational Matrix::trace() const {
    if (!is_square()) throw std::invalid_argument("Matrix::trace: not square");
    Rational t;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

bool Matrix::is_zero() const { return tensorion::is_zero(data_); }

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("Matrix::+: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("Matrix::-: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same(a.cols_, b.rows_, "Matrix::*");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Rational& bkj = b(k, j);
                if (!bkj.is_zero()) c(i, j).add_product(aik, bkj);
            }
        }
    }
    return c;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Vector solve(const Matrix& m, std::span<const Rational> b) {
    const std::size_t n = m.rows();
    if (!m.is_square() || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
    std::vector<Vector> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].assign(m.row(i).begin(), m.row(i).end());
        rows[i].push_back(b[i]);
    }
    rows = rref(std::move(rows), n + 1);
    if (rows.size() != n) throw std::domain_error("solve: singular system");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i][i].is_one()) throw std::domain_error("solve: singular system");
        x[i] = rows[i][n];
    }
    return x;
}

// ---------------------------------------------------------------- rref

std::vector<Vector> rref(std::vector<Vector> rows, std::size_t cols) {
    for (auto& r : rows) require_same(r.size(), cols, "rref");
    std::erase_if(rows, [](const Vector& r) { return is_zero(r); });

    // Clear denominators so the forward pass runs over integers.
    for (auto& r : rows) {
        mpz_class l = 1;
        for (const auto& q : r) {
            if (!q.is_integer()) l = lcm(l, q.denominator());
        }
        if (l != 1) {
            Rational s{mpq_class(l)};
            for (auto& q : r) q *= s;
        }
    }

    const std::size_t m = rows.size();
    std::vector<std::size_t> pivots;
    Rational prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m; ++c) {
        std::size_t p = r;
        while (p < m && rows[p][c].is_zero()) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        const Rational piv = rows[r][c];
        for (std::size_t i = r + 1; i < m; ++i) {
            const Rational f = rows[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                Rational v = piv * rows[i][j];
                if (!f.is_zero() && !rows[r][j].is_zero()) v -= f * rows[r][j];
                if (!v.is_zero() && !prev.is_one()) v /= prev;
                rows[i][j] = std::move(v);
            }
            rows[i][c] = Rational();
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);

    // Normalize pivots and clear above them, bottom-up.
    for (std::size_t k = r; k-- > 0;) {
        const std::size_t c = pivots[k];
        const Rational inv = Rational(1) / rows[k][c];
        for (std::size_t j = c; j < cols; ++j) {
            if (!rows[k][j].is_zero()) rows[k][j] *= inv;
        }
        for (std::size_t i = 0; i < k; ++i) {
            const Rational f = rows[i][c];
            if (f.is_zero()) continue;
            for (std::size_t j = c; j < cols; ++j) {
                if (!rows[k][j].is_zero()) rows[i][j] -= f * rows[k][j];
            }
        }
    }
    return rows;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

Subspace Subspace::from_rref(std::size_t ambient_dim, std::vector<Vector> rows) {
    Subspace s(ambient_dim);
    for (const auto& r : rows) {
        require_same(r.size(), ambient_dim, "Subspace::from_rref");
        auto it = std::find_if(r.begin(), r.end(), [](const Rational& q) { return !q.is_zero(); });
        if (it == r.end()) throw std::invalid_argument("Subspace::from_rref: zero row");
        s.pivots_.push_back(static_cast<std::size_t>(it - r.begin()));
    }
    s.basis_ = std::move(rows);
    return s;
}

Subspace Subspace::span(std::size_t ambient_dim, std::vector<Vector> vectors) {
    return from_rref(ambient_dim, rref(std::move(vectors), ambient_dim));
}

Subspace Subspace::full(std::size_t ambient_dim) {
    std::vector<Vector> rows;
    rows.reserve(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) rows.push_back(unit_vector(ambient_dim, i));
    return from_rref(ambient_dim, std::move(rows));
}

Vector Subspace::residual(std::span<const Rational> v) const {
    require_same(v.size(), ambient_, "Subspace::residual");
    Vector r(v.begin(), v.end());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Rational f = r[pivots_[k]];
        if (f.is_zero()) continue;
        const Vector& b = basis_[k];
        for (std::size_t j = pivots_[k]; j < ambient_; ++j) {
            if (!b[j].is_zero()) r[j] -= f * b[j];
        }
    }
    return r;
}

bool Subspace::contains(std::span<const Rational> v) const { return is_zero(residual(v)); }

std::optional<Vector> Subspace::coordinates(std::span<const Rational> v) const {
    require_same(v.size(), ambient_, "Subspace::coordinates");
    Vector c(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = v[pivots_[k]];
    Vector rebuilt(ambient_);
    for (std::size_t k = 0; k < basis_.size(); ++k) axpy(rebuilt, c[k], basis_[k]);
    for (std::size_t j = 0; j < ambient_; ++j) {
        if (rebuilt[j] != v[j]) return std::nullopt;
    }
    return c;
}

Subspace Subspace::sum(const Subspace& other) const {
    require_same(ambient_, other.ambient_, "Subspace::sum");
    std::vector<Vector> rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, std::move(rows));
}

Subspace Subspace::annihilator() const {
    std::vector<bool> is_pivot(ambient_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<Vector> rows;
    for (std::size_t f = 0; f < ambient_; ++f) {
        if (is_pivot[f]) continue;
        Vector v(ambient_);
        v[f] = 1;
        for (std::size_t k = 0; k < basis_.size(); ++k) v[pivots_[k]] = -basis_[k][f];
        rows.push_back(std::move(v));
    }
    return span(ambient_, std::move(rows));
}

Subspace Subspace::intersection(const Subspace& other) const {
    require_same(ambient_, other.ambient_, "Subspace::intersection");
    return annihilator().sum(other.annihilator()).annihilator();
}

bool Subspace::is_subspace_of(const Subspace& other) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const Vector& b) { return other.contains(b); });
}

// ---------------------------------------------------------------- SparseEliminator

SparseEliminator::SparseEliminator(std::size_t unknowns)
    : n_(unknowns), row_of_pivot_(unknowns, -1), acc_(unknowns) {}

bool SparseEliminator::add_row(const SparseVector& row) {
    if (row.empty() || saturated()) return false;
    if (row.bound() > n_) throw std::out_of_range("SparseEliminator::add_row: index out of range");
    for (const auto& [i, q] : row) acc_.add(i, q);
    // Stored rows vanish on every other pivot column, so only the pivot
    // columns present in the incoming row need clearing.
    for (const auto& [i, q] : row) {
        const auto r = row_of_pivot_[i];
        if (r < 0) continue;
        const Rational f = acc_[i];
        if (!f.is_zero()) acc_.add_scaled(rows_[static_cast<std::size_t>(r)], -f);
    }
    SparseVector reduced = acc_.take();
    if (reduced.empty()) return false;

    const auto& last = reduced.entries().back();
    const std::size_t pivot = last.first;
    reduced = reduced.scaled(Rational(1) / last.second);

    for (auto& existing : rows_) {
        const Rational f = existing.at(pivot);
        if (f.is_zero()) continue;
        acc_.add_scaled(existing, 1);
        acc_.add_scaled(reduced, -f);
        existing = acc_.take();
    }
    row_of_pivot_[pivot] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(reduced));
    return true;
}

Subspace SparseEliminator::null_space() const {
    // With trailing pivots, the kernel vector for free column f is 1 at f plus
    // entries at pivot columns beyond f: already reduced echelon form.
    std::vector<Vector> basis;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> by_free(n_);
    for (std::size_t p = 0; p < n_; ++p) {
        const auto r = row_of_pivot_[p];
        if (r < 0) continue;
        for (const auto& [j, q] : rows_[static_cast<std::size_t>(r)]) {
            if (j != p) by_free[j].emplace_back(p, -q);
        }
    }
    for (std::size_t f = 0; f < n_; ++f) {
        if (row_of_pivot_[f] >= 0) continue;
        Vector v(n_);
        v[f] = 1;
        for (auto& [p, q] : by_free[f]) v[p] = q;
        basis.push_back(std::move(v));
    }
    return Subspace::from_rref(n_, std::move(basis));
}

Subspace SparseEliminator::row_space() const {
    std::vector<Vector> rows;
    rows.reserve(rows_.size());
    for (const auto& r : rows_) rows.push_back(r.to_dense(n_));
    return Subspace::span(n_, std::move(rows));
}

}  // namespace tensorion
