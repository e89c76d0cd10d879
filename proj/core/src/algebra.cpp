#include "tensorion/algebra.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tensorion {

AlgebraTable::AlgebraTable(std::string name, std::vector<std::string> labels, std::optional<std::size_t> unit,
                           std::vector<SparseVector> products, std::vector<Factor> factors)
    : name_(std::move(name)), labels_(std::move(labels)), unit_(unit), products_(std::move(products)),
      factors_(std::move(factors)) {
    const std::size_t n = labels_.size();
    if (products_.size() != n * n) throw std::invalid_argument("AlgebraTable: products must have dim*dim entries");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != n) throw std::invalid_argument("AlgebraTable: labels must be unique");
    for (const auto& p : products_) {
        if (p.bound() > n) throw std::invalid_argument("AlgebraTable: structure constant index out of range");
    }
    if (unit_) {
        if (*unit_ >= n) throw std::invalid_argument("AlgebraTable: unit index out of range");
        for (std::size_t j = 0; j < n; ++j) {
            const auto ej = SparseVector::unit(j);
            if (product(*unit_, j) != ej || product(j, *unit_) != ej)
                throw std::invalid_argument("AlgebraTable: declared unit does not act as identity on " + labels_[j]);
        }
    }
    if (!factors_.empty()) {
        std::size_t d = 1;
        for (const auto& f : factors_) d *= f.dim;
        if (d != n) throw std::invalid_argument("AlgebraTable: factor dims do not multiply to dim");
    }
}

std::size_t AlgebraTable::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::out_of_range("AlgebraTable: no basis label " + std::string(label));
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t AlgebraTable::nonzero_count() const {
    return std::accumulate(products_.begin(), products_.end(), std::size_t{0},
                           [](std::size_t s, const SparseVector& v) { return s + v.nnz(); });
}

std::vector<Factor> AlgebraTable::factor_list() const {
    if (!factors_.empty()) return factors_;
    return {Factor{name_, dim()}};
}

Vector basis_element(const AlgebraTable& a, std::size_t i) { return unit_vector(a.dim(), i); }

Vector unit_element(const AlgebraTable& a) {
    if (!a.unit()) throw std::invalid_argument("algebra " + a.name() + " has no unit basis element");
    return basis_element(a, *a.unit());
}

namespace {

void check_dim(const AlgebraTable& a, std::size_t n) {
    if (n != a.dim()) throw std::invalid_argument("element dimension does not match algebra " + a.name());
}

// x * y for sparse operands, accumulated into acc.
void multiply_into(const AlgebraTable& a, const SparseVector& x, const SparseVector& y, Accumulator& acc) {
    for (const auto& [i, xi] : x) {
        for (const auto& [j, yj] : y) {
            const Rational c = xi * yj;
            acc.add_scaled(a.product(i, j), c);
        }
    }
}

SparseVector mul(const AlgebraTable& a, const SparseVector& x, const SparseVector& y, Accumulator& acc) {
    multiply_into(a, x, y, acc);
    return acc.take();
}

// (e_i e_j) e_k - e_i (e_j e_k)
SparseVector basis_associator(const AlgebraTable& a, std::size_t i, std::size_t j, std::size_t k,
                              Accumulator& acc) {
    for (const auto& [m, c] : a.product(i, j)) acc.add_scaled(a.product(m, k), c);
    for (const auto& [m, c] : a.product(j, k)) acc.add_scaled(a.product(i, m), -c);
    return acc.take();
}

Vector sum_of_units(std::size_t n, std::size_t i, std::size_t j) {
    Vector v(n);
    v[i] += 1;
    v[j] += 1;
    return v;
}

}  // namespace

Vector multiply(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y) {
    check_dim(a, x.size());
    check_dim(a, y.size());
    Accumulator acc(a.dim());
    multiply_into(a, SparseVector::from_dense(x), SparseVector::from_dense(y), acc);
    return acc.take().to_dense(a.dim());
}

SparseVector multiply(const AlgebraTable& a, const SparseVector& x, const SparseVector& y) {
    if (x.bound() > a.dim() || y.bound() > a.dim()) throw std::invalid_argument("element index exceeds algebra dim");
    Accumulator acc(a.dim());
    return mul(a, x, y, acc);
}

Vector commutator(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y) {
    return sub(multiply(a, x, y), multiply(a, y, x));
}

Vector associator(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y,
                  std::span<const Rational> z) {
    return sub(multiply(a, multiply(a, x, y), z), multiply(a, x, multiply(a, y, z)));
}

std::string format_element(const AlgebraTable& a, std::span<const Rational> x) {
    check_dim(a, x.size());
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational& c = x[i];
        if (c.is_zero()) continue;
        const bool neg = c.sign() < 0;
        const Rational mag = neg ? -c : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (!mag.is_one()) out += mag.str() + " ";
        out += a.labels()[i];
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- predicates

Predicate is_commutative(const AlgebraTable& a) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a.product(i, j) != a.product(j, i)) return {false, {basis_element(a, i), basis_element(a, j)}};
        }
    }
    return {};
}

Predicate is_associative(const AlgebraTable& a) {
    const std::size_t n = a.dim();
    Accumulator acc(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (!basis_associator(a, i, j, k, acc).empty())
                    return {false, {basis_element(a, i), basis_element(a, j), basis_element(a, k)}};
            }
    return {};
}

Predicate is_alternative(const AlgebraTable& a) {
    // Witness is the argument triple of the failing associator, (x, x, y) or (y, x, x).
    const std::size_t n = a.dim();
    Accumulator acc(n);
    auto left = [&](std::size_t i, std::size_t j, std::size_t k) {
        return basis_associator(a, i, j, k, acc) + basis_associator(a, j, i, k, acc);
    };
    auto right = [&](std::size_t i, std::size_t j, std::size_t k) {
        return basis_associator(a, k, i, j, acc) + basis_associator(a, k, j, i, acc);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const bool left_bad = !left(i, j, k).empty();
                const bool right_bad = !left_bad && !right(i, j, k).empty();
                if (!left_bad && !right_bad) continue;
                Vector x;
                if (i == j) {
                    x = basis_element(a, i);
                } else if (left_bad && !basis_associator(a, i, i, k, acc).empty()) {
                    x = basis_element(a, i);
                } else if (left_bad && !basis_associator(a, j, j, k, acc).empty()) {
                    x = basis_element(a, j);
                } else if (right_bad && !basis_associator(a, k, i, i, acc).empty()) {
                    x = basis_element(a, i);
                } else if (right_bad && !basis_associator(a, k, j, j, acc).empty()) {
                    x = basis_element(a, j);
                } else {
                    x = sum_of_units(n, i, j);
                }
                Vector y = basis_element(a, k);
                if (left_bad) return {false, {x, x, y}};
                return {false, {y, x, x}};
            }
    return {};
}

Predicate is_flexible(const AlgebraTable& a) {
    const std::size_t n = a.dim();
    Accumulator acc(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                SparseVector lin = basis_associator(a, i, k, j, acc) + basis_associator(a, j, k, i, acc);
                if (lin.empty()) continue;
                Vector x;
                if (i == j || !basis_associator(a, i, k, i, acc).empty()) {
                    x = basis_element(a, i);
                } else if (!basis_associator(a, j, k, j, acc).empty()) {
                    x = basis_element(a, j);
                } else {
                    x = sum_of_units(n, i, j);
                }
                return {false, {x, basis_element(a, k), x}};
            }
    return {};
}

namespace {

// Returns true when x violates x^2 x = x x^2 or (x^2 x) x = x^2 x^2.
bool power_assoc_fails(const AlgebraTable& a, const SparseVector& x, Accumulator& acc) {
    const SparseVector x2 = mul(a, x, x, acc);
    const SparseVector x2x = mul(a, x2, x, acc);
    if (x2x != mul(a, x, x2, acc)) return true;
    return mul(a, x2x, x, acc) != mul(a, x2, x2, acc);
}

// Fully polarized forms of the two identities evaluated on a basis tuple.
SparseVector cubic_polarization(const AlgebraTable& a, std::array<std::size_t, 3> t, Accumulator& acc) {
    std::sort(t.begin(), t.end());
    Accumulator out(a.dim());
    do {
        out.add_scaled(basis_associator(a, t[0], t[1], t[2], acc), 1);
    } while (std::next_permutation(t.begin(), t.end()));
    return out.take();
}

SparseVector quartic_polarization(const AlgebraTable& a, std::array<std::size_t, 4> t, Accumulator& acc) {
    std::sort(t.begin(), t.end());
    Accumulator out(a.dim());
    do {
        const SparseVector ab = a.product(t[0], t[1]);
        SparseVector abc = mul(a, ab, SparseVector::unit(t[2]), acc);
        out.add_scaled(mul(a, abc, SparseVector::unit(t[3]), acc), 1);
        out.add_scaled(mul(a, ab, a.product(t[2], t[3]), acc), -1);
    } while (std::next_permutation(t.begin(), t.end()));
    return out.take();
}

// Searches small integer combinations on a fixed support for a concrete failure.
std::optional<Vector> grid_witness(const AlgebraTable& a, const std::vector<std::size_t>& support, Accumulator& acc) {
    const std::size_t k = support.size();
    std::vector<int> c(k, -2);
    while (true) {
        if (std::any_of(c.begin(), c.end(), [](int v) { return v != 0; })) {
            std::vector<SparseVector::Entry> e;
            for (std::size_t s = 0; s < k; ++s) e.emplace_back(static_cast<std::uint32_t>(support[s]), Rational(c[s]));
            SparseVector x(std::move(e));
            if (power_assoc_fails(a, x, acc)) return x.to_dense(a.dim());
        }
        std::size_t p = 0;
        while (p < k && c[p] == 2) c[p++] = -2;
        if (p == k) return std::nullopt;
        ++c[p];
    }
}

}  // namespace

Predicate is_power_associative(const AlgebraTable& a) {
    const std::size_t n = a.dim();
    Accumulator acc(n);

    // Witness search: coefficients in {-1, 0, 1} on supports of at most four
    // basis elements. Sign symmetry x -> -x lets the first coefficient be +1.
    const std::size_t max_support = std::min<std::size_t>(4, n);
    for (std::size_t s = 1; s <= max_support; ++s) {
        std::vector<std::size_t> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            for (std::size_t mask = 0; mask < (std::size_t{1} << (s - 1)); ++mask) {
                std::vector<SparseVector::Entry> e;
                e.emplace_back(static_cast<std::uint32_t>(idx[0]), Rational(1));
                for (std::size_t t = 1; t < s; ++t)
                    e.emplace_back(static_cast<std::uint32_t>(idx[t]), Rational((mask >> (t - 1)) & 1 ? -1 : 1));
                SparseVector x(std::move(e));
                if (power_assoc_fails(a, x, acc)) return {false, {x.to_dense(n)}};
            }
            std::size_t p = s;
            while (p > 0 && idx[p - 1] == n - s + (p - 1)) --p;
            if (p == 0) break;
            ++idx[p - 1];
            for (std::size_t t = p; t < s; ++t) idx[t] = idx[t - 1] + 1;
        }
    }

    // No small witness: decide by full polarization over basis multisets.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                if (cubic_polarization(a, {i, j, k}, acc).empty()) continue;
                std::vector<std::size_t> support{i, j, k};
                support.erase(std::unique(support.begin(), support.end()), support.end());
                auto w = grid_witness(a, support, acc);
                if (!w) throw std::logic_error("power associativity: polarization fails but no grid witness");
                return {false, {*w}};
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k)
                for (std::size_t l = k; l < n; ++l) {
                    if (quartic_polarization(a, {i, j, k, l}, acc).empty()) continue;
                    std::vector<std::size_t> support{i, j, k, l};
                    support.erase(std::unique(support.begin(), support.end()), support.end());
                    auto w = grid_witness(a, support, acc);
                    if (!w) throw std::logic_error("power associativity: polarization fails but no grid witness");
                    return {false, {*w}};
                }
    return {};
}

StructuralProfile structural_profile(const AlgebraTable& a) {
    StructuralProfile p;
    p.commutative = is_commutative(a);
    p.associative = is_associative(a);
    p.alternative = is_alternative(a);
    p.flexible = is_flexible(a);
    p.power_associative = is_power_associative(a);
    return p;
}

// ---------------------------------------------------------------- nucleus / center

namespace {

// Adds the rows expressing that the linear map n -> f(n) vanishes, where
// images[i] = f(e_i), to the eliminator (one row per output component).
void add_map_rows(const std::vector<SparseVector>& images, std::size_t n, SparseEliminator& elim) {
    std::vector<std::vector<SparseVector::Entry>> rows(n);
    for (std::size_t i = 0; i < images.size(); ++i)
        for (const auto& [l, c] : images[i]) rows[l].emplace_back(static_cast<std::uint32_t>(i), c);
    for (auto& r : rows) {
        if (!r.empty()) elim.add_row(SparseVector(std::move(r)));
    }
}

void add_nucleus_rows(const AlgebraTable& a, SparseEliminator& elim) {
    const std::size_t n = a.dim();
    Accumulator acc(n);
    std::vector<SparseVector> images(n);
    for (std::size_t x = 0; x < n && !elim.saturated(); ++x)
        for (std::size_t y = 0; y < n && !elim.saturated(); ++y) {
            for (std::size_t i = 0; i < n; ++i) images[i] = basis_associator(a, i, x, y, acc);
            add_map_rows(images, n, elim);
            for (std::size_t i = 0; i < n; ++i) images[i] = basis_associator(a, x, i, y, acc);
            add_map_rows(images, n, elim);
            for (std::size_t i = 0; i < n; ++i) images[i] = basis_associator(a, x, y, i, acc);
            add_map_rows(images, n, elim);
        }
}

}  // namespace

Subspace nucleus(const AlgebraTable& a) {
    SparseEliminator elim(a.dim());
    add_nucleus_rows(a, elim);
    return elim.null_space();
}

Subspace center(const AlgebraTable& a) {
    const std::size_t n = a.dim();
    SparseEliminator elim(n);
    std::vector<SparseVector> images(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t i = 0; i < n; ++i) images[i] = a.product(i, x) - a.product(x, i);
        add_map_rows(images, n, elim);
    }
    add_nucleus_rows(a, elim);
    return elim.null_space();
}

bool is_closed_under_product(const AlgebraTable& a, const Subspace& s) {
    if (s.ambient_dim() != a.dim()) throw std::invalid_argument("subspace ambient does not match algebra");
    for (const auto& u : s.basis())
        for (const auto& v : s.basis()) {
            if (!s.contains(multiply(a, u, v))) return false;
        }
    return true;
}

}  // namespace tensorion
