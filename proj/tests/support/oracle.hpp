#pragma once

// Independent reference implementations used to cross-check the library.
// Nothing here calls into tensorion's arithmetic; values are plain GMP rationals.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;

inline Vec zeros(std::size_t n) { return Vec(n, Q(0)); }

inline Vec unit(std::size_t n, std::size_t i) {
    Vec v = zeros(n);
    v[i] = 1;
    return v;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(const Vec& a, const Q& s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Cayley-Dickson conjugate: negate every component but the first.
inline Vec cd_conj(const Vec& a) {
    Vec r = scaled(a, -1);
    r[0] = a[0];
    return r;
}

// (p, q)(r, s) = (pr - conj(s) q, sp + q conj(r)) on vectors of length 1, 2, 4, 8.
inline Vec cd_mul(const Vec& a, const Vec& b) {
    const std::size_t n = a.size();
    if (n == 1) return {a[0] * b[0]};
    const std::size_t h = n / 2;
    const Vec p(a.begin(), a.begin() + h), q(a.begin() + h, a.end());
    const Vec r(b.begin(), b.begin() + h), s(b.begin() + h, b.end());
    const Vec first = sub(cd_mul(p, r), cd_mul(cd_conj(s), q));
    const Vec second = add(cd_mul(s, p), cd_mul(q, cd_conj(r)));
    Vec out(first);
    out.insert(out.end(), second.begin(), second.end());
    return out;
}

// Tensor product of Cayley-Dickson factors with the first factor slowest.
class TensorAlgebra {
public:
    explicit TensorAlgebra(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
        dim_ = 1;
        for (auto d : dims_) dim_ *= d;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }

    [[nodiscard]] std::vector<std::size_t> digits(std::size_t flat) const {
        std::vector<std::size_t> out(dims_.size());
        for (std::size_t f = dims_.size(); f-- > 0;) {
            out[f] = flat % dims_[f];
            flat /= dims_[f];
        }
        return out;
    }

    [[nodiscard]] std::size_t flatten(const std::vector<std::size_t>& d) const {
        std::size_t flat = 0;
        for (std::size_t f = 0; f < dims_.size(); ++f) flat = flat * dims_[f] + d[f];
        return flat;
    }

    // Product of two basis elements as (sign, index).
    [[nodiscard]] std::pair<int, std::size_t> basis_product(std::size_t i, std::size_t j) const {
        const auto a = digits(i), b = digits(j);
        int sign = 1;
        std::vector<std::size_t> c(dims_.size());
        for (std::size_t f = 0; f < dims_.size(); ++f) {
            const Vec p = cd_mul(unit(dims_[f], a[f]), unit(dims_[f], b[f]));
            for (std::size_t k = 0; k < dims_[f]; ++k)
                if (p[k] != 0) {
                    c[f] = k;
                    sign *= p[k] > 0 ? 1 : -1;
                }
        }
        return {sign, flatten(c)};
    }

    [[nodiscard]] Vec mul(const Vec& x, const Vec& y) const {
        Vec r = zeros(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j] == 0) continue;
                const auto [s, k] = basis_product(i, j);
                r[k] += s * x[i] * y[j];
            }
        }
        return r;
    }

private:
    std::vector<std::size_t> dims_;
    std::size_t dim_ = 1;
};

// Dense exact rank by plain Gaussian elimination.
inline std::size_t rank(std::vector<Vec> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            const Q f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

inline Q determinant(std::vector<Vec> m) {
    const std::size_t n = m.size();
    Q det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            const Q f = m[i][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
        }
    }
    return det;
}

// Rank modulo a 61-bit prime after compressing the rows with random combinations.
// Equals the rational rank with overwhelming probability for integer systems.
class ModularRank {
public:
    static constexpr std::uint64_t p = (1ULL << 61) - 1;

    static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    static std::uint64_t addmod(std::uint64_t a, std::uint64_t b) { return (a + b) % p; }
    static std::uint64_t inverse(std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    }

    ModularRank(std::size_t cols, std::size_t sketch, std::uint64_t seed)
        : cols_(cols), sketch_(sketch, std::vector<std::uint64_t>(cols, 0)), rng_(seed) {}

    // Adds a sparse integer row (column, value).
    void add_row(const std::vector<std::pair<std::size_t, std::int64_t>>& row) {
        for (auto& s : sketch_) {
            const std::uint64_t w = rng_() % p;
            for (const auto& [c, v] : row) {
                const std::uint64_t vm = v >= 0 ? static_cast<std::uint64_t>(v) % p : p - (static_cast<std::uint64_t>(-v) % p);
                s[c] = addmod(s[c], mulmod(w, vm));
            }
        }
    }

    [[nodiscard]] std::size_t rank() const {
        auto m = sketch_;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < m.size(); ++c) {
            std::size_t piv = r;
            while (piv < m.size() && m[piv][c] == 0) ++piv;
            if (piv == m.size()) continue;
            std::swap(m[piv], m[r]);
            const std::uint64_t inv = inverse(m[r][c]);
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                const std::uint64_t f = mulmod(m[i][c], inv);
                for (std::size_t k = c; k < cols_; ++k)
                    m[i][k] = addmod(m[i][k], p - mulmod(f, m[r][k]));
            }
            ++r;
        }
        return r;
    }

private:
    std::size_t cols_;
    std::vector<std::vector<std::uint64_t>> sketch_;
    std::mt19937_64 rng_;
};

}  // namespace oracle
