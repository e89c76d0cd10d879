#include "tensorion/construct.hpp"

#include <stdexcept>

namespace tensorion {
namespace {

AlgebraTable real_line() {
    return AlgebraTable("R", {"R0"}, 0, {SparseVector::unit(0)}, {});
}

std::vector<std::string> numbered_labels(const std::string& prefix, std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return labels;
}

}  // namespace

AlgebraTable cayley_dickson(const AlgebraTable& base, const Rational& sign, std::string name) {
    if (base.unit() != std::optional<std::size_t>{0})
        throw std::invalid_argument("cayley_dickson: base must have its unit at index 0");
    const std::size_t n = base.dim();
    const std::size_t m = 2 * n;
    auto conj_sign = [](std::size_t k) { return Rational(k == 0 ? 1 : -1); };
    auto shifted = [n](const SparseVector& v, const Rational& s) {
        std::vector<SparseVector::Entry> e;
        for (const auto& [k, c] : v) e.emplace_back(static_cast<std::uint32_t>(k + n), c * s);
        return SparseVector(std::move(e));
    };

    std::vector<SparseVector> products(m * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // (e_i, 0)(e_j, 0) = (e_i e_j, 0)
            products[i * m + j] = base.product(i, j);
            // (e_i, 0)(0, e_j) = (0, e_j e_i)
            products[i * m + (j + n)] = shifted(base.product(j, i), 1);
            // (0, e_i)(e_j, 0) = (0, e_i conj(e_j))
            products[(i + n) * m + j] = shifted(base.product(i, j), conj_sign(j));
            // (0, e_i)(0, e_j) = (s conj(e_j) e_i, 0)
            products[(i + n) * m + (j + n)] = base.product(j, i).scaled(sign * conj_sign(j));
        }
    }
    return AlgebraTable(name, numbered_labels(name, m), 0, std::move(products));
}

AlgebraTable hurwitz(std::string_view name) {
    const Rational minus(-1);
    const Rational plus(1);
    if (name == "R") return real_line();
    if (name == "C") return cayley_dickson(real_line(), minus, "C");
    if (name == "Cs") return cayley_dickson(real_line(), plus, "Cs");
    if (name == "H") return cayley_dickson(hurwitz("C"), minus, "H");
    if (name == "Hs") return cayley_dickson(hurwitz("C"), plus, "Hs");
    if (name == "O") return cayley_dickson(hurwitz("H"), minus, "O");
    if (name == "Os") return cayley_dickson(hurwitz("H"), plus, "Os");
    throw std::invalid_argument("hurwitz: unknown algebra '" + std::string(name) + "'");
}

AlgebraTable tensor(const AlgebraTable& a, const AlgebraTable& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    const std::size_t n = na * nb;
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) labels.push_back(a.labels()[i] + "." + b.labels()[j]);

    std::vector<SparseVector> products(n * n);
    for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib)
            for (std::size_t ja = 0; ja < na; ++ja)
                for (std::size_t jb = 0; jb < nb; ++jb) {
                    std::vector<SparseVector::Entry> e;
                    for (const auto& [ka, ca] : a.product(ia, ja))
                        for (const auto& [kb, cb] : b.product(ib, jb))
                            e.emplace_back(static_cast<std::uint32_t>(ka * nb + kb), ca * cb);
                    products[(ia * nb + ib) * n + (ja * nb + jb)] = SparseVector(std::move(e));
                }

    std::optional<std::size_t> unit;
    if (a.unit() && b.unit()) unit = *a.unit() * nb + *b.unit();
    std::vector<Factor> factors = a.factor_list();
    for (const auto& f : b.factor_list()) factors.push_back(f);
    return AlgebraTable(a.name() + "*" + b.name(), std::move(labels), unit, std::move(products), std::move(factors));
}

AlgebraTable dixon() { return tensor(tensor(hurwitz("C"), hurwitz("H")), hurwitz("O")); }

AlgebraTable from_spec(std::string_view spec) {
    std::vector<std::string> names;
    std::string current;
    for (char ch : spec) {
        if (ch == '*') {
            names.push_back(current);
            current.clear();
        } else if (ch != ' ') {
            current.push_back(ch);
        }
    }
    names.push_back(current);
    for (const auto& n : names) {
        if (n.empty()) throw std::invalid_argument("algebra spec '" + std::string(spec) + "' has an empty factor");
    }
    AlgebraTable result = hurwitz(names.front());
    for (std::size_t i = 1; i < names.size(); ++i) result = tensor(result, hurwitz(names[i]));
    return result;
}

std::size_t flatten_index(const std::vector<Factor>& factors, const std::vector<std::size_t>& digits) {
    if (digits.size() != factors.size()) throw std::invalid_argument("flatten_index: wrong number of digits");
    std::size_t flat = 0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        if (digits[f] >= factors[f].dim) throw std::out_of_range("flatten_index: digit out of range");
        flat = flat * factors[f].dim + digits[f];
    }
    return flat;
}

std::vector<std::size_t> split_index(const std::vector<Factor>& factors, std::size_t flat) {
    std::vector<std::size_t> digits(factors.size());
    for (std::size_t f = factors.size(); f-- > 0;) {
        digits[f] = flat % factors[f].dim;
        flat /= factors[f].dim;
    }
    if (flat != 0) throw std::out_of_range("split_index: index exceeds table");
    return digits;
}

Rational norm(const AlgebraTable& a, std::span<const Rational> x) { return polar(a, x, x); }

Rational polar(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y) {
    if (x.size() != a.dim() || y.size() != a.dim()) throw std::invalid_argument("polar: dimension mismatch");
    return dot(x, y);
}

Vector conjugate(const AlgebraTable& a, std::span<const Rational> x) {
    const Vector one = unit_element(a);
    Vector r = scale(one, Rational(2) * polar(a, x, one));
    axpy(r, Rational(-1), x);
    return r;
}

std::vector<ZeroDivisor> zero_divisor_witnesses(const AlgebraTable& a) {
    const auto& factors = a.factors();
    if (factors.size() < 2 || !a.unit()) return {};
    const Vector one = unit_element(a);
    std::vector<ZeroDivisor> out;
    for (std::size_t f = 0; f < factors.size(); ++f)
        for (std::size_t g = f + 1; g < factors.size(); ++g)
            for (std::size_t alpha = 1; alpha < factors[f].dim; ++alpha)
                for (std::size_t beta = 1; beta < factors[g].dim; ++beta) {
                    std::vector<std::size_t> digits(factors.size(), 0);
                    digits[f] = alpha;
                    digits[g] = beta;
                    const std::size_t idx = flatten_index(factors, digits);
                    const Vector x = basis_element(a, idx);
                    for (int s : {1, -1}) {
                        ZeroDivisor z;
                        z.description = a.labels()[idx] + (s > 0 ? " + 1" : " - 1");
                        z.element = add(x, scale(one, Rational(s)));
                        z.partner = add(x, scale(one, Rational(-s)));
                        z.product = multiply(a, z.element, z.partner);
                        z.annihilates = is_zero(z.product);
                        out.push_back(std::move(z));
                    }
                }
    return out;
}

std::optional<std::pair<Vector, Vector>> composition_failure(const AlgebraTable& a) {
    const std::size_t n = a.dim();
    auto fails = [&](const Vector& x, const Vector& y) {
        return norm(a, multiply(a, x, y)) != norm(a, x) * norm(a, y);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vector x = basis_element(a, i);
            Vector y = basis_element(a, j);
            if (fails(x, y)) return std::make_pair(x, y);
        }
    std::vector<Vector> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.push_back(add(basis_element(a, i), basis_element(a, j)));
            pairs.push_back(sub(basis_element(a, i), basis_element(a, j)));
        }
    for (const auto& x : pairs)
        for (const auto& y : pairs) {
            if (fails(x, y)) return std::make_pair(x, y);
        }
    return std::nullopt;
}

}  // namespace tensorion
