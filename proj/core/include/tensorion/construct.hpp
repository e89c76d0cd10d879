#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tensorion/algebra.hpp"

namespace tensorion {

// Hurwitz algebras built by Cayley-Dickson doubling,
// (a, b)(c, d) = (ac + s conj(d) b, d a + b conj(c)), s = -1.
// Accepts R, C, H, O and the split forms Cs, Hs, Os (s = +1 at the last step).
// The octonion table satisfies e1e2 = e3, e1e4 = e5, e2e4 = e6, e3e4 = e7.
AlgebraTable hurwitz(std::string_view name);

// One Cayley-Dickson doubling step of a table with unit at index 0 and
// conjugation fixing e0 and negating every other basis element.
AlgebraTable cayley_dickson(const AlgebraTable& base, const Rational& sign, std::string name);

// Factor-wise product with mixed-radix basis index, first factor slowest.
AlgebraTable tensor(const AlgebraTable& a, const AlgebraTable& b);

// The 64-dimensional C (x) H (x) O.
AlgebraTable dixon();

// Builds from a spec such as "C*H*O", evaluated left to right.
AlgebraTable from_spec(std::string_view spec);

std::size_t flatten_index(const std::vector<Factor>& factors, const std::vector<std::size_t>& digits);
std::vector<std::size_t> split_index(const std::vector<Factor>& factors, std::size_t flat);

// Euclidean structure with respect to the orthonormal structural basis.
Rational norm(const AlgebraTable& a, std::span<const Rational> x);
Rational polar(const AlgebraTable& a, std::span<const Rational> x, std::span<const Rational> y);
Vector conjugate(const AlgebraTable& a, std::span<const Rational> x);  // 2<x,1>1 - x

struct ZeroDivisor {
    std::string description;  // e.g. "C1.H2.O0 + 1"
    Vector element;
    Vector partner;
    Vector product;
    bool annihilates = false;
};

// For every pair of factors and every pair of imaginary units x drawn from
// them, the elements x + 1 and x - 1 with their partners x - 1 and x + 1.
std::vector<ZeroDivisor> zero_divisor_witnesses(const AlgebraTable& a);

// First pair (x, y) with N(xy) != N(x) N(y) among basis elements and sums of
// two basis elements, if any.
std::optional<std::pair<Vector, Vector>> composition_failure(const AlgebraTable& a);

}  // namespace tensorion
