#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "tensorion/algebra.hpp"

namespace tensorion {

struct BilinearForm {
    Matrix matrix;  // symmetric
};

struct Inertia {
    std::size_t positive = 0;
    std::size_t zero = 0;
    std::size_t negative = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

// Matrix of ad_x in the basis of l: column j holds [x, e_j].
Matrix adjoint(const AlgebraTable& l, std::span<const Rational> x);

BilinearForm killing_form(const AlgebraTable& l);
// Signature by exact symmetric congruence (Lagrange reduction).
Inertia inertia(const BilinearForm& b);

Subspace derived_algebra(const AlgebraTable& l);
Subspace center_lie(const AlgebraTable& l);
bool is_semisimple(const AlgebraTable& l);  // Cartan: Killing form nondegenerate

struct CosetTest {
    bool closed = true;             // h closed under the bracket
    std::size_t complement_dim = 0;
    bool killing_complement = true;  // false when the basis-extension fallback was used
    bool cc_in_h = true;
    std::optional<std::pair<Vector, Vector>> witness;  // c1, c2 with [c1, c2] outside h
};

// Throws std::invalid_argument when h is not a subalgebra.
CosetTest symmetric_coset_test(const AlgebraTable& l, const Subspace& h);

struct JacobiOptions {
    bool sampled = false;
    std::uint64_t seed = 0;
    std::size_t samples = 100000;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct JacobiReport {
    bool antisymmetric = true;
    std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_witness;
    bool jacobi = true;
    std::optional<std::array<std::size_t, 3>> witness;  // lexicographically smallest failing triple
    Vector jacobiator;                                   // value at the witness
    std::size_t triples_checked = 0;
    std::size_t failing_triples = 0;
    double seconds = 0;
    unsigned threads = 1;
};

// Sparse Jacobiator [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
SparseVector jacobiator(const AlgebraTable& l, std::size_t i, std::size_t j, std::size_t k);

JacobiReport verify_jacobi(const AlgebraTable& l, const JacobiOptions& options);

std::size_t triple_count(std::size_t dim);

}  // namespace tensorion
