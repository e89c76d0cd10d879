#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tensorion/derivations.hpp"
#include "tensorion/jordan.hpp"
#include "tensorion/lie.hpp"

namespace tensorion {

// Scalars of the mixed bracket
//   [a(x)X, b(x)Y] = alpha <X,Y> D_{a,b} - beta <a,b> [L_X, L_Y] + gamma [a,b] (x) (X bullet Y)
// where L_X multiplies by jordan_scale times the symmetrized product, <X,Y> is
// the trace of the symmetrized product, and
//   X bullet Y = jordan_scale X.Y - bullet_coeff <X,Y> 1.
struct TitsConventions {
    Rational alpha{1, 3};
    Rational beta{1};
    Rational gamma{1, 2};
    Rational jordan_scale{2};
    std::optional<Rational> bullet_coeff;  // default jordan_scale / 3, the trace-zero projection

    [[nodiscard]] Rational bullet() const { return bullet_coeff ? *bullet_coeff : jordan_scale / Rational(3); }
    [[nodiscard]] std::string fingerprint() const;
};

// What to do when D_{a,b} or [L_X, L_Y] leaves the supplied derivation span.
enum class ClosurePolicy {
    strict,   // record the failure and build no table
    project,  // record the failure and use the Frobenius-orthogonal projection onto the span
};

struct TitsOptions {
    ClosurePolicy policy = ClosurePolicy::project;
    bool measure_enlargement = true;
    std::size_t enlargement_cap = 256;
};

enum class Block { der_a, der_j, tensor };

struct TitsGrading {
    std::size_t der_a = 0;
    std::size_t der_j = 0;
    std::size_t a_prime = 0;
    std::size_t j_prime = 0;

    [[nodiscard]] std::size_t tensor() const noexcept { return a_prime * j_prime; }
    [[nodiscard]] std::size_t total() const noexcept { return der_a + der_j + tensor(); }
    friend bool operator==(const TitsGrading&, const TitsGrading&) = default;
};

struct SpanClosure {
    bool closed = true;
    std::size_t failures = 0;
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // first offending pair of primed basis indices
    std::optional<std::size_t> enlargement;  // bracket closure of the span and the offenders
    bool enlargement_capped = false;
};

struct ClosureReport {
    SpanClosure der_a;                  // D_{a,b} in span(derA)
    SpanClosure der_j;                  // [L_X, L_Y] in span(derJ)
    bool coefficient_action_stable = true;  // derA and commutators keep A' in place
    bool jordan_action_stable = true;       // derJ keeps the trace-zero part in place
    bool bullet_trace_zero = true;

    [[nodiscard]] bool closed() const noexcept {
        return der_a.closed && der_j.closed && coefficient_action_stable && jordan_action_stable && bullet_trace_zero;
    }
};

// der(A) + der(J) + A' (x) J' with basis order: derA, derJ, then the tensor
// block indexed a' major, X' minor.
struct TitsAlgebra {
    std::string name;
    TitsConventions conventions;
    ClosurePolicy policy = ClosurePolicy::project;
    TitsGrading grading;
    std::string coeff_name;
    std::string jordan_name;
    std::string der_a_name;
    std::string der_j_name;
    ClosureReport closure;
    std::optional<AlgebraTable> table;  // absent under the strict policy when closure fails

    [[nodiscard]] bool projected() const noexcept { return table && !closure.closed(); }
    [[nodiscard]] Block block_of(std::size_t index) const;
    [[nodiscard]] std::size_t tensor_index(std::size_t a_prime, std::size_t j_prime) const;
};

// Span of the non-unit structural basis vectors.
Subspace prime_space(const AlgebraTable& a);

TitsAlgebra build_tits(const AlgebraTable& a, const LieSubalgebra& der_a, const HermAlgebra& j,
                       const LieSubalgebra& der_j, const TitsConventions& conventions = {},
                       const TitsOptions& options = {});

// Antisymmetry and Jacobi on the bracket table; throws std::logic_error when no table was built.
JacobiReport verify_lie(const TitsAlgebra& t, const JacobiOptions& options);

TitsGrading grading_report(const TitsAlgebra& t);

// ---------------------------------------------------------------- standard inputs

enum class DerivationChoice {
    designated,  // derivations of the last tensor factor, lifted; full algebra for a single factor
    full,
};

// Computes der(table); callers may substitute a cached solver.
using Deriver = std::function<LieSubalgebra(const AlgebraTable&)>;

LieSubalgebra coefficient_derivations(const AlgebraTable& a, DerivationChoice choice,
                                      const Deriver& derive = derivation_algebra);

// Applies a derivation of the coefficient algebra to every matrix entry.
LinearOperator entrywise_lift(const HermAlgebra& j, const LinearOperator& d);

// Designated: entrywise lift of the designated coefficient derivations when the
// coefficient algebra is a tensor product, the full algebra otherwise.
LieSubalgebra jordan_derivations(const HermAlgebra& j, DerivationChoice choice,
                                 const Deriver& derive = derivation_algebra);

// Hermitian matrices over b: standard conjugation for a single factor, the
// real-diagonal gamma for a tensor product.
HermAlgebra jordan_over(const AlgebraTable& b);

struct TitsInput {
    std::string name;
    AlgebraTable coeff;
    LieSubalgebra der_coeff;
    HermAlgebra jordan;
    LieSubalgebra der_jordan;
};

// The three planes: 1 = (C*H, O), 2 = (O, C*H), 3 = (C*O, H).
TitsInput plane_input(int plane, DerivationChoice choice, const Deriver& derive = derivation_algebra);

}  // namespace tensorion
