#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tensorion/algebra.hpp"

namespace tensorion {

// A linear involution on an algebra together with the verdicts of its
// defining properties. Construction never throws on a failed property so
// that a malformed involution can still be studied; use require_valid() for
// the strict behaviour.
struct Involution {
    std::string name;
    Matrix map;  // column j holds the image of e_j
    bool squares_to_identity = false;
    bool fixes_unit = false;
    bool antihomomorphism = false;
    std::optional<std::pair<std::size_t, std::size_t>> antihomomorphism_witness;  // basis pair (x, y)

    [[nodiscard]] bool valid() const { return squares_to_identity && fixes_unit && antihomomorphism; }
    void require_valid() const;
    [[nodiscard]] Vector apply(std::span<const Rational> x) const { return map.apply(x); }
};

Involution make_involution(const AlgebraTable& a, std::string name, Matrix map);

// Fixes the unit and negates every other structural basis element.
Involution standard_conjugation(const AlgebraTable& a);

enum class GammaFlavor {
    real_diagonal,     // z0 -> conj(z0), z_k i_k -> -z_k i_k
    complex_diagonal,  // identity on the complex factor, negation elsewhere
};

Involution involution_gamma(const AlgebraTable& a, GammaFlavor flavor);

struct NuclearVerdict {
    bool nuclear = true;
    Vector witness;        // x with x sigma(x) outside the nucleus
    Vector witness_value;  // x sigma(x)
};

NuclearVerdict is_nuclear(const AlgebraTable& a, const Involution& inv);

enum class HermProduct { jordan, raw };

struct HermBasisEntry {
    bool diagonal = false;
    std::size_t row = 0;
    std::size_t col = 0;
    Vector coeff;  // entry at (row, col); (col, row) holds its involution image
};

using HermMatrix = std::array<SparseVector, 9>;

// 3x3 Hermitian matrices over a coefficient algebra with respect to an
// involution, with the product table induced on the Hermitian basis.
// When a product leaves the Hermitian matrices the table stores the
// Hermitian projection (Z + Z^{sigma T}) / 2 and records the offending pair.
class HermAlgebra {
public:
    HermAlgebra(AlgebraTable coeff, Involution inv, HermProduct product);

    [[nodiscard]] const AlgebraTable& coeff() const noexcept { return coeff_; }
    [[nodiscard]] const Involution& involution() const noexcept { return inv_; }
    [[nodiscard]] HermProduct product_kind() const noexcept { return product_; }
    [[nodiscard]] const AlgebraTable& table() const noexcept { return table_; }
    [[nodiscard]] std::size_t dim() const noexcept { return table_.dim(); }
    [[nodiscard]] const std::vector<HermBasisEntry>& basis() const noexcept { return basis_; }
    [[nodiscard]] const Subspace& fixed_space() const noexcept { return fixed_; }
    [[nodiscard]] const Vector& identity() const noexcept { return identity_; }
    [[nodiscard]] bool closed() const noexcept { return !closure_witness_.has_value(); }
    [[nodiscard]] const std::optional<std::pair<std::size_t, std::size_t>>& closure_witness() const noexcept {
        return closure_witness_;
    }

    [[nodiscard]] HermMatrix matrix_of(std::span<const Rational> coords) const;
    // Coordinates of the Hermitian projection of m.
    [[nodiscard]] Vector coords_of(const HermMatrix& m) const;
    [[nodiscard]] bool is_hermitian(const HermMatrix& m) const;

private:
    AlgebraTable coeff_;
    Involution inv_;
    HermProduct product_;
    Subspace fixed_;
    std::vector<HermBasisEntry> basis_;
    AlgebraTable table_;
    Vector identity_;
    std::optional<std::pair<std::size_t, std::size_t>> closure_witness_;
};

HermAlgebra build_herm(const AlgebraTable& coeff, const Involution& inv, HermProduct product = HermProduct::jordan);

struct JordanCheck {
    bool pass = true;
    std::string failure;              // closure | commutativity | jordan_identity
    std::vector<Vector> witness;      // (x, y) in Hermitian coordinates
    std::vector<Vector> identity_witness;  // Jordan identity failure on the projected table, when searched
    std::size_t tuples_checked = 0;
};

// Closure, commutativity, a seeded random pre-filter, then the fully
// linearized identity on every basis 4-tuple.
JordanCheck jordan_identity_check(const HermAlgebra& j, std::uint64_t seed = 0, std::size_t samples = 200);

// (x.y).(x.x) - x.(y.(x.x)) in the table of j.
Vector jordan_identity_defect(const AlgebraTable& t, std::span<const Rational> x, std::span<const Rational> y);

Rational trace(const HermAlgebra& j, std::span<const Rational> x);
Rational inner(const HermAlgebra& j, std::span<const Rational> x, std::span<const Rational> y);
Vector prime(const HermAlgebra& j, std::span<const Rational> x);
// scale * x.y - coeff <x, y> 1; coeff defaults to scale / 3, the exact trace-zero projection.
Vector bullet(const HermAlgebra& j, std::span<const Rational> x, std::span<const Rational> y,
              const Rational& scale = 1, const std::optional<Rational>& coeff = std::nullopt);
Subspace trace_zero_space(const HermAlgebra& j);

}  // namespace tensorion
