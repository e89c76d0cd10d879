#include <gtest/gtest.h>

#include <algorithm>

#include "support/bridge.hpp"
#include "support/generators.hpp"
#include "tensorion/construct.hpp"
#include "tensorion/jordan.hpp"
#include "tensorion/tits.hpp"

using namespace tensorion;

namespace {

// 3x3 matrices over a Cayley-Dickson tensor algebra, computed independently.
struct OracleHerm {
    oracle::TensorAlgebra alg;
    std::vector<int> sigma;  // diagonal involution signs

    using Mat = std::array<oracle::Vec, 9>;

    Mat mul(const Mat& x, const Mat& y) const {
        Mat z;
        for (auto& e : z) e = oracle::zeros(alg.dim());
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                for (int k = 0; k < 3; ++k) z[3 * r + c] = oracle::add(z[3 * r + c], alg.mul(x[3 * r + k], y[3 * k + c]));
        return z;
    }

    Mat jordan(const Mat& x, const Mat& y) const {
        const Mat a = mul(x, y), b = mul(y, x);
        Mat z;
        for (int e = 0; e < 9; ++e) z[e] = oracle::scaled(oracle::add(a[e], b[e]), oracle::Q(1, 2));
        return z;
    }

    oracle::Vec apply_sigma(const oracle::Vec& v) const {
        oracle::Vec r(v);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] *= sigma[i];
        return r;
    }

    bool hermitian(const Mat& m) const {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (m[3 * r + c] != apply_sigma(m[3 * c + r])) return false;
        return true;
    }

    static Mat from(const HermMatrix& m, std::size_t n) {
        Mat out;
        for (int e = 0; e < 9; ++e) out[e] = bridge::to_oracle(m[e].to_dense(n));
        return out;
    }

    // Random Hermitian matrix with small integer entries.
    Mat random(gen::Source& src) const {
        const std::size_t n = alg.dim();
        Mat m;
        for (auto& e : m) e = oracle::zeros(n);
        for (int d = 0; d < 3; ++d)
            for (std::size_t i = 0; i < n; ++i)
                if (sigma[i] == 1 && src.below(2)) m[4 * d][i] = static_cast<long>(src.between(-3, 3));
        for (auto [r, c] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
            for (std::size_t i = 0; i < n; ++i)
                if (src.below(3) == 0) m[3 * r + c][i] = static_cast<long>(src.between(-3, 3));
            m[3 * c + r] = apply_sigma(m[3 * r + c]);
        }
        return m;
    }
};

std::vector<int> conjugation_signs(std::size_t n) {
    std::vector<int> s(n, -1);
    s[0] = 1;
    return s;
}

// Complex factor first: +1 exactly on C0.X0 and C1.X0.
std::vector<int> complex_diagonal_signs(std::size_t n) {
    std::vector<int> s(n, -1);
    s[0] = 1;
    s[n / 2] = 1;
    return s;
}

}  // namespace

TEST(Involution, GammaFixedSpaces) {
    const AlgebraTable ch = from_spec("C*H");
    const Involution g = involution_gamma(ch, GammaFlavor::real_diagonal);
    EXPECT_EQ(build_herm(ch, g).fixed_space().dim(), 1u);
    const AlgebraTable co = from_spec("C*O");
    const Involution gt = involution_gamma(co, GammaFlavor::complex_diagonal);
    const HermAlgebra h = build_herm(co, gt);
    EXPECT_EQ(h.fixed_space().dim(), 2u);
    EXPECT_TRUE(h.fixed_space().contains(unit_vector(16, co.index_of("C1.O0"))));
    const Involution r = involution_gamma(hurwitz("R"), GammaFlavor::real_diagonal);
    EXPECT_EQ(r.map, Matrix::identity(1));
    EXPECT_THROW((void)involution_gamma(hurwitz("O"), GammaFlavor::complex_diagonal), std::invalid_argument);
}

TEST(Involution, ConjugationIsGenuineOnHurwitzAlgebras) {
    for (const char* name : {"R", "C", "H", "O"}) EXPECT_TRUE(standard_conjugation(hurwitz(name)).valid()) << name;
    EXPECT_TRUE(involution_gamma(from_spec("C*O"), GammaFlavor::complex_diagonal).valid());
}

TEST(Involution, RealDiagonalGammaIsNotAnAntihomomorphismOnTensorProducts) {
    // sigma(i_C i_H) = -i_C i_H but sigma(i_H) sigma(i_C) = i_H i_C = i_C i_H.
    for (const char* spec : {"C*H", "C*O", "C*H*O"}) {
        const Involution g = involution_gamma(from_spec(spec), GammaFlavor::real_diagonal);
        EXPECT_TRUE(g.squares_to_identity) << spec;
        EXPECT_TRUE(g.fixes_unit) << spec;
        EXPECT_FALSE(g.antihomomorphism) << spec;
        ASSERT_TRUE(g.antihomomorphism_witness.has_value());
    }
    EXPECT_THROW(involution_gamma(from_spec("C*H"), GammaFlavor::real_diagonal).require_valid(), std::invalid_argument);
}

TEST(Nuclear, Verdicts) {
    const AlgebraTable ch = from_spec("C*H");
    EXPECT_TRUE(is_nuclear(ch, involution_gamma(ch, GammaFlavor::real_diagonal)).nuclear);
    EXPECT_TRUE(is_nuclear(hurwitz("O"), standard_conjugation(hurwitz("O"))).nuclear);
    for (const char* spec : {"C*O", "C*H*O"}) {
        const AlgebraTable a = from_spec(spec);
        const auto v = is_nuclear(a, involution_gamma(a, GammaFlavor::real_diagonal));
        EXPECT_FALSE(v.nuclear) << spec;
        EXPECT_FALSE(nucleus(a).contains(v.witness_value));
        EXPECT_EQ(v.witness_value, multiply(a, v.witness, involution_gamma(a, GammaFlavor::real_diagonal).apply(v.witness)));
    }
}

TEST(Herm, Dimensions) {
    // Oracle: 3 * (fixed dim) + 3 * (coefficient dim).
    auto expected = [](const std::vector<int>& signs) {
        return 3 * static_cast<std::size_t>(std::count(signs.begin(), signs.end(), 1)) + 3 * signs.size();
    };
    ASSERT_EQ(expected(conjugation_signs(8)), 27u);
    ASSERT_EQ(expected(conjugation_signs(4)), 15u);
    ASSERT_EQ(expected(complex_diagonal_signs(16)), 54u);
    EXPECT_EQ(build_herm(hurwitz("O"), standard_conjugation(hurwitz("O"))).dim(), 27u);
    EXPECT_EQ(build_herm(hurwitz("H"), standard_conjugation(hurwitz("H"))).dim(), 15u);
    EXPECT_EQ(jordan_over(from_spec("C*H")).dim(), 27u);
    const AlgebraTable co = from_spec("C*O");
    EXPECT_EQ(build_herm(co, involution_gamma(co, GammaFlavor::complex_diagonal)).dim(), 54u);
}

TEST(Herm, DiagonalIdempotentAndInner) {
    const HermAlgebra j = jordan_over(hurwitz("O"));
    const std::size_t e11 = j.table().index_of("E11:O0");
    const Vector x = unit_vector(27, e11);
    EXPECT_EQ(multiply(j.table(), x, x), x);
    EXPECT_EQ(inner(j, x, x), Rational(1));
    EXPECT_EQ(trace(j, j.identity()), Rational(3));
    EXPECT_TRUE(is_zero(prime(j, j.identity())));
}

TEST(Herm, JordanTableMatchesOracleMatrices) {
    gen::Source src(12);
    struct Case {
        const char* spec;
        std::vector<std::size_t> dims;
        bool complex_diagonal;
    };
    for (const auto& c : std::vector<Case>{{"O", {8}, false}, {"H", {4}, false}, {"C*O", {2, 8}, true}}) {
        const AlgebraTable a = from_spec(c.spec);
        const HermAlgebra h = c.complex_diagonal ? build_herm(a, involution_gamma(a, GammaFlavor::complex_diagonal))
                                                 : build_herm(a, standard_conjugation(a));
        const OracleHerm o{oracle::TensorAlgebra(c.dims),
                           c.complex_diagonal ? complex_diagonal_signs(a.dim()) : conjugation_signs(a.dim())};
        for (int t = 0; t < 25; ++t) {
            const Vector x = src.vector(h.dim(), 5), y = src.vector(h.dim(), 5);
            const auto X = OracleHerm::from(h.matrix_of(x), a.dim()), Y = OracleHerm::from(h.matrix_of(y), a.dim());
            ASSERT_TRUE(o.hermitian(X));
            EXPECT_EQ(OracleHerm::from(h.matrix_of(multiply(h.table(), x, y)), a.dim()), o.jordan(X, Y)) << c.spec;
        }
    }
}

TEST(JordanIdentity, OracleConfirmsGenuineJordanAlgebras) {
    gen::Source src(31);
    for (const auto& [dims, complex_diagonal] :
         std::vector<std::pair<std::vector<std::size_t>, bool>>{{{8}, false}, {{4}, false}, {{2, 8}, true}}) {
        std::size_t n = 1;
        for (auto d : dims) n *= d;
        const OracleHerm o{oracle::TensorAlgebra(dims), complex_diagonal ? complex_diagonal_signs(n) : conjugation_signs(n)};
        for (int t = 0; t < 4; ++t) {
            const auto x = o.random(src), y = o.random(src);
            const auto xx = o.jordan(x, x);
            const auto lhs = o.jordan(o.jordan(x, y), xx);
            const auto rhs = o.jordan(x, o.jordan(y, xx));
            for (int e = 0; e < 9; ++e) ASSERT_EQ(lhs[e], rhs[e]);
        }
    }
}

TEST(JordanIdentity, ExistenceCriterionMatrix) {
    struct Case {
        const char* spec;
        std::optional<GammaFlavor> gamma;
        bool jordan;
    };
    for (const auto& c : std::vector<Case>{{"O", std::nullopt, true},
                                          {"H", std::nullopt, true},
                                          {"C*O", GammaFlavor::complex_diagonal, true},
                                          {"C*O", GammaFlavor::real_diagonal, false},
                                          {"C*H*O", GammaFlavor::real_diagonal, false}}) {
        const AlgebraTable a = from_spec(c.spec);
        const Involution inv = c.gamma ? involution_gamma(a, *c.gamma) : standard_conjugation(a);
        const HermAlgebra h = build_herm(a, inv);
        const auto check = jordan_identity_check(h);
        EXPECT_EQ(check.pass, c.jordan) << c.spec;
        const bool predicted = is_alternative(a).holds && is_nuclear(a, inv).nuclear && inv.valid();
        EXPECT_EQ(check.pass, predicted) << c.spec;
        if (!check.pass) {
            EXPECT_FALSE(check.witness.empty());
        }
    }
}

TEST(JordanIdentity, RealDiagonalGammaLeavesHermitianMatricesForCH) {
    // The (C*H, gamma) entry of the existence criterion matrix: the product of the
    // reported witness pair is not Hermitian, confirmed with oracle arithmetic.
    const AlgebraTable ch = from_spec("C*H");
    const HermAlgebra h = jordan_over(ch);
    const auto check = jordan_identity_check(h);
    EXPECT_FALSE(check.pass);
    EXPECT_EQ(check.failure, "closure");
    ASSERT_EQ(check.witness.size(), 2u);
    const OracleHerm o{oracle::TensorAlgebra({2, 4}), conjugation_signs(8)};
    const auto X = OracleHerm::from(h.matrix_of(check.witness[0]), 8);
    const auto Y = OracleHerm::from(h.matrix_of(check.witness[1]), 8);
    ASSERT_TRUE(o.hermitian(X));
    ASSERT_TRUE(o.hermitian(Y));
    EXPECT_FALSE(o.hermitian(o.jordan(X, Y)));
}

TEST(JordanProperty, TablesAreCommutative) {
    for (const char* spec : {"O", "H", "C*H", "C*O"}) {
        const HermAlgebra h = jordan_over(from_spec(spec));
        EXPECT_TRUE(is_commutative(h.table()).holds) << spec;
    }
}

TEST(JordanProperty, PrimeAndBullet) {
    gen::Source src(77);
    const HermAlgebra j = jordan_over(hurwitz("O"));
    for (int t = 0; t < 60; ++t) {
        const Vector x = src.vector(27, 6), y = src.vector(27, 6);
        const Vector px = prime(j, x);
        EXPECT_EQ(trace(j, px), Rational(0));
        EXPECT_EQ(prime(j, px), px);
        const Vector py = prime(j, y);
        EXPECT_EQ(trace(j, bullet(j, px, py)), Rational(0));
        EXPECT_EQ(trace(j, bullet(j, px, py, Rational(2))), Rational(0));
        EXPECT_EQ(inner(j, x, y), inner(j, y, x));
    }
    const Vector e = unit_vector(27, 0);
    EXPECT_NE(trace(j, bullet(j, prime(j, e), prime(j, e), Rational(2), Rational(4, 3))), Rational(0));
    EXPECT_EQ(trace_zero_space(j).dim(), 26u);
}
