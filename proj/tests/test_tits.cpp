#include <gtest/gtest.h>

#include "support/bridge.hpp"
#include "support/generators.hpp"
#include "tensorion/construct.hpp"
#include "tensorion/tits.hpp"

using namespace tensorion;

namespace {

using oracle::Q;
using oracle::Vec;

// Sparse bracket evaluated with GMP rationals.
struct OracleBracket {
    std::size_t n;
    std::vector<std::vector<std::pair<std::size_t, Q>>> c;

    explicit OracleBracket(const AlgebraTable& l) : n(l.dim()), c(n * n) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [k, v] : l.product(i, j)) c[i * n + j].emplace_back(k, v.to_mpq());
    }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec r = oracle::zeros(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j] == 0) continue;
                for (const auto& [k, v] : c[i * n + j]) r[k] += x[i] * y[j] * v;
            }
        }
        return r;
    }

    Vec jacobiator(const Vec& x, const Vec& y, const Vec& z) const {
        return oracle::add(oracle::add(bracket(bracket(x, y), z), bracket(bracket(y, z), x)), bracket(bracket(z, x), y));
    }
};

Vec random_vec(gen::Source& src, std::size_t n, std::size_t support) { return bridge::to_oracle(src.sign_vector(n, support)); }

TitsAlgebra classical(const char* a_name, const char* b_name) {
    const AlgebraTable a = hurwitz(a_name);
    const HermAlgebra j = jordan_over(hurwitz(b_name));
    return build_tits(a, derivation_algebra(a), j, derivation_algebra(j.table()));
}

TitsAlgebra plane(int p, DerivationChoice choice) {
    const TitsInput in = plane_input(p, choice);
    return build_tits(in.coeff, in.der_coeff, in.jordan, in.der_jordan);
}

}  // namespace

TEST(Conventions, Fingerprint) {
    const TitsConventions c;
    EXPECT_EQ(c.bullet(), Rational(2, 3));
    EXPECT_EQ(c.fingerprint(),
              "alpha=1/3;beta=1;gamma=1/2;jordan_scale=2;bullet_coeff=2/3;inner=trace_of_symmetrized;coeff_form=orthonormal");
    TitsConventions d;
    d.bullet_coeff = Rational(1);
    EXPECT_NE(d.fingerprint(), c.fingerprint());
}

TEST(Classical, MagicSquareEntries) {
    struct Case {
        const char* a;
        const char* b;
        TitsGrading grading;
    };
    for (const auto& c : std::vector<Case>{{"C", "H", {0, 21, 1, 14}}, {"O", "R", {14, 3, 7, 5}}, {"H", "O", {3, 52, 3, 26}}}) {
        const TitsAlgebra t = classical(c.a, c.b);
        EXPECT_EQ(t.grading, c.grading) << c.a << c.b;
        EXPECT_TRUE(t.closure.closed()) << c.a << c.b;
        ASSERT_TRUE(t.table.has_value());
        const JacobiReport r = verify_lie(t, {});
        EXPECT_TRUE(r.antisymmetric);
        EXPECT_TRUE(r.jacobi) << c.a << c.b;
        EXPECT_EQ(r.triples_checked, triple_count(t.grading.total()));
    }
    EXPECT_EQ(classical("C", "H").grading.total(), 35u);
    EXPECT_EQ(classical("O", "R").grading.total(), 52u);
    EXPECT_EQ(classical("H", "O").grading.total(), 133u);
}

TEST(Classical, OracleJacobiOnRandomElements) {
    gen::Source src(17);
    const TitsAlgebra t = classical("O", "R");
    const OracleBracket b(*t.table);
    for (int s = 0; s < 20; ++s) {
        const Vec x = random_vec(src, 52, 4), y = random_vec(src, 52, 4), z = random_vec(src, 52, 4);
        EXPECT_TRUE(oracle::is_zero(b.jacobiator(x, y, z)));
        EXPECT_EQ(b.bracket(x, y), oracle::scaled(b.bracket(y, x), Q(-1)));
    }
}

TEST(Classical, F4KillingFormIsNegativeDefinite) {
    const TitsAlgebra t = classical("O", "R");
    EXPECT_EQ(inertia(killing_form(*t.table)), (Inertia{0, 0, 52}));
}

TEST(Layout, BlocksAndTensorIndices) {
    const TitsAlgebra t = classical("O", "R");
    EXPECT_EQ(t.block_of(0), Block::der_a);
    EXPECT_EQ(t.block_of(13), Block::der_a);
    EXPECT_EQ(t.block_of(14), Block::der_j);
    EXPECT_EQ(t.block_of(17), Block::tensor);
    EXPECT_THROW((void)t.block_of(52), std::out_of_range);
    EXPECT_EQ(t.tensor_index(0, 0), 17u);
    EXPECT_EQ(t.tensor_index(1, 0), 22u);
    EXPECT_EQ(t.tensor_index(6, 4), 51u);
    EXPECT_THROW((void)t.tensor_index(7, 0), std::out_of_range);
    EXPECT_EQ(prime_space(hurwitz("O")).dim(), 7u);
}

TEST(Planes, Gradings) {
    struct Case {
        int plane;
        DerivationChoice choice;
        TitsGrading grading;
    };
    for (const auto& c : std::vector<Case>{{1, DerivationChoice::designated, {3, 52, 7, 26}},
                                          {1, DerivationChoice::full, {6, 52, 7, 26}},
                                          {2, DerivationChoice::full, {14, 9, 7, 26}},
                                          {3, DerivationChoice::designated, {14, 21, 15, 14}},
                                          {3, DerivationChoice::full, {28, 21, 15, 14}}}) {
        const TitsInput in = plane_input(c.plane, c.choice);
        const TitsGrading g = grading_report(build_tits(in.coeff, in.der_coeff, in.jordan, in.der_jordan));
        EXPECT_EQ(g, c.grading) << c.plane;
    }
    const TitsGrading g2 = grading_report(plane(2, DerivationChoice::designated));
    EXPECT_EQ(g2.tensor(), 182u);
    EXPECT_EQ(g2.total(), 199u);
    EXPECT_EQ(plane(1, DerivationChoice::designated).grading.total(), 237u);
    EXPECT_EQ(plane(3, DerivationChoice::designated).grading.total(), 245u);
    EXPECT_THROW((void)plane_input(4, DerivationChoice::full), std::invalid_argument);
}

TEST(Planes, DerivationClosureOfDesignatedPlaneOne) {
    const TitsAlgebra t = plane(1, DerivationChoice::designated);
    EXPECT_FALSE(t.closure.der_a.closed);
    EXPECT_EQ(t.closure.der_a.failures, 6u);
    EXPECT_EQ(t.closure.der_a.enlargement, 6u);
    EXPECT_EQ(t.closure.der_a.witness, (std::pair<std::size_t, std::size_t>{0, 5}));
    EXPECT_TRUE(t.closure.der_j.closed);
    EXPECT_TRUE(t.projected());
}

TEST(Planes, FullCoefficientDerivationsClose) {
    for (int p : {1, 2}) EXPECT_TRUE(plane(p, DerivationChoice::full).closure.der_a.closed) << p;
}

TEST(Planes, StrictPolicyBuildsNoTable) {
    const TitsInput in = plane_input(1, DerivationChoice::designated);
    TitsOptions strict;
    strict.policy = ClosurePolicy::strict;
    const TitsAlgebra t = build_tits(in.coeff, in.der_coeff, in.jordan, in.der_jordan, {}, strict);
    EXPECT_FALSE(t.table.has_value());
    EXPECT_THROW((void)verify_lie(t, {}), std::logic_error);
}

TEST(Planes, BracketIsAlternating) {
    for (int p : {1, 2, 3}) {
        const TitsAlgebra t = plane(p, DerivationChoice::designated);
        const AlgebraTable& l = *t.table;
        for (std::size_t i = 0; i < l.dim(); ++i) {
            ASSERT_TRUE(l.product(i, i).empty()) << p;
            for (std::size_t j = 0; j < i; ++j) ASSERT_EQ(l.product(i, j), l.product(j, i).scaled(Rational(-1)));
        }
    }
}

TEST(Planes, PlaneThreeJacobiFailure) {
    const TitsAlgebra t = plane(3, DerivationChoice::designated);
    const JacobiReport r = verify_lie(t, {});
    EXPECT_TRUE(r.antisymmetric);
    EXPECT_FALSE(r.jacobi);
    EXPECT_EQ(r.triples_checked, 2421090u);
    EXPECT_EQ(r.failing_triples, 405720u);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(*r.witness, (std::array<std::size_t, 3>{35, 36, 161}));
    const auto& labels = t.table->labels();
    EXPECT_EQ(labels[35], "C0.O1|E11:H0'");
    EXPECT_EQ(labels[36], "C0.O1|E22:H0'");
    EXPECT_EQ(labels[161], "C1.O2|E11:H0'");
    const OracleBracket b(*t.table);
    const Vec value = b.jacobiator(oracle::unit(245, 35), oracle::unit(245, 36), oracle::unit(245, 161));
    EXPECT_FALSE(oracle::is_zero(value));
    EXPECT_EQ(bridge::to_oracle(r.jacobiator), value);
}

TEST(Planes, NoFailingTripleInsideTheDerivationBlocks) {
    // der(A) + der(J) is a direct sum of Lie algebras, so the minimal witness
    // cannot have all three indices there.
    const TitsAlgebra t = plane(3, DerivationChoice::designated);
    const OracleBracket b(*t.table);
    const std::size_t d = t.grading.der_a + t.grading.der_j;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k)
                ASSERT_TRUE(oracle::is_zero(b.jacobiator(oracle::unit(245, i), oracle::unit(245, j), oracle::unit(245, k))));
}

TEST(TitsProperty, BulletCoefficientOnlyMovesTheTensorBlock) {
    const AlgebraTable a = hurwitz("O");
    const HermAlgebra j = jordan_over(hurwitz("R"));
    TitsConventions c;
    c.bullet_coeff = Rational(1);
    const TitsAlgebra t = build_tits(a, derivation_algebra(a), j, derivation_algebra(j.table()), c);
    EXPECT_EQ(t.grading.total(), 52u);
    EXPECT_FALSE(t.closure.bullet_trace_zero);
}
