#include <gtest/gtest.h>

#include "support/bridge.hpp"
#include "support/generators.hpp"
#include "tensorion/construct.hpp"
#include "tensorion/derivations.hpp"
#include "tensorion/jordan.hpp"
#include "tensorion/lie.hpp"

using namespace tensorion;

namespace {

using oracle::Q;
using oracle::Vec;

// Dense structure constants c[i][j][k].
struct DenseBracket {
    std::size_t n;
    std::vector<Q> c;

    explicit DenseBracket(const AlgebraTable& l) : n(l.dim()), c(n * n * n) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [k, v] : l.product(i, j)) c[(i * n + j) * n + k] = v.to_mpq();
    }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec r = oracle::zeros(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (x[i] != 0 && y[j] != 0)
                    for (std::size_t k = 0; k < n; ++k) r[k] += x[i] * y[j] * c[(i * n + j) * n + k];
        return r;
    }

    // ad(e_i)[k][j] = c[i][j][k]
    Q killing(std::size_t a, std::size_t b) const {
        Q t = 0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) t += c[(a * n + k) * n + j] * c[(b * n + j) * n + k];
        return t;
    }

    Vec jacobiator(std::size_t i, std::size_t j, std::size_t k) const {
        const Vec ei = oracle::unit(n, i), ej = oracle::unit(n, j), ek = oracle::unit(n, k);
        return oracle::add(oracle::add(bracket(bracket(ei, ej), ek), bracket(bracket(ej, ek), ei)),
                           bracket(bracket(ek, ei), ej));
    }
};

// Leading principal minors alternate in sign exactly for negative definite forms.
bool sylvester_negative_definite(const Matrix& m) {
    const std::size_t n = m.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<Vec> minor(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = m(i, j).to_mpq();
        const Q det = oracle::determinant(minor);
        if ((k % 2 == 1 && det >= 0) || (k % 2 == 0 && det <= 0)) return false;
    }
    return true;
}

Matrix elementary(std::size_t n, std::size_t r, std::size_t c) {
    Matrix m(n, n);
    m(r, c) = 1;
    return m;
}

AlgebraTable gl2() { return lie_closure("gl2", 2, {elementary(2, 0, 0), elementary(2, 0, 1), elementary(2, 1, 0), elementary(2, 1, 1)}).bracket(); }

Matrix random_unimodular(gen::Source& src, std::size_t n) {
    Matrix p = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) p(i, j) = Rational(src.between(-2, 2));
    Matrix q = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) q(i, j) = Rational(src.between(-1, 1));
    return p * q;
}

AlgebraTable perturbed(const AlgebraTable& l, std::size_t i, std::size_t j, std::size_t k) {
    auto products = l.products();
    const std::size_t n = l.dim();
    products[i * n + j] = products[i * n + j] + SparseVector::unit(k);
    products[j * n + i] = products[j * n + i] - SparseVector::unit(k);
    return AlgebraTable("broken", l.labels(), std::nullopt, std::move(products));
}

}  // namespace

TEST(Killing, MatchesTraceOracle) {
    for (const char* spec : {"H", "O"}) {
        const AlgebraTable l = derivation_algebra(hurwitz(spec)).bracket();
        const DenseBracket d(l);
        const Matrix k = killing_form(l).matrix;
        for (std::size_t a = 0; a < l.dim(); ++a)
            for (std::size_t b = 0; b < l.dim(); ++b) ASSERT_EQ(k(a, b).to_mpq(), d.killing(a, b)) << spec;
    }
}

TEST(Killing, CompactDerivationAlgebrasAreNegativeDefinite) {
    const std::vector<std::pair<AlgebraTable, std::size_t>> cases = {
        {hurwitz("H"), 3},
        {hurwitz("O"), 14},
        {build_herm(hurwitz("H"), standard_conjugation(hurwitz("H"))).table(), 21},
    };
    for (const auto& [a, dim] : cases) {
        const AlgebraTable l = derivation_algebra(a).bracket();
        const BilinearForm k = killing_form(l);
        ASSERT_TRUE(sylvester_negative_definite(k.matrix)) << a.name();
        EXPECT_EQ(inertia(k), (Inertia{0, 0, dim})) << a.name();
        EXPECT_TRUE(is_semisimple(l));
    }
}

TEST(Killing, AdInvariance) {
    gen::Source src(3);
    const AlgebraTable l = derivation_algebra(hurwitz("O")).bracket();
    const Matrix k = killing_form(l).matrix;
    auto form = [&](const Vector& x, const Vector& y) { return dot(x, k.apply(y)); };
    for (int t = 0; t < 30; ++t) {
        const Vector x = src.vector(14, 4), y = src.vector(14, 4), z = src.vector(14, 4);
        EXPECT_EQ(form(multiply(l, x, y), z) + form(y, multiply(l, x, z)), Rational(0));
    }
}

TEST(InertiaProperty, CongruenceByUnimodularMatrices) {
    gen::Source src(8);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + src.below(7);
        Matrix d(n, n);
        Inertia expected;
        for (std::size_t i = 0; i < n; ++i) {
            const auto s = src.between(-1, 1);
            d(i, i) = Rational(s * src.between(1, 5), src.between(1, 4));
            (s > 0 ? expected.positive : s < 0 ? expected.negative : expected.zero)++;
        }
        const Matrix p = random_unimodular(src, n);
        EXPECT_EQ(inertia({p.transpose() * d * p}), expected);
    }
}

TEST(Structure, DerivedAlgebraAndCenterOfGl2) {
    const AlgebraTable l = gl2();
    ASSERT_EQ(l.dim(), 4u);
    const DenseBracket d(l);
    std::vector<Vec> brackets;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) brackets.push_back(d.bracket(oracle::unit(4, i), oracle::unit(4, j)));
    ASSERT_EQ(oracle::rank(brackets), 3u);
    EXPECT_EQ(derived_algebra(l).dim(), 3u);
    EXPECT_EQ(center_lie(l).dim(), 1u);
    EXPECT_FALSE(is_semisimple(l));
}

TEST(StructureProperty, DerivedAlgebraAndCenterAreIdeals) {
    gen::Source src(4);
    for (const AlgebraTable& l : {gl2(), derivation_algebra(hurwitz("O")).bracket()}) {
        for (const Subspace& s : {derived_algebra(l), center_lie(l)})
            for (const auto& b : s.basis())
                for (int t = 0; t < 5; ++t) EXPECT_TRUE(s.contains(multiply(l, src.vector(l.dim(), 3), b)));
    }
}

TEST(Coset, RotationsAboutAnAxisAreSymmetric) {
    const LieSubalgebra der = derivation_algebra(hurwitz("H"));
    const AlgebraTable& l = der.bracket();
    std::vector<Vector> rows(4, Vector(3));
    for (std::size_t p = 0; p < 3; ++p) {
        const Vector image = der.operators()[p].apply(unit_vector(4, 1));
        for (std::size_t m = 0; m < 4; ++m) rows[m][p] = image[m];
    }
    const Subspace h = Subspace::span(3, rows).annihilator();
    ASSERT_EQ(h.dim(), 1u);
    const CosetTest c = symmetric_coset_test(l, h);
    EXPECT_TRUE(c.closed);
    EXPECT_EQ(c.complement_dim, 2u);
    EXPECT_TRUE(c.cc_in_h);
}

TEST(Coset, OctonionStabilizerIsNotSymmetric) {
    const LieSubalgebra der = derivation_algebra(hurwitz("O"));
    const AlgebraTable& l = der.bracket();
    std::vector<Vector> rows(8, Vector(14));
    for (std::size_t p = 0; p < 14; ++p) {
        const Vector image = der.operators()[p].apply(unit_vector(8, 1));
        for (std::size_t m = 0; m < 8; ++m) rows[m][p] = image[m];
    }
    const Subspace h = Subspace::span(14, rows).annihilator();
    ASSERT_EQ(h.dim(), 8u);
    const CosetTest c = symmetric_coset_test(l, h);
    EXPECT_TRUE(c.closed);
    EXPECT_EQ(c.complement_dim, 6u);
    EXPECT_FALSE(c.cc_in_h);
    ASSERT_TRUE(c.witness.has_value());
    const DenseBracket d(l);
    const Vec w = d.bracket(bridge::to_oracle(c.witness->first), bridge::to_oracle(c.witness->second));
    EXPECT_FALSE(h.contains(bridge::from_oracle(w)));
    EXPECT_THROW((void)symmetric_coset_test(l, Subspace::span(14, {unit_vector(14, 0), unit_vector(14, 1)}).sum(h)),
                 std::invalid_argument);
}

TEST(Jacobi, TripleCountMatchesLoops) {
    for (std::size_t n = 0; n < 12; ++n) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) ++count;
        EXPECT_EQ(triple_count(n), count);
    }
}

TEST(Jacobi, GenuineLieAlgebraPasses) {
    const AlgebraTable l = derivation_algebra(hurwitz("O")).bracket();
    const JacobiReport r = verify_jacobi(l, {});
    EXPECT_TRUE(r.antisymmetric);
    EXPECT_TRUE(r.jacobi);
    EXPECT_EQ(r.triples_checked, triple_count(14));
    EXPECT_EQ(r.failing_triples, 0u);
}

TEST(Jacobi, BrokenTableWitnessIsMinimal) {
    const AlgebraTable l = perturbed(derivation_algebra(hurwitz("O")).bracket(), 3, 5, 9);
    const DenseBracket d(l);
    const JacobiReport r = verify_jacobi(l, {});
    ASSERT_FALSE(r.jacobi);
    ASSERT_TRUE(r.witness.has_value());
    const auto [wi, wj, wk] = *r.witness;
    std::size_t failing = 0;
    bool seen = false;
    for (std::size_t i = 0; i < 14; ++i)
        for (std::size_t j = i + 1; j < 14; ++j)
            for (std::size_t k = j + 1; k < 14; ++k) {
                const bool fails = !oracle::is_zero(d.jacobiator(i, j, k));
                failing += fails;
                if (fails && !seen) {
                    seen = true;
                    EXPECT_EQ((std::array<std::size_t, 3>{i, j, k}), (std::array<std::size_t, 3>{wi, wj, wk}));
                }
            }
    EXPECT_EQ(r.failing_triples, failing);
    EXPECT_EQ(bridge::to_oracle(r.jacobiator), d.jacobiator(wi, wj, wk));
}

TEST(JacobiProperty, VerdictInvariantUnderRelabelling) {
    gen::Source src(21);
    const AlgebraTable good = derivation_algebra(hurwitz("O")).bracket();
    const AlgebraTable bad = perturbed(good, 0, 7, 2);
    for (int t = 0; t < 4; ++t) {
        const auto p = src.permutation(14);
        for (const auto* l : {&good, &bad}) {
            std::vector<std::string> labels(14);
            std::vector<SparseVector> products(14 * 14);
            for (std::size_t i = 0; i < 14; ++i) {
                labels[p[i]] = l->labels()[i];
                for (std::size_t j = 0; j < 14; ++j) {
                    std::vector<SparseVector::Entry> e;
                    for (const auto& [k, c] : l->product(i, j)) e.emplace_back(static_cast<std::uint32_t>(p[k]), c);
                    products[p[i] * 14 + p[j]] = SparseVector(std::move(e));
                }
            }
            const AlgebraTable q("q", labels, std::nullopt, products);
            const JacobiReport a = verify_jacobi(*l, {}), b = verify_jacobi(q, {});
            EXPECT_EQ(a.jacobi, b.jacobi);
            EXPECT_EQ(a.failing_triples, b.failing_triples);
        }
    }
}

TEST(Jacobi, SampledModeIsSeedDeterministic) {
    const AlgebraTable l = perturbed(derivation_algebra(hurwitz("O")).bracket(), 1, 2, 3);
    JacobiOptions o;
    o.sampled = true;
    o.seed = 11;
    o.samples = 200;
    const JacobiReport a = verify_jacobi(l, o), b = verify_jacobi(l, o);
    EXPECT_EQ(a.failing_triples, b.failing_triples);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.triples_checked, 200u);
    o.threads = 3;
    EXPECT_EQ(verify_jacobi(l, o).failing_triples, a.failing_triples);
}
