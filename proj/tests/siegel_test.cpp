#include <gtest/gtest.h>

#include <random>

#include "smf/siegel/satoh.hpp"

using namespace smf;

namespace
{
    const IgusaGenerators &gens()
    {
        static const IgusaGenerators g = igusa_generators(60, 40);
        return g;
    }

    CoeffValue<Rational> scalar(long v) { return CoeffValue<Rational>::scalar(Rational(v)); }
} // namespace

TEST(BQF, ReductionExamples)
{
    auto r1 = reduce_bqf({1, -1, 1});
    EXPECT_EQ(r1.reduced, (BQF{1, 1, 1}));
    EXPECT_EQ(transform(BQF{1, -1, 1}, r1.U), r1.reduced);
    auto r2 = reduce_bqf({2, 4, 5});
    EXPECT_EQ(r2.reduced, (BQF{2, 0, 3}));
    EXPECT_EQ(transform(BQF{2, 4, 5}, r2.U), r2.reduced);
    EXPECT_EQ(reduce_bqf({4, 4, 1}).reduced, (BQF{0, 0, 1}));
    EXPECT_EQ(reduce_bqf({8, 8, 2}).reduced, (BQF{0, 0, 2}));
    EXPECT_EQ(reduce_bqf({0, 0, 0}).reduced, (BQF{}));
    EXPECT_THROW(reduce_bqf({1, 3, 1}), PreconditionError);
}

TEST(BQF, ReductionPreservesInvariants)
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> dist(-12, 12);
    int checked = 0;
    while (checked < 500)
    {
        BQF f{dist(rng) + 12, dist(rng), dist(rng) + 12};
        if (!f.is_semidefinite())
            continue;
        ++checked;
        auto [g, U] = reduce_bqf(f);
        EXPECT_TRUE(is_reduced(g)) << f;
        EXPECT_EQ(g.disc(), f.disc()) << f;
        EXPECT_EQ(g.content(), f.content()) << f;
        EXPECT_TRUE(U.det() == 1 || U.det() == -1);
        EXPECT_EQ(transform(f, U), g);
        EXPECT_EQ(reduce_bqf(g).reduced, g);
    }
}

TEST(BQF, ReducedFormsAndDecompositions)
{
    auto forms = reduced_forms(12);
    std::vector<BQF> expected{{1, 1, 1}, {1, 0, 1}, {1, 1, 2}, {1, 0, 2}, {1, 1, 3}, {1, 0, 3}, {2, 2, 2}};
    EXPECT_EQ(forms, expected);
    long count = 0;
    for_each_decomposition({1, 0, 1}, [&](const BQF &f, const BQF &g)
                           {
        EXPECT_TRUE(f.is_semidefinite());
        EXPECT_TRUE(g.is_semidefinite());
        EXPECT_EQ(f + g, (BQF{1, 0, 1}));
        ++count; });
    EXPECT_EQ(count, 4);
}

TEST(CoeffValue, ActionIsRightAction)
{
    auto p = CoeffValue<Rational>::quadratic(1, 2, 3);
    IMat2 A{1, 2, 0, 1}, B{0, -1, 1, 0};
    EXPECT_EQ(act_on_poly(A, act_on_poly(B, p)), act_on_poly(A * B, p));
    // (X, Y) A = (X, 2X + Y).
    auto y2 = CoeffValue<Rational>::quadratic(0, 0, 1);
    EXPECT_EQ(act_on_poly(A, y2), CoeffValue<Rational>::quadratic(4, 4, 1));
    EXPECT_EQ(act_on_poly(A, scalar(5)), scalar(5));
}

TEST(SiegelExpansion, GeneratorExamples)
{
    const auto &g = gens();
    EXPECT_EQ(g.E4.stored({}), scalar(1));
    EXPECT_EQ(g.E4.stored({1, 1, 1}), scalar(13440));
    EXPECT_EQ(g.E4.stored({1, 0, 1}), scalar(30240));
    EXPECT_EQ(g.E4.stored({0, 0, 1}), scalar(240));
    EXPECT_EQ(g.E6.stored({0, 0, 1}), scalar(-504));
    EXPECT_EQ(g.X10.stored({1, 1, 1}), scalar(1));
    EXPECT_EQ(g.X10.stored({1, 0, 1}), scalar(-2));
    EXPECT_EQ(g.X12.stored({1, 1, 1}), scalar(1));
    EXPECT_EQ(g.X12.stored({1, 0, 1}), scalar(10));
}

TEST(SiegelExpansion, PhiOperatorOfGenerators)
{
    const auto &g = gens();
    EXPECT_EQ(phi_operator(g.E4).coefficients(), eisenstein_qexp(4, 41).coefficients());
    EXPECT_EQ(phi_operator(g.E6).coefficients(), eisenstein_qexp(6, 41).coefficients());
    EXPECT_TRUE(phi_operator(g.X10).is_zero());
    EXPECT_TRUE(phi_operator(g.X12).is_zero());
}

TEST(SiegelExpansion, CoefficientsAreGL2Invariant)
{
    const auto &g = gens();
    EXPECT_EQ(coefficient_at(g.E4, {1, -1, 1}), g.E4.stored({1, 1, 1}));
    EXPECT_EQ(coefficient_at(g.X10, {2, 4, 5}), g.X10.stored({2, 0, 3}));
    EXPECT_THROW(coefficient_at(g.E4, {40, 0, 40}), PreconditionError);
}

TEST(SiegelExpansion, ProductLaws)
{
    const auto &g = gens();
    auto E4E4 = multiply(g.E4, g.E4);
    EXPECT_EQ(E4E4.stored({0, 0, 1}), scalar(480));
    EXPECT_EQ(phi_operator(E4E4).coefficients(), (eisenstein_qexp(4, 41) * eisenstein_qexp(4, 41)).coefficients());
    EXPECT_EQ(multiply(g.E4, g.E6), multiply(g.E6, g.E4));
    SiegelExpansion<Rational> one(0, 0, 60, 40);
    one.set({}, scalar(1));
    EXPECT_EQ(multiply(one, g.X10), g.X10);
    auto lhs = multiply(multiply(g.E4, g.E6), g.X10);
    auto rhs = multiply(g.E4, multiply(g.E6, g.X10));
    EXPECT_EQ(lhs, rhs);
    // chi10 * chi12 vanishes to order two along the boundary.
    auto p = multiply(g.X10, g.X12);
    EXPECT_TRUE(p.stored({1, 1, 1}).is_zero());
    EXPECT_EQ(p.stored({2, 2, 2}), scalar(1));
}

TEST(SatohBracket, Examples)
{
    const auto &g = gens();
    auto b = satoh_bracket(g.E4, g.E6);
    EXPECT_EQ(b.k(), 10);
    EXPECT_EQ(b.j(), 2);
    EXPECT_EQ(b.stored({0, 0, 1}), CoeffValue<Rational>::quadratic(0, 0, 144));
    EXPECT_EQ(phi_operator(b).coefficients()[1], 144);
    auto self = satoh_bracket(g.E4, g.E4);
    for (const BQF &h : self.index_set())
        EXPECT_TRUE(self.stored(h).is_zero()) << h;
    auto ba = satoh_bracket(g.E6, g.E4);
    for (const BQF &h : b.index_set())
        EXPECT_EQ(ba.stored(h), Rational(-1) * b.stored(h)) << h;
}

TEST(SatohBracket, TransformRuleAgreesWithDirectConvolution)
{
    const auto &g = gens();
    auto b = satoh_bracket(g.E4, g.X10);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> dist(-6, 6);
    int checked = 0;
    while (checked < 50)
    {
        BQF h{dist(rng) + 6, dist(rng), dist(rng) + 6};
        if (!h.is_definite() || is_reduced(h) || h.disc() > 60)
            continue;
        ++checked;
        CoeffValue<Rational> direct = CoeffValue<Rational>::zero(2);
        for_each_decomposition(h, [&](const BQF &f, const BQF &q)
                               {
            Rational w = coefficient_at(g.E4, f).v[0] * coefficient_at(g.X10, q).v[0];
            if (w == 0)
                return;
            direct += w * (Rational(1, 4) * form_polynomial<Rational>(f) - Rational(1, 10) * form_polynomial<Rational>(q)); });
        EXPECT_EQ(coefficient_at(b, h), direct) << h;
    }
}

TEST(SatohBracket, PhiIsMultiplicative)
{
    const auto &g = gens();
    auto b = satoh_bracket(g.E4, g.E6);
    auto prod = multiply(g.E4, b);
    auto lhs = phi_operator(prod);
    auto rhs = phi_operator(g.E4) * phi_operator(b);
    for (size_t c = 0; c < lhs.n_terms(); ++c)
        EXPECT_EQ(lhs[c], rhs[c]) << c;
}

TEST(SatohBracket, LeibnizRule)
{
    const auto &g = gens();
    // (kG + kH)[F, GH] = kG H [F, G] + kH G [F, H].
    auto lhs = satoh_bracket(g.E4, multiply(g.E6, g.X10));
    auto r1 = multiply(g.X10, satoh_bracket(g.E4, g.E6));
    auto r2 = multiply(g.E6, satoh_bracket(g.E4, g.X10));
    for (const BQF &h : lhs.index_set())
        EXPECT_EQ(Rational(16) * lhs.stored(h), Rational(6) * r1.stored(h) + Rational(10) * r2.stored(h)) << h;
    auto sq = satoh_bracket(g.E6, multiply(g.E4, g.E4));
    auto gb = multiply(g.E4, satoh_bracket(g.E6, g.E4));
    for (const BQF &h : sq.index_set())
        EXPECT_EQ(sq.stored(h), gb.stored(h)) << h;
}

TEST(SatohBasis, ElementCounts)
{
    std::map<int, size_t> expected{{10, 1}, {12, 0}, {14, 2}, {16, 3}, {18, 3}, {20, 4}, {22, 7}};
    for (auto [k, n] : expected)
        EXPECT_EQ(satoh_elements(k).size(), n) << k;
    auto e20 = satoh_elements(20);
    std::vector<std::string> labels;
    for (const auto &e : e20)
        labels.push_back(e.label());
    EXPECT_EQ(labels, (std::vector<std::string>{"E4*E6*[E4,E6]", "X10*[E4,E6]", "E6*[E4,X10]", "E4*[E4,X12]"}));
    EXPECT_THROW(satoh_elements(9), PreconditionError);
    EXPECT_THROW(satoh_elements(8), PreconditionError);
}

TEST(SiegelRing, AgreesWithTables)
{
    const auto &g = gens();
    SiegelRing ring(60, 40);
    const SiegelExpansion<Rational> *tabs[4] = {&g.E4, &g.E6, &g.X10, &g.X12};
    for (int i = 0; i < 4; ++i)
        EXPECT_EQ(ring.generator_expansion(static_cast<Igusa>(i)), *tabs[i]);
    auto E4E6X10 = multiply(multiply(g.E4, g.E6), g.X10);
    Monomial m{{1, 1, 1, 0}};
    for (const BQF &h : E4E6X10.index_set())
        EXPECT_EQ(Rational(ring.monomial(m, h)), E4E6X10.stored(h).v[0]) << h;
    EXPECT_EQ(ring.monomial(Monomial::one(), {}), 1);
    EXPECT_EQ(ring.monomial(Monomial::one(), {1, 1, 1}), 0);
    EXPECT_THROW(ring.generator(Igusa::E4, {10, 0, 10}), PreconditionError);
    EXPECT_THROW(ring.generator(Igusa::E4, {0, 0, 41}), PreconditionError);
}

TEST(SatohBasis, MaterializedElementsMatchTableArithmetic)
{
    const auto &g = gens();
    auto basis = satoh_basis(20, 60, 40);
    std::vector<SiegelExpansion<Rational>> expected{
        multiply(multiply(g.E4, g.E6), satoh_bracket(g.E4, g.E6)),
        multiply(g.X10, satoh_bracket(g.E4, g.E6)),
        multiply(g.E6, satoh_bracket(g.E4, g.X10)),
        multiply(g.E4, satoh_bracket(g.E4, g.X12))};
    for (size_t i = 0; i < basis.size(); ++i)
        EXPECT_EQ(basis.materialize(i, 60, 40), expected[i]) << basis.label(i);
}

TEST(SatohBasis, TransformRuleAgreesWithDirectConvolution)
{
    const auto &g = gens();
    auto basis = satoh_basis(16, 60, 40);
    ASSERT_EQ(basis.size(), 3u);
    auto table = [&](Igusa x) -> const SiegelExpansion<Rational> &
    {
        const SiegelExpansion<Rational> *tabs[4] = {&g.E4, &g.E6, &g.X10, &g.X12};
        return *tabs[static_cast<int>(x)];
    };
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> dist(-7, 7);
    int checked = 0;
    while (checked < 50)
    {
        BQF h{dist(rng) + 7, dist(rng), dist(rng) + 7};
        if (!h.is_definite() || is_reduced(h) || h.disc() > 60)
            continue;
        ++checked;
        for (size_t i = 0; i < basis.size(); ++i)
        {
            const auto &e = basis.element(i);
            const auto &A = table(e.A), &B = table(e.B);
            Rational ia(1, igusa_weight(e.A)), ib(1, igusa_weight(e.B));
            CoeffValue<Rational> direct = CoeffValue<Rational>::zero(2);
            for_each_decomposition(h, [&](const BQF &f1, const BQF &f2)
                                   {
                Rational cm = Rational(basis.ring()->monomial(e.multiplier, f1));
                if (cm == 0)
                    return;
                for_each_decomposition(f2, [&](const BQF &x, const BQF &y)
                                       {
                    Rational w = cm * coefficient_at(A, x).v[0] * coefficient_at(B, y).v[0];
                    if (w != 0)
                        direct += w * (ia * form_polynomial<Rational>(x) - ib * form_polynomial<Rational>(y)); }); });
            EXPECT_EQ(basis.coefficient(i, h), direct) << h << " " << basis.label(i);
        }
    }
}

TEST(SatohBasis, CuspidalBracketsHaveVanishingPhi)
{
    for (int k : {14, 16, 18, 20})
    {
        auto basis = satoh_basis(k, 40, 30);
        for (size_t i = 0; i < basis.size(); ++i)
        {
            auto F = basis.materialize(i, 40, 30);
            if (basis.element(i).bracket_is_cuspidal())
                EXPECT_TRUE(phi_operator(F).is_zero()) << basis.label(i);
        }
    }
}
