#include <gtest/gtest.h>

#include "smf/eform/elliptic.hpp"
#include "smf/eform/qseries.hpp"

using namespace smf;

TEST(Eisenstein, Examples)
{
    auto e4 = eisenstein_qexp(4, 3);
    EXPECT_EQ(e4.coefficients(), (std::vector<Rational>{1, 240, 2160}));
    auto e6 = eisenstein_qexp(6, 2);
    EXPECT_EQ(e6.coefficients(), (std::vector<Rational>{1, -504}));
    for (int k = 4; k <= 20; k += 2)
        EXPECT_EQ(eisenstein_qexp(k, 5)[0], 1);
    EXPECT_THROW(eisenstein_qexp(5, 3), PreconditionError);
    EXPECT_THROW(eisenstein_qexp(2, 3), PreconditionError);
}

TEST(Delta, Examples)
{
    auto d = delta_qexp(8);
    EXPECT_EQ(d[1], 1);
    EXPECT_EQ(d[2], -24);
    EXPECT_EQ(d[3], 252);
    EXPECT_EQ(d[4], -1472);
    EXPECT_EQ(d[5], 4830);
}

TEST(Delta, MatchesEisensteinCombination)
{
    size_t n = 60;
    auto e4 = eisenstein_qexp(4, n), e6 = eisenstein_qexp(6, n);
    auto combo = Rational(1, 1728) * (e4 * e4 * e4 - e6 * e6);
    EXPECT_EQ(combo.coefficients(), delta_qexp(n).coefficients());
}

TEST(VictorMiller, Examples)
{
    auto b12 = victor_miller_basis(12, 20);
    ASSERT_EQ(b12.size(), 1u);
    EXPECT_EQ(b12[0].coefficients(), delta_qexp(20).coefficients());
    EXPECT_TRUE(victor_miller_basis(10, 20).empty());
    auto b24 = victor_miller_basis(24, 20);
    ASSERT_EQ(b24.size(), 2u);
    EXPECT_EQ(b24[0][1], 1);
    EXPECT_EQ(b24[0][2], 0);
    EXPECT_EQ(b24[1][1], 0);
    EXPECT_EQ(b24[1][2], 1);
}

TEST(VictorMiller, IntegralAndEchelonized)
{
    for (int r = 12; r <= 60; r += 2)
    {
        auto b = victor_miller_basis(r, 40);
        long d = dimension_Sk(r);
        ASSERT_EQ(static_cast<long>(b.size()), d) << r;
        for (long i = 0; i < d; ++i)
        {
            EXPECT_EQ(b[i][0], 0);
            for (long j = 1; j <= d; ++j)
                EXPECT_EQ(b[i][j], (i + 1 == j) ? 1 : 0);
            for (const auto &c : b[i].coefficients())
                EXPECT_EQ(c.get_den(), 1);
        }
    }
}

TEST(HeckeElliptic, DeltaEigenvalues)
{
    auto d = delta_qexp(200);
    auto t2 = hecke_Tn_elliptic(d, 12, 2);
    EXPECT_EQ(t2.coefficients(), (Rational(-24) * d.truncate(t2.n_terms())).coefficients());
    auto t7 = hecke_Tn_elliptic(d, 12, 7);
    EXPECT_EQ(t7.coefficients(), (Rational(-16744) * d.truncate(t7.n_terms())).coefficients());
    EXPECT_TRUE(hecke_Tn_elliptic(QSeries(12, 30), 12, 3).is_zero());
}

TEST(HeckeElliptic, OperatorsCommute)
{
    for (int r = 12; r <= 40; r += 2)
    {
        auto b = victor_miller_basis(r, 40);
        if (b.empty())
            continue;
        auto T2 = hecke_matrix_elliptic(b, r, 2);
        auto T3 = hecke_matrix_elliptic(b, r, 3);
        EXPECT_EQ(T2 * T3, T3 * T2) << r;
    }
}

TEST(EllipticEigenforms, Examples)
{
    auto f12 = elliptic_eigenforms(12, 30);
    ASSERT_EQ(f12.size(), 1u);
    EXPECT_EQ(f12[0].a(2), NumberFieldElement(-24));
    auto f16 = elliptic_eigenforms(16, 30);
    ASSERT_EQ(f16.size(), 1u);
    EXPECT_EQ(f16[0].a(2), NumberFieldElement(216));
    auto f32 = elliptic_eigenforms(32, 30);
    ASSERT_EQ(f32.size(), 1u);
    EXPECT_EQ(f32[0].field.degree(), 2);
}

TEST(EllipticEigenforms, Multiplicative)
{
    for (int r : {12, 24, 32, 36, 40})
        for (const auto &f : elliptic_eigenforms(r, 40))
        {
            EXPECT_EQ(f.a(1), NumberFieldElement(1));
            EXPECT_EQ(f.a(6), f.a(2) * f.a(3));
            EXPECT_EQ(f.a(10), f.a(2) * f.a(5));
            EXPECT_EQ(f.a(35), f.a(5) * f.a(7));
        }
}

TEST(EllipticEigenforms, RamanujanCongruence)
{
    auto d = delta_qexp(100);
    for (long p : primes_up_to(99))
    {
        Integer lhs = d[static_cast<size_t>(p)].get_num() - ipow(p, 11) - 1;
        EXPECT_TRUE(mpz_divisible_ui_p(lhs.get_mpz_t(), 691)) << p;
    }
}

TEST(Ordinary, Examples)
{
    EXPECT_TRUE(is_ordinary(12, Integer(691)));
    EXPECT_TRUE(is_ordinary(32, Integer(211)));
    EXPECT_FALSE(is_ordinary(12, Integer(2)));
    EXPECT_THROW(is_ordinary(12, Integer(10)), PreconditionError);
    EXPECT_THROW(is_ordinary(12, Integer(691), 100), ComputationError);
}

TEST(Ordinary, AgreesWithExactHeckeMatrix)
{
    for (int r : {12, 16, 24, 28, 36})
        for (long ell : {2L, 3L, 5L, 7L, 11L, 13L, 59L})
        {
            long d = dimension_Sk(r);
            auto b = victor_miller_basis(r, static_cast<size_t>(d * ell + 2));
            auto T = hecke_matrix_elliptic(b, r, ell);
            Rational det = T.det();
            bool exact = !mpz_divisible_ui_p(det.get_num().get_mpz_t(), static_cast<unsigned long>(ell));
            EXPECT_EQ(is_ordinary(r, Integer(ell)), exact) << r << " " << ell;
        }
}

TEST(MuElliptic, Examples)
{
    NumberFieldElement tau2(-24);
    EXPECT_EQ(mu_elliptic(tau2, 2, 12, 1), NumberFieldElement(-24));
    EXPECT_EQ(mu_elliptic(tau2, 2, 12, 2), NumberFieldElement(-3520));
    EXPECT_EQ(mu_elliptic(tau2, 2, 12, 3), NumberFieldElement(133632));
}

TEST(Dimensions, LevelOneFormula)
{
    EXPECT_EQ(dimension_Sk(12), 1);
    EXPECT_EQ(dimension_Sk(14), 0);
    EXPECT_EQ(dimension_Sk(24), 2);
    EXPECT_EQ(dimension_Sk(26), 1);
    EXPECT_EQ(dimension_Sk(32), 2);
    EXPECT_EQ(dimension_Sk(36), 3);
    EXPECT_EQ(dimension_Sk(40), 3);
}
