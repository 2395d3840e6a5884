#include <gtest/gtest.h>

#include "smf/jacobi/jacobi.hpp"

using namespace smf;

TEST(JacobiEisenstein, WeightFourExamples)
{
    auto e = jacobi_eisenstein(4, 10);
    EXPECT_EQ(e.c(0, 0), 1);
    EXPECT_EQ(e.c(1, 0), 126);
    EXPECT_EQ(e.c(1, 1), 56);
    EXPECT_EQ(e.c(1, 2), 1);
    EXPECT_EQ(e.c(1, 3), 0);
    EXPECT_EQ(e.c(1, 0) + 2 * e.c(1, 1) + 2 * e.c(1, 2), 240);
    EXPECT_EQ(e.c(1, -1), e.c(1, 1));
    EXPECT_THROW(jacobi_eisenstein(8, 5), PreconditionError);
}

TEST(JacobiEisenstein, SpecializesToEllipticEisenstein)
{
    for (int k : {4, 6})
    {
        auto e = jacobi_eisenstein(k, 60);
        EXPECT_EQ(specialize_z0(e).coefficients(), eisenstein_qexp(k, 61).coefficients()) << k;
    }
}

TEST(JacobiEisenstein, WeightFourCoefficientsNonnegativeIntegers)
{
    auto e = jacobi_eisenstein(4, 100);
    for (long N = 0; N <= e.disc_bound(); ++N)
    {
        EXPECT_GE(e.by_disc(N), 0) << N;
        EXPECT_EQ(e.by_disc(N).get_den(), 1) << N;
    }
}

TEST(JacobiEisenstein, WeightSixIntegral)
{
    auto e = jacobi_eisenstein(6, 100);
    EXPECT_EQ(e.c(1, 0), -330);
    EXPECT_EQ(e.c(1, 1), -88);
    for (long N = 0; N <= e.disc_bound(); ++N)
        EXPECT_EQ(e.by_disc(N).get_den(), 1) << N;
}

TEST(JacobiForm, ThetaDecompositionConstraint)
{
    auto e = jacobi_eisenstein(6, 30);
    for (long n = 0; n <= 30; ++n)
        for (long r = -2 * n; r <= 2 * n; ++r)
            for (long n2 = 0; n2 <= 30; ++n2)
                for (long r2 = 0; r2 * r2 <= 4 * n2; ++r2)
                    if (4 * n - r * r == 4 * n2 - r2 * r2 && (r - r2) % 2 == 0 && 4 * n - r * r >= 0)
                        EXPECT_EQ(e.c(n, r), e.c(n2, r2));
}

TEST(JacobiCusp, Generators)
{
    auto [p10, p12] = jacobi_cusp_generators(40);
    EXPECT_EQ(p10.weight(), 10);
    EXPECT_EQ(p12.weight(), 12);
    EXPECT_EQ(p10.c(0, 0), 0);
    EXPECT_EQ(p12.c(0, 0), 0);
    EXPECT_EQ(p10.c(1, 1), 1);
    EXPECT_EQ(p12.c(1, 1), 1);
    EXPECT_EQ(p10.c(1, 0), -2);
    EXPECT_EQ(p12.c(1, 0), 10);
    for (long N = 0; N <= p10.disc_bound(); ++N)
    {
        EXPECT_EQ(p10.by_disc(N).get_den(), 1);
        EXPECT_EQ(p12.by_disc(N).get_den(), 1);
    }
}

TEST(JacobiCusp, Specializations)
{
    auto [p10, p12] = jacobi_cusp_generators(40);
    EXPECT_TRUE(specialize_z0(p10).is_zero());
    // The weight-12 specialization is a multiple of Delta; with c(1,1) = 1 the multiple is 12.
    auto s12 = specialize_z0(p12);
    auto d = delta_qexp(41);
    Rational mu = s12[1];
    EXPECT_EQ(mu, 12);
    EXPECT_EQ(s12.coefficients(), (mu * d).coefficients());
}

TEST(JacobiForm, ScaleByElliptic)
{
    auto e4 = jacobi_eisenstein(4, 20);
    QSeries one(0, std::vector<Rational>(21, Rational(0)));
    one[0] = 1;
    EXPECT_EQ(scale_by_elliptic(one, e4), e4);
    auto E4 = eisenstein_qexp(4, 21);
    auto prod = scale_by_elliptic(E4, e4);
    EXPECT_EQ(prod.weight(), 8);
    EXPECT_EQ(specialize_z0(prod).coefficients(), (E4 * E4).coefficients());
    EXPECT_THROW(scale_by_elliptic(QSeries(4, 0), e4), PreconditionError);
}

TEST(JacobiForm, ZeroSpecialization)
{
    JacobiFormIndex1 z(8, 10);
    EXPECT_TRUE(specialize_z0(z).is_zero());
}
