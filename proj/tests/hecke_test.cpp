#include <gtest/gtest.h>

#include <random>

#include "smf/eform/elliptic.hpp"
#include "smf/hecke/eigen.hpp"

using namespace smf;

namespace
{
    const IgusaGenerators &gens()
    {
        static const IgusaGenerators g = igusa_generators(400, 60);
        return g;
    }

    std::shared_ptr<SiegelRing> shared_ring()
    {
        static auto ring = std::make_shared<SiegelRing>(400, 60);
        return ring;
    }

    Rational ratio_at(const SiegelExpansion<Rational> &F, long p, int delta, const BQF &Q)
    {
        auto img = hecke_image(F, p, delta, {Q});
        return img.at(Q).v[0] / coefficient_at(F, Q).v[0];
    }

    RationalPolynomial poly(std::vector<long> c) { return poly_from_integers(c); }
} // namespace

TEST(CosetReps, CountsAndInequivalence)
{
    EXPECT_EQ(coset_reps(2, 0).reps.size(), 1u);
    EXPECT_EQ(coset_reps(2, 0).reps[0], IMat2::identity());
    EXPECT_EQ(coset_reps(2, 1).reps.size(), 3u);
    EXPECT_EQ(coset_reps(3, 2).reps.size(), 12u);
    EXPECT_EQ(coset_reps(2, 3).reps.size(), 12u);
    EXPECT_EQ(coset_reps(5, 2).reps.size(), 30u);
    for (const auto &U : coset_reps(5, 2).reps)
        EXPECT_EQ(U.det(), 1);
    EXPECT_THROW(coset_reps(4, 1), PreconditionError);
    EXPECT_THROW(coset_reps(2, 4), PreconditionError);
    EXPECT_TRUE(gamma0_equivalent(IMat2{1, 0, 1, 1}, IMat2{1, 0, 3, 1}, 2));
    EXPECT_FALSE(gamma0_equivalent(IMat2{1, 0, 1, 1}, IMat2{1, 0, 2, 1}, 2));
}

TEST(HeckeScalar, EisensteinEigenvalues)
{
    const auto &g = gens();
    for (BQF Q : {BQF{1, 1, 1}, BQF{1, 0, 1}, BQF{1, 1, 2}, BQF{0, 0, 1}, BQF{0, 0, 3}})
    {
        // 1 + p^(2k-3) + p^(k-1) + p^(k-2).
        EXPECT_EQ(ratio_at(g.E4, 2, 1, Q), 45) << Q;
        EXPECT_EQ(ratio_at(g.E4, 3, 1, Q), 280) << Q;
        EXPECT_EQ(ratio_at(g.E6, 2, 1, Q), 1 + 512 + 32 + 16) << Q;
    }
}

TEST(HeckeScalar, SaitoKurokawaEigenvalues)
{
    const auto &g = gens();
    auto f18 = elliptic_eigenforms(18, 4)[0];
    auto f22 = elliptic_eigenforms(22, 4)[0];
    for (BQF Q : {BQF{1, 1, 1}, BQF{1, 0, 1}, BQF{1, 1, 2}})
    {
        EXPECT_EQ(ratio_at(g.X10, 2, 1, Q), 240) << Q;
        EXPECT_EQ(ratio_at(g.X10, 2, 1, Q), f18.a(2).rational_value() + 256 + 512) << Q;
        EXPECT_EQ(ratio_at(g.X10, 3, 1, Q), f18.a(3).rational_value() + 6561 + 19683) << Q;
        EXPECT_EQ(ratio_at(g.X12, 2, 1, Q), f22.a(2).rational_value() + 1024 + 2048) << Q;
    }
}

TEST(HeckeScalar, InsufficientTruncation)
{
    const auto &g = gens();
    EXPECT_THROW(hecke_image(g.E4, 5, 2, {BQF{1, 1, 1}}), PreconditionError);
    try
    {
        hecke_image(g.E4, 5, 2, {BQF{1, 1, 1}});
    }
    catch (const PreconditionError &e)
    {
        EXPECT_NE(std::string(e.what()).find("insufficient truncation"), std::string::npos);
    }
}

TEST(LocalEigenData, EisensteinSmokeTest)
{
    const auto &g = gens();
    Rational l2 = ratio_at(g.E4, 2, 1, {1, 1, 1});
    Rational l4 = ratio_at(g.E4, 2, 2, {1, 1, 1});
    EXPECT_EQ(l4, ratio_at(g.E4, 2, 2, {1, 0, 1}));
    auto d = local_eigen_data(l2, l4, 2, 4, 0);
    EXPECT_EQ(d.l2.rational_value(), 4);
    EXPECT_EQ(d.l0 + d.l1 + d.l2, d.lambda_p2);
    EXPECT_EQ(d.l0 + NumberFieldElement(3) * d.l1 + NumberFieldElement(15) * d.l2, d.lambda_p * d.lambda_p);
    EXPECT_EQ(d.l1.rational_value().get_den(), 1);
    EXPECT_EQ(d.l0.rational_value().get_den(), 1);
}

TEST(MuSiegel, CubeIdentityOnRandomRationals)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    for (int trial = 0; trial < 50; ++trial)
    {
        long p = trial % 2 ? 3 : 2;
        int k = 10 + trial % 7, j = 2;
        Rational lp = make_rational(dist(rng), 1 + std::abs(dist(rng)));
        Rational lp2 = make_rational(dist(rng), 1 + std::abs(dist(rng)));
        auto d = local_eigen_data(lp, lp2, p, k, j);
        auto G1 = mu_siegel(d, k, j, 1), G2 = mu_siegel(d, k, j, 2), G3 = mu_siegel(d, k, j, 3);
        NumberFieldElement c(Rational(6) * Rational(ipow(p, static_cast<unsigned long>(2 * k + j - 3))));
        EXPECT_EQ(G3, NumberFieldElement(Rational(1, 2)) * G1 * (NumberFieldElement(0) - G1 * G1 + NumberFieldElement(3) * G2 + c));
        EXPECT_EQ(G1, NumberFieldElement(lp));
    }
    auto d = local_eigen_data(Rational(1), Rational(1), 2, 10, 2);
    EXPECT_THROW(mu_siegel(d, 10, 2, 4), PreconditionError);
}

TEST(RamanujanPetersson, SyntheticEisensteinFails)
{
    for (long p : {2, 3, 5})
    {
        int k = 16, j = 2;
        Integer r0 = 1, r1 = ipow(p, k - 1), r2 = ipow(p, k + j - 2), r3 = ipow(p, 2 * k + j - 3);
        Integer lp = r0 + r1 + r2 + r3;
        Integer e2 = r0 * r1 + r0 * r2 + r0 * r3 + r1 * r2 + r1 * r3 + r2 * r3;
        Integer lp2 = lp * lp - e2 - ipow(p, 2 * k + j - 4);
        auto d = local_eigen_data(Rational(lp), Rational(lp2), p, k, j);
        EXPECT_FALSE(rp_check(d, k, j, 40));
        EXPECT_GT(rp_deviation(d, k, j), BigFloat(0.5, 256));
    }
}

TEST(Weight16, CuspidalBlockAndEigensystems)
{
    auto basis = std::make_shared<SatohBasis>(16, shared_ring());
    HeckeEngine engine(basis);
    auto T = engine.t2_matrix();
    EXPECT_EQ(T.T, engine.t2_matrix(12345).T);
    auto cusp = engine.cusp_t2();
    EXPECT_EQ(cusp.T.rows(), 2u);
    EXPECT_EQ(cusp.T.charpoly(), poly({858931200, 58752, 1}));
    auto systems = engine.eigensystems();
    ASSERT_EQ(systems.size(), 2u);
    EXPECT_FALSE(systems[0].cuspidal);
    EXPECT_EQ(systems[0].field.degree(), 1);
    EXPECT_TRUE(systems[1].cuspidal);
    EXPECT_EQ(systems[1].field.modulus(), poly({858931200, 58752, 1}));
    // The non-cuspidal eigenvalue follows the Klingen pattern a_2(f_18)(1 + 2^14).
    EXPECT_EQ(systems[0].eigenvalues.at(2).rational_value(), Rational(-528 * 16385));
    for (auto &E : systems)
        for (long p : {2, 3})
        {
            auto d = local_eigen_data(engine, E, p);
            if (E.cuspidal)
            {
                EXPECT_TRUE(rp_check(d, 16, 2, 40)) << p;
                EXPECT_TRUE(rp_check(d, 16, 2, 80)) << p;
            }
            else
                EXPECT_FALSE(rp_check(d, 16, 2, 40)) << p;
        }
}

TEST(HeckeVector, OperatorsCommute)
{
    for (int k : {14, 16, 18})
    {
        auto basis = std::make_shared<SatohBasis>(k, shared_ring());
        HeckeEngine engine(basis);
        auto T2 = engine.hecke_matrix(2, 1).T;
        auto T3 = engine.hecke_matrix(3, 1).T;
        EXPECT_EQ(T2 * T3, T3 * T2) << k;
        auto T4 = engine.hecke_matrix(2, 2).T;
        EXPECT_EQ(T2 * T4, T4 * T2) << k;
    }
}

TEST(HeckeVector, EigenvaluesInFieldOfT2)
{
    auto basis = std::make_shared<SatohBasis>(18, shared_ring());
    HeckeEngine engine(basis);
    auto systems = engine.eigensystems();
    size_t cusp_dim = 0;
    for (auto &E : systems)
    {
        if (E.cuspidal)
            cusp_dim += static_cast<size_t>(E.field.degree());
        auto l3 = engine.eigenvalue(E, 3, 1);
        if (l3.has_field())
            EXPECT_EQ(l3.field_data()->modulus, E.field.modulus());
        EXPECT_EQ(engine.eigenvalue(E, 3, 1), l3);
    }
    EXPECT_EQ(cusp_dim, 2u);
}
