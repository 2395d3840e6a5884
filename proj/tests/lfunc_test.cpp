#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "smf/lfunc/lfunc.hpp"

using namespace smf;

namespace
{
    const QSeries &delta()
    {
        static const QSeries d = delta_qexp(400);
        return d;
    }

    /// Delta(iy) in double precision: q-series for y >= 1, modularity y^-12 Delta(i/y) below.
    double delta_on_axis(double y)
    {
        if (y < 1)
        {
            double inner = delta_on_axis(1 / y);
            return inner == 0 ? 0 : std::pow(y, -12) * inner;
        }
        double q = std::exp(-2 * M_PI * y), acc = 0, qn = 1;
        for (size_t n = 1; n < 60; ++n)
        {
            qn *= q;
            acc += delta()[n].get_d() * qn;
        }
        return acc;
    }

    /// Quadrature of the Mellin integral of Delta(iy) over (0, inf).
    double lambda_delta_quadrature(double s)
    {
        boost::math::quadrature::tanh_sinh<double> inner;
        boost::math::quadrature::exp_sinh<double> outer;
        auto f = [s](double y)
        {
            double d = delta_on_axis(y);
            return d == 0 ? 0.0 : d * std::pow(y, s - 1);
        };
        return inner.integrate(f, 0.0, 1.0) + outer.integrate([&](double y)
                                                              { return f(1.0 + y); },
                                                              0.0, std::numeric_limits<double>::infinity());
    }

    BigFloat bf(double x, mpfr_prec_t prec = 256) { return BigFloat(x, prec); }
} // namespace

TEST(IncompleteGamma, ClosedForms)
{
    mpfr_prec_t prec = 200;
    BigFloat x = bf(2.5, prec);
    EXPECT_LT(abs(incomplete_gamma(bf(1, prec), x, prec) - exp(-x)), BigFloat::pow2(-190, prec));
    BigFloat one(1L, prec);
    EXPECT_LT(abs(incomplete_gamma(bf(3, prec), one, prec) - BigFloat(5L, prec) / exp(one)), BigFloat::pow2(-190, prec));
    BigFloat zero(0L, prec);
    EXPECT_LT(abs(incomplete_gamma(bf(4.5, prec), zero, prec) - gamma(bf(4.5, prec))), BigFloat::pow2(-180, prec));
    EXPECT_THROW(incomplete_gamma(one, bf(-1, prec), prec), PreconditionError);
    EXPECT_THROW(incomplete_gamma(zero, one, prec), PreconditionError);
}

TEST(IncompleteGamma, SeriesAndContinuedFractionAgreeAcrossTheSwitch)
{
    mpfr_prec_t prec = 256;
    // Gamma(s, x) - Gamma(s + 1, x)/s = -x^s e^{-x}/s links the two regimes at x = s + 1.
    for (double s : {2.5, 7.75, 13.5})
        for (double dx : {-0.25, 0.25})
        {
            BigFloat sv = bf(s, prec), xv = bf(s + 1 + dx, prec);
            BigFloat lhs = incomplete_gamma(sv, xv, prec) - incomplete_gamma(sv + BigFloat(1L, prec), xv, prec) / sv;
            BigFloat rhs = -exp(sv * log(xv) - xv) / sv;
            EXPECT_LT(abs(lhs - rhs), abs(rhs) * BigFloat::pow2(-240, prec)) << s << " " << dx;
        }
}

TEST(IncompleteGamma, AgreesWithDoublePrecisionReference)
{
    for (double s : {0.5, 1.0, 3.0, 7.25, 15.5, 22.0})
        for (double x : {0.3, 2.0, 6.283185307179586, 31.4})
        {
            double ref = boost::math::tgamma(s, x);
            double got = incomplete_gamma(bf(s), bf(x), 128).to_double();
            EXPECT_NEAR(got / ref, 1.0, 1e-13) << s << " " << x;
        }
}

TEST(LambdaValue, MatchesQuadratureOracle)
{
    for (double s : {1.0, 3.5, 6.0, 8.25, 11.0})
    {
        auto v = lambda_value(delta(), 12, bf(s), 128);
        double ref = lambda_delta_quadrature(s);
        EXPECT_NEAR(v.value.to_double() / ref, 1.0, 1e-9) << s;
    }
}

TEST(LambdaValue, FunctionalEquation)
{
    std::mt19937 rng(5);
    for (int r : {12, 16, 18, 24})
    {
        auto f = elliptic_eigenforms(r, 200)[0];
        auto roots = eigenform_embeddings(f, 320);
        auto a = embedded_coefficients(f, roots[0]);
        std::uniform_real_distribution<double> dist(1.0, r - 1.0);
        for (int trial = 0; trial < 3; ++trial)
        {
            double s = dist(rng);
            auto v1 = lambda_value(a, r, bf(s), 256);
            auto v2 = lambda_value(a, r, BigFloat(static_cast<long>(r), 256) - bf(s), 256);
            BigFloat sign(r % 4 == 0 ? 1L : -1L, 256);
            EXPECT_LT(abs(v1.value - sign * v2.value), v1.error_bound + v2.error_bound) << r << " " << s;
            EXPECT_LT(v1.error_bound, BigFloat::pow2(-128, 256));
        }
    }
}

TEST(LambdaValue, CentralZeroForOddSign)
{
    for (int r : {18, 22, 26})
    {
        auto f = elliptic_eigenforms(r, 200)[0];
        auto a = embedded_coefficients(f, eigenform_embeddings(f, 320)[0]);
        auto v = lambda_value(a, r, bf(r / 2), 256);
        EXPECT_LE(abs(v.value), v.error_bound) << r;
    }
}

TEST(LambdaValue, PrecisionDoublingIsConsistent)
{
    auto coarse = lambda_value(delta(), 12, bf(5.5), 128);
    auto fine = lambda_value(delta(), 12, bf(5.5, 256), 256);
    EXPECT_LT(abs(coarse.value - fine.value), coarse.error_bound);
}

TEST(LambdaValue, InsufficientTerms)
{
    auto short_delta = delta_qexp(20);
    EXPECT_THROW(lambda_value(short_delta, 12, bf(6), 256), PreconditionError);
    EXPECT_THROW(lambda_value(delta(), 12, bf(0.5), 256), PreconditionError);
}

TEST(CriticalRatios, Weight32OddExample)
{
    auto forms = eigenforms_for_lvalues(32, 1024);
    ASSERT_EQ(forms.size(), 1u);
    auto vals = critical_ratio_values(forms[0], 3, 1, 256);
    ASSERT_EQ(vals.size(), 2u);
    bool hit = false;
    for (const auto &v : vals)
        hit = hit || std::abs(v.to_double() - 0.045375) < 5e-7;
    EXPECT_TRUE(hit);
    auto p = critical_ratio_minpoly(forms[0], 3, 1);
    EXPECT_EQ(p, RationalPolynomial({Rational(Integer("48090744655111646")), Rational(Integer("-2119526470366720695")),
                                     Rational(Integer("23353726728074242500"))}));
    // A low-height relation that fits the first embedding to about 2^-64 but not its conjugate.
    auto spurious = poly_from_integers({18826702, -471820065, 1254224510});
    PrecisionGuard guard(256);
    EXPECT_LT(abs(spurious.evaluate<BigFloat>(vals[0])), BigFloat::pow2(-60, 256));
    EXPECT_GT(abs(spurious.evaluate<BigFloat>(vals[1])), BigFloat(1L, 256));
    EXPECT_FALSE(recognize_conjugates(vals, 2, 256).has_value() && *recognize_conjugates(vals, 2, 256) == spurious);
    EXPECT_EQ(critical_ratio_minpoly(forms[0], 1, 1), poly_from_integers({-1, 1}));
    EXPECT_THROW(critical_ratio_values(forms[0], 4, 1, 256), PreconditionError);
}

TEST(CriticalRatios, Weight12IsRational)
{
    for (Parity parity : {Parity::Odd, Parity::Even})
    {
        auto tables = critical_ratio_minpolys(12, parity);
        ASSERT_EQ(tables.size(), 1u);
        for (const auto &[t, p] : tables[0])
        {
            EXPECT_EQ(p.degree(), 1) << t;
            EXPECT_TRUE(parity_matches(t, parity));
        }
        EXPECT_EQ(tables[0].at(default_t0(parity)), poly_from_integers({-1, 1}));
    }
}

TEST(CriticalRatios, RecognizedPolynomialsVanishInEveryEmbedding)
{
    auto f = eigenforms_for_lvalues(24, 1024)[0];
    for (int t : {4, 8, 14})
    {
        auto p = critical_ratio_minpoly(f, t, 2);
        for (const auto &x : critical_ratio_values(f, t, 2, 512))
        {
            PrecisionGuard guard(512);
            EXPECT_LT(abs(p.evaluate<BigFloat>(x)), BigFloat::pow2(-128, 512)) << t;
        }
    }
}

TEST(HarderPrimes, Weight32)
{
    auto primes = harder_congruence_primes(32, 18);
    ASSERT_EQ(primes.size(), 1u);
    EXPECT_EQ(primes[0].ell, 211);
    ASSERT_TRUE(primes[0].ordinary.has_value());
    EXPECT_TRUE(*primes[0].ordinary);
    EXPECT_FALSE(primes[0].square_divides);
}

TEST(HarderPrimes, VacuousAtSmallWeight)
{
    for (int r : {12, 16, 20, 24, 28})
        EXPECT_TRUE(harder_congruence_primes(r, r / 2 + 2).empty()) << r;
}

TEST(HarderPrimes, NormOfRoot)
{
    auto p = poly_from_integers({1055, -12972671964, 37609861324896000});
    EXPECT_EQ(norm_of_root(p, 2), make_rational(1055, Integer("37609861324896000")));
    EXPECT_EQ(norm_of_root(poly_from_integers({-3, 2}), 2), make_rational(9, 4));
    EXPECT_THROW(norm_of_root(p, 3), PreconditionError);
}
