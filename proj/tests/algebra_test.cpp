#include <gtest/gtest.h>

#include <random>

#include "smf/algebra/bernoulli.hpp"
#include "smf/algebra/factor.hpp"
#include "smf/algebra/lattice.hpp"
#include "smf/algebra/matrix.hpp"
#include "smf/algebra/number_field.hpp"

using namespace smf;

namespace
{
    RationalPolynomial P(std::initializer_list<long> c) { return poly_from_integers(std::vector<long>(c)); }

    // Hurwitz class number by counting reduced forms of discriminant -N with the 1/2, 1/3 weights.
    Rational hurwitz_by_forms(long N)
    {
        Rational h = 0;
        for (long a = 1; 3 * a * a <= N; ++a)
            for (long b = -a + 1; b <= a; ++b)
            {
                long num = b * b + N;
                if (num % (4 * a) != 0)
                    continue;
                long c = num / (4 * a);
                if (c < a)
                    continue;
                if (c == a && b < 0)
                    continue;
                if (a == b && b == c)
                    h += Rational(1, 3);
                else if (b == 0 && a == c)
                    h += Rational(1, 2);
                else
                    h += 1;
            }
        return h;
    }
} // namespace

TEST(Bernoulli, KnownValues)
{
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(6), Rational(1, 42));
    EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
    EXPECT_EQ(bernoulli(13), Rational(0));
}

TEST(CohenH, KnownValues)
{
    EXPECT_EQ(cohen_H(1, 1), Rational(0));
    EXPECT_EQ(cohen_H(1, 3), Rational(1, 3));
    EXPECT_EQ(cohen_H(3, 0), Rational(-1, 252));
    EXPECT_EQ(cohen_H(3, 4), Rational(-1, 2));
    EXPECT_EQ(cohen_H(3, 3), Rational(-2, 9));
}

TEST(CohenH, HurwitzClassNumbersMatchFormCount)
{
    for (long N = 1; N <= 300; ++N)
        EXPECT_EQ(cohen_H(1, N), hurwitz_by_forms(N)) << "N=" << N;
}

TEST(Matrix, CharpolyExamples)
{
    RationalMatrix I = RationalMatrix::identity(2);
    EXPECT_EQ(charpoly(I), P({1, -2, 1}));
    RationalMatrix swap{{0, 1}, {1, 0}};
    EXPECT_EQ(charpoly(swap), P({-1, 0, 1}));
    EXPECT_THROW(charpoly(RationalMatrix(2, 3)), PreconditionError);
}

TEST(Matrix, CharpolyMatchesDeterminantAtPoints)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial)
    {
        size_t n = 1 + trial % 6;
        RationalMatrix A(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                A(i, j) = make_rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3));
        auto cp = charpoly(A);
        ASSERT_EQ(cp.degree(), static_cast<long>(n));
        for (long t = -2; t <= 2; ++t)
        {
            RationalMatrix M = Rational(t) * RationalMatrix::identity(n) - A;
            EXPECT_EQ(cp(Rational(t)), M.det());
        }
    }
}

TEST(Matrix, InverseKernelRank)
{
    RationalMatrix A{{2, 1}, {1, 1}};
    EXPECT_EQ(A * A.inverse(), RationalMatrix::identity(2));
    RationalMatrix B{{1, 2, 3}, {2, 4, 6}};
    EXPECT_EQ(B.rank(), 1u);
    auto ker = B.kernel();
    ASSERT_EQ(ker.size(), 2u);
    for (const auto &v : ker)
        for (auto x : B * v)
            EXPECT_EQ(x, 0);
}

TEST(Factor, Examples)
{
    auto f = factor_rational(P({-1, 0, 1}));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].first, P({-1, 1}));
    EXPECT_EQ(f.factors[1].first, P({1, 1}));
    EXPECT_TRUE(is_irreducible(P({858931200, 58752, 1})));
    EXPECT_TRUE(is_irreducible(P({121332695040, -780288, 1})));
}

TEST(Factor, ExpansionReproducesInput)
{
    std::vector<RationalPolynomial> pieces{P({-2, 0, 1}), P({-2, 0, 0, 1}), P({-3, 1}), P({1, 1, 1}),
                                           P({5, 0, 0, 0, 1}), P({1, -1, 0, 0, 0, 1}), P({7, 2})};
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial)
    {
        RationalPolynomial p(make_rational(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3)));
        long deg = 0;
        for (int i = 0; i < 4; ++i)
        {
            const auto &q = pieces[rng() % pieces.size()];
            if (deg + q.degree() > 12)
                continue;
            p = p * q;
            deg += q.degree();
        }
        auto f = factor_rational(p);
        EXPECT_EQ(f.expand(), p) << p;
        for (const auto &[g, e] : f.factors)
            EXPECT_EQ(factor_rational(g).factors.size(), 1u);
    }
}

TEST(Factor, SwinnertonDyerStyleQuartic)
{
    // x^4 - 10x^2 + 1 is irreducible but reducible modulo every prime.
    auto f = factor_rational(P({1, 0, -10, 0, 1}));
    ASSERT_EQ(f.factors.size(), 1u);
    // (x^2 - 2)(x^2 - 3) has the same modular behavior but does split.
    auto g = factor_rational(P({6, 0, -5, 0, 1}));
    EXPECT_EQ(g.factors.size(), 2u);
}

TEST(NumberField, MinPolyExamples)
{
    NumberField K(P({-1, -1, 1}));
    EXPECT_EQ(nf_min_poly(K.element(Rational(5))), P({-5, 1}));
    EXPECT_EQ(nf_min_poly(K.generator()), P({-1, -1, 1}));
    EXPECT_THROW(NumberField(P({-1, 0, 1})), PreconditionError);
}

TEST(NumberField, MinPolyVanishesOnRandomElements)
{
    std::mt19937 rng(3);
    std::vector<RationalPolynomial> moduli{P({-2, 0, 1}), P({1, 1, 1}), P({-2, 0, 0, 1}), P({1, -3, 0, 1})};
    for (const auto &m : moduli)
    {
        NumberField K(m);
        for (int trial = 0; trial < 10; ++trial)
        {
            std::vector<Rational> c;
            for (long i = 0; i < K.degree(); ++i)
                c.push_back(make_rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4)));
            auto e = K.element(RationalPolynomial(c));
            auto mp = nf_min_poly(e);
            NumberFieldElement acc = 0;
            for (size_t i = mp.coefficients().size(); i-- > 0;)
                acc = acc * e + NumberFieldElement(mp.coefficients()[i]);
            EXPECT_TRUE(acc.is_zero());
            if (!e.is_zero())
                EXPECT_EQ(e * e.inverse(), NumberFieldElement(1));
        }
    }
}

TEST(RootsModEll, Examples)
{
    EXPECT_EQ(roots_mod_ell(P({-1, 0, 1}), Integer(5)), (std::set<Integer>{1, 4}));
    EXPECT_TRUE(roots_mod_ell(P({1, 0, 1}), Integer(3)).empty());
    RationalPolynomial half({Rational(1, 5), Rational(1)});
    EXPECT_THROW(roots_mod_ell(half, Integer(5)), PreconditionError);
}

TEST(RootsModEll, AgreesWithBruteForce)
{
    std::mt19937 rng(5);
    for (long ell : primes_up_to(100))
        for (int trial = 0; trial < 5; ++trial)
        {
            std::vector<long> c;
            int deg = 1 + static_cast<int>(rng() % 5);
            for (int i = 0; i <= deg; ++i)
                c.push_back(static_cast<long>(rng() % 200) - 100);
            if (c.back() % ell == 0)
                c.back() += 1;
            auto p = poly_from_integers(c);
            std::set<Integer> brute;
            for (long x = 0; x < ell; ++x)
            {
                Rational v = p(Rational(x));
                if (mpz_divisible_ui_p(v.get_num().get_mpz_t(), static_cast<unsigned long>(ell)))
                    brute.insert(Integer(x));
            }
            EXPECT_EQ(roots_mod_ell(p, Integer(ell)), brute) << p << " mod " << ell;
        }
}

TEST(Lll, Examples)
{
    IntegerLattice orth{{{Integer(2), Integer(0)}, {Integer(0), Integer(3)}}};
    auto r = lll_reduce(orth);
    EXPECT_EQ(abs(r.basis[0][0]) + abs(r.basis[0][1]), 2);
    IntegerLattice skew{{{Integer(1), Integer(0)}, {Integer(1000000), Integer(1)}}};
    auto s = lll_reduce(skew);
    for (const auto &v : s.basis)
        EXPECT_LE(detail::dot(v, v), 2);
    IntegerLattice dep{{{Integer(1), Integer(2)}, {Integer(2), Integer(4)}}};
    EXPECT_THROW(lll_reduce(dep), PreconditionError);
}

TEST(Lll, PreservesLatticeAndSatisfiesLovasz)
{
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial)
    {
        size_t n = 2 + trial % 5;
        IntegerLattice L;
        for (size_t i = 0; i < n; ++i)
        {
            IntegerVector v(n);
            for (auto &x : v)
                x = static_cast<long>(rng() % 2001) - 1000;
            L.basis.push_back(v);
        }
        IntegerLattice R;
        try
        {
            R = lll_reduce(L);
        }
        catch (const PreconditionError &)
        {
            continue;
        }
        EXPECT_EQ(hermite_normal_form(L.basis), hermite_normal_form(R.basis));
        // Lovasz with delta = 3/4 on exact Gram-Schmidt.
        std::vector<std::vector<Rational>> bs;
        std::vector<Rational> norms;
        std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
        for (size_t i = 0; i < n; ++i)
        {
            std::vector<Rational> v(R.basis[i].begin(), R.basis[i].end());
            for (size_t j = 0; j < i; ++j)
            {
                Rational d = 0;
                for (size_t t = 0; t < n; ++t)
                    d += Rational(R.basis[i][t]) * bs[j][t];
                mu[i][j] = d / norms[j];
                for (size_t t = 0; t < n; ++t)
                    v[t] -= mu[i][j] * bs[j][t];
            }
            Rational nn = 0;
            for (auto &x : v)
                nn += x * x;
            bs.push_back(v);
            norms.push_back(nn);
        }
        for (size_t i = 1; i < n; ++i)
        {
            EXPECT_GE(norms[i], (Rational(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]);
            for (size_t j = 0; j < i; ++j)
                EXPECT_LE(abs(mu[i][j]), Rational(1, 2));
        }
    }
}

TEST(Algdep, Examples)
{
    PrecisionGuard guard(300);
    BigFloat phi = (BigFloat(1L, 300) + sqrt(BigFloat(5L, 300))) / BigFloat(2L, 300);
    EXPECT_EQ(algdep(phi, 2, 200), P({-1, -1, 1}));
    BigFloat cube = pow(BigFloat(2L, 300), BigFloat(Rational(1, 3), 300));
    EXPECT_EQ(algdep(cube, 3, 200), P({-2, 0, 0, 1}));
}

TEST(Algdep, RecoversConstructedAlgebraicNumbers)
{
    std::vector<RationalPolynomial> polys{P({-7, 3, 2}), P({5, -1, 0, 3}), P({-3, 0, 1, 0, 1}), P({-1, 4, -2, 0, 1})};
    for (const auto &p : polys)
    {
        auto roots = real_roots(p, 400);
        ASSERT_FALSE(roots.empty());
        auto q = algdep(roots.back(), static_cast<unsigned>(p.degree()), 300);
        EXPECT_EQ(q, primitive_part(p));
        auto again = real_roots(q, 400);
        bool close = false;
        for (const auto &r : again)
            if (abs(r - roots.back()) < BigFloat::pow2(-150, 400))
                close = true;
        EXPECT_TRUE(close);
    }
}

TEST(Roots, RealRootCount)
{
    EXPECT_EQ(count_real_roots(P({-2, 0, 1})), 2);
    EXPECT_EQ(count_real_roots(P({1, 0, 1})), 0);
    EXPECT_EQ(count_real_roots(P({-2, 0, 0, 1})), 1);
    auto r = real_roots(P({-2, 0, 1}), 128);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[1].to_double(), std::sqrt(2.0), 1e-15);
}
