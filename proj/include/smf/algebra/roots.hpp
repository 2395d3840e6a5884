#pragma once

#include <algorithm>
#include <vector>

#include "smf/algebra/bigfloat.hpp"
#include "smf/algebra/polynomial.hpp"

namespace smf
{
    namespace detail
    {
        inline std::vector<Integer> integer_coefficients(const RationalPolynomial &p)
        {
            return primitive_integer_coefficients(p);
        }

        inline BigComplex eval_complex(const std::vector<BigFloat> &c, const BigComplex &z, mpfr_prec_t prec)
        {
            BigComplex acc{BigFloat(prec), BigFloat(prec)};
            for (size_t i = c.size(); i-- > 0;)
            {
                acc = acc * z;
                acc.re += c[i];
            }
            return acc;
        }

        /// Number of sign changes of a Sturm chain evaluated at x (or at +-infinity when inf = +-1).
        inline int sturm_variations(const std::vector<RationalPolynomial> &chain, const Rational &x, int inf)
        {
            int changes = 0, last = 0;
            for (const auto &q : chain)
            {
                int s;
                if (inf == 0)
                    s = sgn(q(x));
                else
                {
                    s = sgn(q.lead());
                    if (inf < 0 && (q.degree() % 2 == 1))
                        s = -s;
                }
                if (s == 0)
                    continue;
                if (last != 0 && s != last)
                    ++changes;
                last = s;
            }
            return changes;
        }
    } // namespace detail

    /// Number of distinct real roots of a nonzero polynomial (Sturm's theorem).
    inline int count_real_roots(const RationalPolynomial &p)
    {
        if (p.degree() <= 0)
            return 0;
        auto q = squarefree_part(p);
        std::vector<RationalPolynomial> chain{q, q.derivative()};
        while (chain.back().degree() > 0)
        {
            auto r = chain[chain.size() - 2] % chain.back();
            if (r.is_zero())
                break;
            chain.push_back(-r);
        }
        return detail::sturm_variations(chain, Rational(0), -1) - detail::sturm_variations(chain, Rational(0), 1);
    }

    /**
     * All complex roots of a square-free polynomial, by Aberth-Ehrlich iteration
     * at the given working precision followed by Newton polishing.
     */
    inline std::vector<BigComplex> complex_roots(const RationalPolynomial &p, mpfr_prec_t prec)
    {
        long n = p.degree();
        if (n < 1)
            return {};
        auto ints = detail::integer_coefficients(p);
        std::vector<BigFloat> c, dc;
        for (const auto &v : ints)
            c.emplace_back(v, prec);
        for (long i = 1; i <= n; ++i)
            dc.push_back(c[i] * BigFloat(i, prec));
        if (n == 1)
            return {BigComplex(-c[0] / c[1])};

        // Cauchy bound for the initial circle.
        BigFloat radius(1L, prec);
        for (long i = 0; i < n; ++i)
        {
            BigFloat t = abs(c[i] / c[n]);
            if (t + BigFloat(1L, prec) > radius)
                radius = t + BigFloat(1L, prec);
        }
        radius = radius * BigFloat(0.5, prec);
        std::vector<BigComplex> z;
        BigFloat two_pi = BigFloat::pi(prec) * BigFloat(2L, prec);
        for (long i = 0; i < n; ++i)
        {
            BigFloat ang = two_pi * BigFloat(make_rational(i, n), prec) + BigFloat(0.4, prec);
            z.push_back({radius * cos(ang), radius * sin(ang)});
        }

        BigFloat one(1L, prec);
        long target = -(static_cast<long>(prec) - 16);
        for (int iter = 0; iter < 5000; ++iter)
        {
            bool done = true;
            for (long i = 0; i < n; ++i)
            {
                BigComplex pv = detail::eval_complex(c, z[i], prec);
                if (pv.re.is_zero() && pv.im.is_zero())
                    continue;
                BigComplex dv = detail::eval_complex(dc, z[i], prec);
                BigComplex w = pv / dv;
                BigComplex s{BigFloat(prec), BigFloat(prec)};
                for (long j = 0; j < n; ++j)
                    if (j != i)
                        s = s + BigComplex(one) / (z[i] - z[j]);
                BigComplex corr = w / (BigComplex(one) - w * s);
                z[i] = z[i] - corr;
                long scale = std::max(0L, z[i].modulus().exponent2());
                if (corr.modulus().exponent2() > target + scale)
                    done = false;
            }
            if (done)
                return z;
        }
        throw ComputationError("complex root finding did not converge");
    }

    /// Real roots of a nonzero polynomial in increasing order (distinct roots only).
    inline std::vector<BigFloat> real_roots(const RationalPolynomial &p, mpfr_prec_t prec)
    {
        if (p.degree() < 1)
            return {};
        auto q = squarefree_part(p);
        int count = count_real_roots(q);
        if (count == 0)
            return {};
        auto zs = complex_roots(q, prec + 32);
        std::sort(zs.begin(), zs.end(), [](const BigComplex &a, const BigComplex &b) {
            BigFloat sa = abs(a.im) / (abs(a.re) + BigFloat(1L, a.re.precision()));
            BigFloat sb = abs(b.im) / (abs(b.re) + BigFloat(1L, b.re.precision()));
            return sa < sb;
        });
        std::vector<BigFloat> out;
        for (int i = 0; i < count; ++i)
            out.push_back(zs[i].re.with_precision(prec));
        std::sort(out.begin(), out.end());
        return out;
    }
} // namespace smf
