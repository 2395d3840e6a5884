#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "smf/algebra/scalar.hpp"

namespace smf
{
    /// B_n with B_1 = -1/2, so that zeta(1-2r) = -B_{2r}/(2r).
    inline Rational bernoulli(unsigned n)
    {
        static std::mutex mu;
        static std::vector<Rational> cache{Rational(1)};
        std::lock_guard<std::mutex> lock(mu);
        while (cache.size() <= n)
        {
            // sum_{k=0}^{m} C(m+1,k) B_k = 0
            unsigned m = static_cast<unsigned>(cache.size());
            Rational s = 0;
            Integer binom = 1;
            for (unsigned k = 0; k < m; ++k)
            {
                s += Rational(binom) * cache[k];
                binom = binom * (m + 1 - k) / (k + 1);
            }
            cache.push_back(-s / Rational(m + 1));
        }
        return cache[n];
    }

    inline Integer binomial(unsigned long n, unsigned long k)
    {
        Integer r;
        mpz_bin_uiui(r.get_mpz_t(), n, k);
        return r;
    }

    /// True iff D is a fundamental discriminant (including D = 1).
    inline bool is_fundamental_discriminant(long D)
    {
        if (D == 1)
            return true;
        if (D == 0)
            return false;
        long m4 = mod_floor(D, 4);
        auto squarefree = [](long n) {
            for (auto [p, e] : factor_small(n))
                if (e > 1)
                    return false;
            return true;
        };
        if (m4 == 1)
            return squarefree(D);
        if (m4 == 0)
        {
            long m = D / 4;
            long mm = mod_floor(m, 4);
            return (mm == 2 || mm == 3) && squarefree(m);
        }
        return false;
    }

    /// Writes n = D f^2 with D a fundamental discriminant; requires n = 0,1 mod 4, n != 0.
    inline std::pair<long, long> fundamental_decomposition(long n)
    {
        long f = 1;
        long core = n;
        for (auto [p, e] : factor_small(n))
            for (int i = 0; i + 1 < e; i += 2)
            {
                core /= p * p;
                f *= p;
            }
        // core is squarefree up to sign; adjust to a discriminant.
        if (mod_floor(core, 4) != 1)
        {
            core *= 4;
            if (f % 2 != 0)
                throw PreconditionError("fundamental_decomposition: not a discriminant");
            f /= 2;
        }
        return {core, f};
    }

    /// Generalized Bernoulli number B_{n,chi_D} for the Kronecker character of a fundamental discriminant D.
    inline Rational generalized_bernoulli(unsigned n, long D)
    {
        if (D == 1)
        {
            Rational b = bernoulli(n);
            return n == 1 ? -b : b;
        }
        long m = D < 0 ? -D : D;
        // B_{n,chi} = sum_j C(n,j) B_j m^{j-1} S_{n-j},  S_e = sum_{a=1}^{m} chi(a) a^e.
        std::vector<Integer> S(n + 1, Integer(0));
        std::vector<Integer> pw(n + 1);
        for (long a = 1; a <= m; ++a)
        {
            long chi = kronecker(D, a);
            if (chi == 0)
                continue;
            Integer p = 1;
            for (unsigned e = 0; e <= n; ++e)
            {
                if (chi > 0)
                    S[e] += p;
                else
                    S[e] -= p;
                p *= a;
            }
        }
        Rational total = 0;
        for (unsigned j = 0; j <= n; ++j)
        {
            Rational mj = rpow(Rational(m), static_cast<long>(j) - 1);
            total += Rational(binomial(n, j)) * bernoulli(j) * mj * Rational(S[n - j]);
        }
        return total;
    }

    /**
     * Cohen's number H(r,N): zeta(1-2r) at N = 0, zero unless (-1)^r N = 0,1 mod 4,
     * and otherwise L(1-r,chi_D) sum_{d|f} mu(d) chi_D(d) d^{r-1} sigma_{2r-1}(f/d)
     * where (-1)^r N = D f^2 with D fundamental.
     */
    inline Rational cohen_H(unsigned r, long N)
    {
        if (r < 1 || N < 0)
            throw PreconditionError("cohen_H: need r >= 1 and N >= 0");
        if (N == 0)
            return -bernoulli(2 * r) / Rational(2 * r);
        long sN = (r % 2 == 1) ? -N : N;
        long m4 = mod_floor(sN, 4);
        if (m4 == 2 || m4 == 3)
            return 0;
        auto [D, f] = fundamental_decomposition(sN);
        Rational L = -generalized_bernoulli(r, D) / Rational(r);
        Integer sum = 0;
        for (long d : divisors(f))
        {
            int mu = moebius(d);
            if (mu == 0)
                continue;
            long chi = kronecker(D, d);
            if (chi == 0)
                continue;
            Integer term = ipow(d, r - 1) * sigma(f / d, 2 * r - 1);
            if (mu * chi > 0)
                sum += term;
            else
                sum -= term;
        }
        return L * Rational(sum);
    }
} // namespace smf
