#pragma once

#include <random>
#include <set>
#include <vector>

#include "smf/algebra/polynomial.hpp"
#include "smf/algebra/scalar.hpp"

namespace smf
{
    /// Dense polynomials over Z/mZ with m prime; coefficients low-first, always reduced.
    namespace modp
    {
        using Poly = std::vector<Integer>;

        inline Integer reduce(const Integer &v, const Integer &m)
        {
            Integer r;
            mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
            return r;
        }

        inline Integer inverse(const Integer &v, const Integer &m)
        {
            Integer r;
            if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()) == 0)
                throw std::domain_error("modp: non-invertible element");
            return r;
        }

        inline void trim(Poly &a)
        {
            while (!a.empty() && a.back() == 0)
                a.pop_back();
        }

        inline long degree(const Poly &a) { return static_cast<long>(a.size()) - 1; }

        inline Poly from_rational(const RationalPolynomial &p, const Integer &m)
        {
            Poly out;
            for (const auto &c : p.coefficients())
            {
                if (mpz_divisible_p(c.get_den().get_mpz_t(), m.get_mpz_t()))
                    throw PreconditionError("modulus divides a coefficient denominator");
                out.push_back(reduce(c.get_num() * inverse(c.get_den(), m), m));
            }
            trim(out);
            return out;
        }

        inline Poly sub(Poly a, const Poly &b, const Integer &m)
        {
            if (b.size() > a.size())
                a.resize(b.size(), 0);
            for (size_t i = 0; i < b.size(); ++i)
                a[i] = reduce(a[i] - b[i], m);
            trim(a);
            return a;
        }

        inline Poly mul(const Poly &a, const Poly &b, const Integer &m)
        {
            if (a.empty() || b.empty())
                return {};
            Poly c(a.size() + b.size() - 1, 0);
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j)
                    c[i + j] += a[i] * b[j];
            for (auto &v : c)
                v = reduce(v, m);
            trim(c);
            return c;
        }

        inline std::pair<Poly, Poly> divmod(Poly a, const Poly &b, const Integer &m)
        {
            if (b.empty())
                throw std::domain_error("modp: division by zero polynomial");
            long db = degree(b);
            if (degree(a) < db)
                return {{}, a};
            Poly q(static_cast<size_t>(degree(a) - db + 1), 0);
            Integer inv = inverse(b.back(), m);
            for (long i = degree(a); i >= db; --i)
            {
                Integer coef = reduce(a[i] * inv, m);
                q[i - db] = coef;
                if (coef == 0)
                    continue;
                for (long j = 0; j <= db; ++j)
                    a[i - db + j] = reduce(a[i - db + j] - coef * b[j], m);
            }
            a.resize(static_cast<size_t>(db));
            trim(a);
            trim(q);
            return {q, a};
        }

        inline Poly mod(const Poly &a, const Poly &b, const Integer &m) { return divmod(a, b, m).second; }

        inline Poly monic(Poly a, const Integer &m)
        {
            if (a.empty())
                return a;
            Integer inv = inverse(a.back(), m);
            for (auto &v : a)
                v = reduce(v * inv, m);
            return a;
        }

        inline Poly gcd(Poly a, Poly b, const Integer &m)
        {
            while (!b.empty())
            {
                Poly r = mod(a, b, m);
                a = std::move(b);
                b = std::move(r);
            }
            return monic(a, m);
        }

        /// base^e mod f.
        inline Poly powmod(Poly base, Integer e, const Poly &f, const Integer &m)
        {
            Poly result{Integer(1)};
            base = mod(base, f, m);
            while (e > 0)
            {
                if (mpz_odd_p(e.get_mpz_t()))
                    result = mod(mul(result, base, m), f, m);
                e >>= 1;
                if (e > 0)
                    base = mod(mul(base, base, m), f, m);
            }
            return result;
        }

        inline Integer evaluate(const Poly &a, const Integer &x, const Integer &m)
        {
            Integer acc = 0;
            for (size_t i = a.size(); i-- > 0;)
                acc = reduce(acc * x + a[i], m);
            return acc;
        }

        /**
         * Distinct-degree factorization of a square-free monic f: returns the
         * degrees of the irreducible factors (with repetition).
         */
        inline std::vector<long> factor_degrees(const Poly &f_in, const Integer &m)
        {
            Poly f = monic(f_in, m);
            std::vector<long> out;
            Poly x{Integer(0), Integer(1)};
            Poly h = x;
            for (long d = 1; 2 * d <= degree(f); ++d)
            {
                h = powmod(h, m, f, m);
                Poly g = gcd(f, sub(h, x, m), m);
                if (degree(g) > 0)
                {
                    for (long i = 0; i < degree(g) / d; ++i)
                        out.push_back(d);
                    f = divmod(f, g, m).first;
                    h = mod(h, f, m);
                }
            }
            if (degree(f) > 0)
                out.push_back(degree(f));
            return out;
        }

        inline void split_linear(const Poly &f, const Integer &m, std::mt19937_64 &rng, std::set<Integer> &out)
        {
            long d = degree(f);
            if (d <= 0)
                return;
            if (d == 1)
            {
                Integer r = reduce(-f[0] * inverse(f[1], m), m);
                out.insert(r);
                return;
            }
            if (m == 2)
            {
                for (long x = 0; x < 2; ++x)
                    if (evaluate(f, Integer(x), m) == 0)
                        out.insert(Integer(x));
                return;
            }
            Integer half = (m - 1) / 2;
            for (int attempt = 0; attempt < 200; ++attempt)
            {
                Integer a = reduce(Integer(static_cast<unsigned long>(rng() >> 2)), m);
                Poly t = powmod(Poly{a, Integer(1)}, half, f, m);
                t = sub(t, Poly{Integer(1)}, m);
                Poly g = gcd(f, t, m);
                if (degree(g) > 0 && degree(g) < d)
                {
                    split_linear(g, m, rng, out);
                    split_linear(divmod(f, g, m).first, m, rng, out);
                    return;
                }
            }
            throw ComputationError("modp: equal-degree splitting failed");
        }

        /// Roots in F_m of a polynomial, via gcd with x^m - x and Cantor-Zassenhaus splitting.
        inline std::set<Integer> roots(const Poly &f, const Integer &m)
        {
            std::set<Integer> out;
            if (f.empty())
                throw PreconditionError("roots of the zero polynomial");
            if (degree(f) == 0)
                return out;
            Poly x{Integer(0), Integer(1)};
            Poly xm = powmod(x, m, f, m);
            Poly g = gcd(f, sub(xm, x, m), m);
            std::mt19937_64 rng(12345);
            split_linear(g, m, rng, out);
            return out;
        }
    } // namespace modp

    /// All residues x mod ell with p(x) = 0 mod ell.
    inline std::set<Integer> roots_mod_ell(const RationalPolynomial &p, const Integer &ell)
    {
        if (!is_prime(ell))
            throw PreconditionError("roots_mod_ell: modulus is not prime");
        auto f = modp::from_rational(p, ell);
        if (f.empty())
            throw PreconditionError("roots_mod_ell: polynomial vanishes identically mod ell");
        return modp::roots(f, ell);
    }
} // namespace smf
