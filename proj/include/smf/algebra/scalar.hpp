#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smf
{
    using Integer = mpz_class;
    using Rational = mpq_class;

    /// Raised when an operation's documented precondition does not hold.
    class PreconditionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Raised when an exact computation cannot be completed as requested.
    class ComputationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline Integer ipow(const Integer &base, unsigned long e)
    {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
        return r;
    }

    inline Integer ipow(long base, unsigned long e)
    {
        return ipow(Integer(base), e);
    }

    inline Rational rpow(const Rational &base, long e)
    {
        Rational r = 1;
        Rational b = base;
        bool inv = e < 0;
        unsigned long n = static_cast<unsigned long>(inv ? -e : e);
        while (n)
        {
            if (n & 1)
                r *= b;
            b *= b;
            n >>= 1;
        }
        if (inv)
        {
            if (r == 0)
                throw std::domain_error("rpow: zero to a negative power");
            r = 1 / r;
        }
        return r;
    }

    inline Rational make_rational(const Integer &num, const Integer &den)
    {
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    inline std::string to_string(const Integer &z) { return z.get_str(); }

    /// Rationals are always printed as num/den in lowest terms.
    inline std::string to_string(const Rational &q)
    {
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    }

    inline Rational parse_rational(const std::string &s)
    {
        Rational q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("not a rational: " + s);
        q.canonicalize();
        return q;
    }

    inline bool is_prime(const Integer &n)
    {
        return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
    }

    inline bool is_prime(long n) { return is_prime(Integer(n)); }

    inline long kronecker(long a, long n)
    {
        return mpz_kronecker_si(Integer(a).get_mpz_t(), n);
    }

    inline long mod_floor(long a, long m)
    {
        long r = a % m;
        return r < 0 ? r + m : r;
    }

    inline long igcd(long a, long b)
    {
        return std::gcd(a, b);
    }

    namespace detail
    {
        inline Integer pollard_brent(const Integer &n, unsigned long seed)
        {
            if (mpz_even_p(n.get_mpz_t()))
                return 2;
            Integer y = seed % n, c = (seed * 7 + 3) % n, m = 64, g = 1, r = 1, q = 1;
            Integer x, ys, t;
            auto f = [&](const Integer &v) {
                Integer w = v * v + c;
                mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
                return w;
            };
            while (g == 1)
            {
                x = y;
                for (Integer i = 0; i < r; ++i)
                    y = f(y);
                Integer k = 0;
                while (k < r && g == 1)
                {
                    ys = y;
                    for (Integer i = 0; i < m && i < r - k; ++i)
                    {
                        y = f(y);
                        t = abs(x - y);
                        q = (q * t) % n;
                    }
                    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                    k += m;
                }
                r *= 2;
                if (r > Integer(1) << 26)
                    return n;
            }
            if (g == n)
            {
                do
                {
                    ys = f(ys);
                    t = abs(x - ys);
                    mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
                } while (g == 1);
            }
            return g;
        }

        inline void factor_into(Integer n, std::map<Integer, unsigned> &out)
        {
            if (n == 1)
                return;
            if (is_prime(n))
            {
                ++out[n];
                return;
            }
            for (unsigned long seed = 2;; ++seed)
            {
                Integer d = pollard_brent(n, seed);
                if (d != 1 && d != n)
                {
                    factor_into(d, out);
                    factor_into(n / d, out);
                    return;
                }
                if (seed > 200)
                    throw ComputationError("integer factorization did not converge for " + n.get_str());
            }
        }
    } // namespace detail

    /// Prime factorization of |n| (n != 0): trial division by small primes, then Pollard-Brent.
    inline std::map<Integer, unsigned> factor_integer(const Integer &value)
    {
        if (value == 0)
            throw PreconditionError("factor_integer: zero");
        Integer n = abs(value);
        std::map<Integer, unsigned> out;
        for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2))
        {
            while (mpz_divisible_ui_p(n.get_mpz_t(), p))
            {
                ++out[Integer(p)];
                n /= p;
            }
        }
        if (n > 1)
            detail::factor_into(n, out);
        return out;
    }

    inline std::vector<std::pair<long, int>> factor_small(long n)
    {
        std::vector<std::pair<long, int>> f;
        if (n < 0)
            n = -n;
        for (long p = 2; p * p <= n; ++p)
        {
            int e = 0;
            while (n % p == 0)
            {
                n /= p;
                ++e;
            }
            if (e)
                f.emplace_back(p, e);
        }
        if (n > 1)
            f.emplace_back(n, 1);
        return f;
    }

    inline std::vector<long> divisors(long n)
    {
        std::vector<long> d;
        for (long i = 1; i * i <= n; ++i)
        {
            if (n % i == 0)
            {
                d.push_back(i);
                if (i * i != n)
                    d.push_back(n / i);
            }
        }
        std::sort(d.begin(), d.end());
        return d;
    }

    inline int moebius(long n)
    {
        int mu = 1;
        for (auto [p, e] : factor_small(n))
        {
            if (e > 1)
                return 0;
            mu = -mu;
        }
        return mu;
    }

    /// sigma_e(n) = sum of d^e over positive divisors d of n.
    inline Integer sigma(long n, unsigned long e)
    {
        Integer s = 0;
        for (long d : divisors(n))
            s += ipow(d, e);
        return s;
    }

    inline std::vector<long> primes_up_to(long n)
    {
        std::vector<char> sieve(static_cast<size_t>(std::max(n + 1, 2L)), 1);
        std::vector<long> ps;
        for (long i = 2; i <= n; ++i)
        {
            if (!sieve[i])
                continue;
            ps.push_back(i);
            for (long j = i * i; j <= n; j += i)
                sieve[j] = 0;
        }
        return ps;
    }

    /// Decomposes a prime power q = p^e; returns {0,0} if q is not a prime power.
    inline std::pair<long, int> prime_power(long q)
    {
        auto f = factor_small(q);
        if (f.size() != 1)
            return {0, 0};
        return f.front();
    }
} // namespace smf
