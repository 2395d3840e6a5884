#pragma once

#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "smf/algebra/modpoly.hpp"
#include "smf/algebra/polynomial.hpp"
#include "smf/algebra/roots.hpp"

namespace smf
{
    /// p = unit * prod(factor_i ^ multiplicity_i) with monic irreducible factors.
    struct Factorization
    {
        Rational unit;
        std::vector<std::pair<RationalPolynomial, unsigned>> factors;

        RationalPolynomial expand() const
        {
            RationalPolynomial out(unit);
            for (const auto &[f, e] : factors)
                for (unsigned i = 0; i < e; ++i)
                    out = out * f;
            return out;
        }
    };

    /// Square-free decomposition (Yun) of a monic polynomial: pairs (monic square-free part, multiplicity).
    inline std::vector<std::pair<RationalPolynomial, unsigned>> squarefree_decomposition(const RationalPolynomial &p)
    {
        std::vector<std::pair<RationalPolynomial, unsigned>> out;
        RationalPolynomial a = p.monic();
        if (a.degree() < 1)
            return out;
        RationalPolynomial da = a.derivative();
        RationalPolynomial g = poly_gcd(a, da);
        RationalPolynomial b = a / g;
        RationalPolynomial c = da / g;
        RationalPolynomial d = c - b.derivative();
        unsigned i = 1;
        while (b.degree() > 0)
        {
            RationalPolynomial f = poly_gcd(b, d);
            if (f.degree() > 0)
                out.emplace_back(f, i);
            b = b / f;
            c = d / f;
            d = c - b.derivative();
            ++i;
        }
        return out;
    }

    namespace detail
    {
        /// Subset sums of a factor-degree pattern.
        inline std::set<long> degree_sums(const std::vector<long> &pattern)
        {
            std::set<long> sums{0};
            for (long d : pattern)
            {
                std::set<long> next = sums;
                for (long s : sums)
                    next.insert(s + d);
                sums = std::move(next);
            }
            return sums;
        }

        /**
         * Degrees that an integer factor of the square-free polynomial P could
         * have, intersected over the factorization patterns modulo several primes.
         */
        inline std::set<long> admissible_degrees(const std::vector<Integer> &P)
        {
            long n = static_cast<long>(P.size()) - 1;
            std::set<long> allowed;
            for (long d = 0; d <= n; ++d)
                allowed.insert(d);
            int used = 0;
            for (long p : primes_up_to(2000))
            {
                if (used >= 12 || allowed.size() <= 2)
                    break;
                Integer m(p);
                if (mpz_divisible_ui_p(P.back().get_mpz_t(), static_cast<unsigned long>(p)))
                    continue;
                modp::Poly f;
                for (const auto &c : P)
                    f.push_back(modp::reduce(c, m));
                modp::Poly df;
                for (size_t i = 1; i < f.size(); ++i)
                    df.push_back(modp::reduce(f[i] * Integer(static_cast<unsigned long>(i)), m));
                modp::trim(df);
                if (df.empty() || modp::degree(modp::gcd(f, df, m)) > 0)
                    continue;
                auto sums = degree_sums(modp::factor_degrees(f, m));
                std::set<long> keep;
                for (long d : allowed)
                    if (sums.count(d))
                        keep.insert(d);
                allowed = std::move(keep);
                ++used;
            }
            return allowed;
        }

        inline bool next_combination(std::vector<size_t> &idx, size_t n)
        {
            size_t k = idx.size();
            for (size_t i = k; i-- > 0;)
            {
                if (idx[i] < n - k + i)
                {
                    ++idx[i];
                    for (size_t j = i + 1; j < k; ++j)
                        idx[j] = idx[j - 1] + 1;
                    return true;
                }
            }
            return false;
        }

        /// Splits a monic square-free integer polynomial G into monic integer irreducibles.
        inline void split_monic_integer(const std::vector<Integer> &G, std::vector<std::vector<Integer>> &out)
        {
            long n = static_cast<long>(G.size()) - 1;
            if (n <= 1)
            {
                out.push_back(G);
                return;
            }
            auto allowed = admissible_degrees(G);
            std::vector<long> sizes;
            for (long d : allowed)
                if (d >= 1 && 2 * d <= n)
                    sizes.push_back(d);
            if (sizes.empty())
            {
                out.push_back(G);
                return;
            }

            Integer norm2 = 0;
            for (const auto &c : G)
                norm2 += c * c;
            long bits = static_cast<long>(mpz_sizeinbase(norm2.get_mpz_t(), 2)) / 2 + 1;
            mpfr_prec_t prec = static_cast<mpfr_prec_t>(2 * bits + 4 * n + 96);
            std::vector<Rational> qc(G.begin(), G.end());
            auto zs = complex_roots(RationalPolynomial(qc), prec);

            const long cap = 200000;
            long tried = 0;
            for (long s : sizes)
            {
                std::vector<size_t> idx(static_cast<size_t>(s));
                std::iota(idx.begin(), idx.end(), 0);
                do
                {
                    if (++tried > cap)
                        throw ComputationError("cannot split: factor search exceeded its budget");
                    std::vector<BigComplex> prod{BigComplex(BigFloat(1L, prec))};
                    for (size_t i : idx)
                    {
                        std::vector<BigComplex> next(prod.size() + 1, BigComplex(BigFloat(prec)));
                        for (size_t t = 0; t < prod.size(); ++t)
                        {
                            next[t + 1] = next[t + 1] + prod[t];
                            next[t] = next[t] - prod[t] * zs[i];
                        }
                        prod = std::move(next);
                    }
                    std::vector<Integer> H;
                    bool ok = true;
                    for (const auto &c : prod)
                    {
                        Integer v = c.re.round_to_integer();
                        BigFloat err = abs(c.re - BigFloat(v, prec)) + abs(c.im);
                        if (err > BigFloat(0.25, prec))
                        {
                            ok = false;
                            break;
                        }
                        H.push_back(v);
                    }
                    if (!ok)
                        continue;
                    std::vector<Rational> hq(H.begin(), H.end());
                    RationalPolynomial Hp(hq), Gp(qc);
                    auto [quot, rem] = divmod(Gp, Hp);
                    if (!rem.is_zero())
                        continue;
                    std::vector<Integer> Q;
                    for (const auto &c : quot.coefficients())
                        Q.push_back(c.get_num());
                    split_monic_integer(H, out);
                    split_monic_integer(Q, out);
                    return;
                } while (next_combination(idx, static_cast<size_t>(n)));
            }
            out.push_back(G);
        }

        /// Monic irreducible factors over Q of a monic square-free polynomial.
        inline std::vector<RationalPolynomial> split_squarefree(const RationalPolynomial &g)
        {
            if (g.degree() <= 1)
                return {g.monic()};
            auto P = primitive_integer_coefficients(g);
            long n = g.degree();
            Integer a = P.back();
            // G(x) = a^(n-1) P(x/a) is monic with integer coefficients.
            std::vector<Integer> G(P.size());
            for (long i = 0; i <= n; ++i)
                G[i] = (i == n) ? Integer(1) : P[i] * ipow(a, static_cast<unsigned long>(n - 1 - i));
            std::vector<std::vector<Integer>> parts;
            split_monic_integer(G, parts);
            std::vector<RationalPolynomial> out;
            for (const auto &H : parts)
            {
                std::vector<Rational> h;
                for (size_t i = 0; i < H.size(); ++i)
                    h.push_back(Rational(H[i] * ipow(a, static_cast<unsigned long>(i))));
                out.push_back(RationalPolynomial(h).monic());
            }
            return out;
        }
    } // namespace detail

    /**
     * Complete factorization over Q into monic irreducibles. Square-free parts
     * are certified irreducible by modular degree patterns when possible and
     * otherwise split by recombining numerically isolated roots; failure to
     * split within budget raises ComputationError("cannot split ...").
     */
    inline Factorization factor_rational(const RationalPolynomial &p)
    {
        if (p.is_zero())
            throw PreconditionError("factor_rational: zero polynomial");
        Factorization out;
        out.unit = p.lead();
        for (const auto &[g, mult] : squarefree_decomposition(p))
            for (auto &f : detail::split_squarefree(g))
                out.factors.emplace_back(std::move(f), mult);
        std::sort(out.factors.begin(), out.factors.end(), [](const auto &x, const auto &y) {
            if (x.first.degree() != y.first.degree())
                return x.first.degree() < y.first.degree();
            const auto &a = x.first.coefficients();
            const auto &b = y.first.coefficients();
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
        return out;
    }

    inline bool is_irreducible(const RationalPolynomial &p)
    {
        if (p.degree() < 1)
            return false;
        auto f = factor_rational(p);
        return f.factors.size() == 1 && f.factors[0].second == 1;
    }
} // namespace smf
