#pragma once

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "smf/siegel/expansion.hpp"

namespace smf
{
    /// The Igusa generators E4, E6, chi10, chi12.
    enum class Igusa : int
    {
        E4 = 0,
        E6 = 1,
        X10 = 2,
        X12 = 3
    };

    inline constexpr std::array<int, 4> kIgusaWeights{4, 6, 10, 12};
    inline constexpr std::array<const char *, 4> kIgusaNames{"E4", "E6", "X10", "X12"};

    inline int igusa_weight(Igusa g) { return kIgusaWeights[static_cast<size_t>(g)]; }
    inline std::string igusa_name(Igusa g) { return kIgusaNames[static_cast<size_t>(g)]; }

    /// Monomial E4^e0 E6^e1 chi10^e2 chi12^e3.
    struct Monomial
    {
        std::array<int, 4> e{0, 0, 0, 0};

        static Monomial one() { return {}; }
        static Monomial of(Igusa g)
        {
            Monomial m;
            m.e[static_cast<size_t>(g)] = 1;
            return m;
        }

        int weight() const
        {
            int w = 0;
            for (size_t i = 0; i < 4; ++i)
                w += e[i] * kIgusaWeights[i];
            return w;
        }

        int degree() const { return e[0] + e[1] + e[2] + e[3]; }
        bool is_one() const { return degree() == 0; }

        Monomial times(Igusa g) const
        {
            Monomial m = *this;
            ++m.e[static_cast<size_t>(g)];
            return m;
        }

        std::string to_string() const
        {
            std::string s;
            for (size_t i = 0; i < 4; ++i)
                for (int t = 0; t < e[i]; ++t)
                    s += (s.empty() ? "" : "*") + std::string(kIgusaNames[i]);
            return s.empty() ? "1" : s;
        }

        friend bool operator<(const Monomial &a, const Monomial &b) { return a.e < b.e; }
        friend bool operator==(const Monomial &a, const Monomial &b) { return a.e == b.e; }
    };

    /// Monomials of weight w in the allowed generators, in descending exponent order.
    inline std::vector<Monomial> monomials_of_weight(int w, const std::vector<Igusa> &allowed)
    {
        std::vector<Monomial> out;
        if (w < 0)
            return out;
        std::array<bool, 4> ok{false, false, false, false};
        for (Igusa g : allowed)
            ok[static_cast<size_t>(g)] = true;
        for (int a = ok[0] ? w / 4 : 0; a >= 0; --a)
            for (int b = ok[1] ? (w - 4 * a) / 6 : 0; b >= 0; --b)
                for (int c = ok[2] ? (w - 4 * a - 6 * b) / 10 : 0; c >= 0; --c)
                {
                    int rest = w - 4 * a - 6 * b - 10 * c;
                    if (rest < 0 || rest % 12 != 0 || (rest > 0 && !ok[3]))
                        continue;
                    out.push_back(Monomial{{a, b, c, rest / 12}});
                }
        return out;
    }

    /**
     * Lazily evaluated ring generated by E4, E6, chi10, chi12 with integral
     * Fourier coefficients (E4, E6 with constant term 1, chi10 and chi12 with
     * C([1,1,1]) = 1). Coefficients of monomials and of Satoh brackets of two
     * generators are computed on demand and memoized on reduced indices.
     * Requests beyond the discriminant bound D or singular bound S throw.
     */
    class SiegelRing
    {
    public:
        SiegelRing(long D, long singular) : D_(D), S_(singular)
        {
            if (D < 3 || singular < 0)
                throw PreconditionError("SiegelRing: bounds too small");
            long n_max = jacobi_truncation_for(D);
            auto E41 = jacobi_eisenstein(4, n_max), E61 = jacobi_eisenstein(6, n_max);
            auto cusp = jacobi_cusp_generators(n_max);
            const JacobiFormIndex1 *phis[4] = {&E41, &E61, &cusp.phi10, &cusp.phi12};
            for (size_t g = 0; g < 4; ++g)
            {
                int k = kIgusaWeights[g];
                Rational scale = g < 2 ? Rational(-2 * k) / bernoulli(static_cast<unsigned>(k)) : Rational(1);
                auto &tab = prim_[g];
                tab.resize(static_cast<size_t>(D + 1));
                for (long N = 0; N <= D; ++N)
                {
                    Rational v = scale * phis[g]->by_disc(N);
                    if (v.get_den() != 1)
                        throw ComputationError("SiegelRing: non-integral Jacobi coefficient");
                    tab[static_cast<size_t>(N)] = v.get_num();
                }
                constant_[g] = g < 2 ? Integer(1) : Integer(0);
            }
        }

        long disc_bound() const { return D_; }
        long singular_bound() const { return S_; }

        /// Throws unless f is semidefinite and its reduced form lies within the bounds.
        void require_in_bounds(const BQF &f) const
        {
            if (!f.is_semidefinite())
                throw PreconditionError("SiegelRing: index " + f.to_string() + " is not semidefinite");
            long d = f.disc();
            if (d > D_)
                throw PreconditionError("insufficient truncation: index " + f.to_string() + " has discriminant " +
                                        std::to_string(d) + " > " + std::to_string(D_));
            if (d == 0 && f.content() > S_)
                throw PreconditionError("insufficient truncation: singular index " + f.to_string() + " beyond " +
                                        std::to_string(S_));
        }

        /// Coefficient of a generator at any semidefinite index.
        Integer generator(Igusa g, const BQF &f) const
        {
            require_in_bounds(f);
            return generator_unchecked(static_cast<size_t>(g), f);
        }

        /// Coefficient of a monomial at any semidefinite index.
        Integer monomial(const Monomial &m, const BQF &f)
        {
            require_in_bounds(f);
            std::lock_guard<std::recursive_mutex> lock(mu_);
            return monomial_unchecked(m, f);
        }

        /// kA kB [A, B] at any semidefinite index (integral).
        CoeffValue<Integer> bracket_scaled(Igusa A, Igusa B, const BQF &f)
        {
            require_in_bounds(f);
            std::lock_guard<std::recursive_mutex> lock(mu_);
            return bracket_unchecked(A, B, f);
        }

        /// Coefficient of m [A, B] at any semidefinite index.
        CoeffValue<Rational> element(const Monomial &m, Igusa A, Igusa B, const BQF &h)
        {
            require_in_bounds(h);
            std::lock_guard<std::recursive_mutex> lock(mu_);
            std::array<Integer, 3> acc{0, 0, 0};
            if (m.is_one())
            {
                auto v = bracket_unchecked(A, B, h);
                acc = v.v;
            }
            else
                for_each_decomposition(h, [&](const BQF &f, const BQF &g)
                                       {
                    if (g.is_zero())
                        return;
                    Integer cm = monomial_unchecked(m, f);
                    if (cm == 0)
                        return;
                    auto b = bracket_unchecked(A, B, g);
                    for (size_t i = 0; i < 3; ++i)
                        acc[i] += cm * b.v[i]; });
            Rational den(igusa_weight(A) * igusa_weight(B));
            return CoeffValue<Rational>::quadratic(Rational(acc[0]) / den, Rational(acc[1]) / den, Rational(acc[2]) / den);
        }

        /// Table of a generator within the ring's bounds.
        SiegelExpansion<Rational> generator_expansion(Igusa g) const
        {
            SiegelExpansion<Rational> out(igusa_weight(g), 0, D_, S_);
            for (const BQF &h : out.index_set())
                out.set(h, CoeffValue<Rational>::scalar(Rational(generator_unchecked(static_cast<size_t>(g), h))));
            return out;
        }

        /// Number of memoized monomial and bracket values.
        size_t cache_size()
        {
            std::lock_guard<std::recursive_mutex> lock(mu_);
            size_t n = 0;
            for (const auto &kv : monomial_memo_)
                n += kv.second.size();
            for (const auto &kv : bracket_memo_)
                n += kv.second.size();
            return n;
        }

    private:
        Integer generator_unchecked(size_t g, const BQF &f) const
        {
            if (f.is_zero())
                return constant_[g];
            long k1 = kIgusaWeights[g] - 1;
            long N = f.disc(), content = f.content();
            const auto &tab = prim_[g];
            if (content == 1)
                return tab[static_cast<size_t>(N)];
            Integer s = 0;
            for (long d : divisors(content))
                s += ipow(d, static_cast<unsigned long>(k1)) * tab[static_cast<size_t>(N / (d * d))];
            return s;
        }

        Integer monomial_unchecked(const Monomial &m, const BQF &f)
        {
            int deg = m.degree();
            if (deg == 0)
                return f.is_zero() ? Integer(1) : Integer(0);
            if (deg == 1)
                for (size_t g = 0; g < 4; ++g)
                    if (m.e[g])
                        return generator_unchecked(g, f);
            BQF r = reduce_bqf(f).reduced;
            auto &memo = monomial_memo_[m];
            auto it = memo.find(r);
            if (it != memo.end())
                return it->second;
            // Split off the highest-index generator present: cusp generators vanish on singular indices.
            size_t g = 3;
            while (m.e[g] == 0)
                --g;
            Monomial rest = m;
            --rest.e[g];
            Integer s = 0;
            for_each_decomposition(r, [&](const BQF &a, const BQF &b)
                                   {
                Integer cg = generator_unchecked(g, a);
                if (cg == 0)
                    return;
                Integer cr = monomial_unchecked(rest, b);
                if (cr != 0)
                    s += cg * cr; });
            memo.emplace(r, s);
            return s;
        }

        CoeffValue<Integer> bracket_unchecked(Igusa A, Igusa B, const BQF &f)
        {
            auto [r, U] = reduce_bqf(f);
            auto key = std::make_pair(static_cast<int>(A), static_cast<int>(B));
            auto &memo = bracket_memo_[key];
            auto it = memo.find(r);
            CoeffValue<Integer> value;
            if (it != memo.end())
                value = it->second;
            else
            {
                size_t a = static_cast<size_t>(A), b = static_cast<size_t>(B);
                long kA = kIgusaWeights[a], kB = kIgusaWeights[b];
                std::array<Integer, 3> acc{0, 0, 0};
                for_each_decomposition(r, [&](const BQF &x, const BQF &y)
                                       {
                    Integer ca = generator_unchecked(a, x);
                    if (ca == 0)
                        return;
                    Integer cb = generator_unchecked(b, y);
                    if (cb == 0)
                        return;
                    Integer w = ca * cb;
                    // kA kB (P(x)/kA - P(y)/kB) = kB P(x) - kA P(y).
                    acc[0] += w * (kB * x.a - kA * y.a);
                    acc[1] += w * (kB * x.b - kA * y.b);
                    acc[2] += w * (kB * x.c - kA * y.c); });
                value = CoeffValue<Integer>::quadratic(acc[0], acc[1], acc[2]);
                memo.emplace(r, value);
            }
            return transform_coefficient(value, U, igusa_weight(A) + igusa_weight(B));
        }

        long D_, S_;
        std::array<std::vector<Integer>, 4> prim_;
        std::array<Integer, 4> constant_;
        std::recursive_mutex mu_;
        std::map<Monomial, std::unordered_map<BQF, Integer, BQFHash>> monomial_memo_;
        std::map<std::pair<int, int>, std::unordered_map<BQF, CoeffValue<Integer>, BQFHash>> bracket_memo_;
    };
} // namespace smf
