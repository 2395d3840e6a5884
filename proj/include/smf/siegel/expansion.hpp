#pragma once

#include <array>
#include <map>
#include <unordered_map>
#include <vector>

#include "smf/eform/qseries.hpp"
#include "smf/jacobi/jacobi.hpp"
#include "smf/siegel/bqf.hpp"

namespace smf
{
    /**
     * Fourier coefficient value: a scalar (j = 0) or a quadratic form
     * v[0] X^2 + v[1] XY + v[2] Y^2 (j = 2).
     */
    template <class S>
    struct CoeffValue
    {
        int j = 0;
        std::array<S, 3> v{S(0), S(0), S(0)};

        static CoeffValue scalar(const S &s) { return {0, {s, S(0), S(0)}}; }
        static CoeffValue quadratic(const S &x2, const S &xy, const S &y2) { return {2, {x2, xy, y2}}; }
        static CoeffValue zero(int j) { return {j, {S(0), S(0), S(0)}}; }

        const S &value() const { return v[0]; }
        size_t components() const { return j == 0 ? 1 : 3; }

        bool is_zero() const
        {
            for (size_t i = 0; i < components(); ++i)
                if (!(v[i] == S(0)))
                    return false;
            return true;
        }

        CoeffValue &operator+=(const CoeffValue &o)
        {
            check_same(o);
            for (size_t i = 0; i < components(); ++i)
                v[i] += o.v[i];
            return *this;
        }

        CoeffValue &operator-=(const CoeffValue &o)
        {
            check_same(o);
            for (size_t i = 0; i < components(); ++i)
                v[i] -= o.v[i];
            return *this;
        }

        friend CoeffValue operator+(CoeffValue a, const CoeffValue &b) { return a += b; }
        friend CoeffValue operator-(CoeffValue a, const CoeffValue &b) { return a -= b; }

        friend CoeffValue operator*(const S &s, CoeffValue a)
        {
            for (size_t i = 0; i < a.components(); ++i)
                a.v[i] = s * a.v[i];
            return a;
        }

        /// Product of homogeneous polynomials; at least one factor must be scalar.
        friend CoeffValue operator*(const CoeffValue &a, const CoeffValue &b)
        {
            if (a.j == 0)
                return a.v[0] * b;
            if (b.j == 0)
                return b.v[0] * a;
            throw PreconditionError("CoeffValue: product of two vector-valued coefficients is not supported");
        }

        friend bool operator==(const CoeffValue &a, const CoeffValue &b)
        {
            if (a.j != b.j)
                return false;
            for (size_t i = 0; i < a.components(); ++i)
                if (!(a.v[i] == b.v[i]))
                    return false;
            return true;
        }

        friend bool operator!=(const CoeffValue &a, const CoeffValue &b) { return !(a == b); }

        friend std::ostream &operator<<(std::ostream &os, const CoeffValue &c)
        {
            if (c.j == 0)
                return os << c.v[0];
            return os << "(" << c.v[0] << ")*X^2 + (" << c.v[1] << ")*X*Y + (" << c.v[2] << ")*Y^2";
        }

    private:
        void check_same(const CoeffValue &o) const
        {
            if (j != o.j)
                throw PreconditionError("CoeffValue: adding values of different degree");
        }
    };

    /// A . p := p((X, Y) A); identity on scalars.
    template <class S, class M>
    CoeffValue<S> act_on_poly(const Mat2<M> &A, const CoeffValue<S> &p)
    {
        if (p.j == 0)
            return p;
        // X -> a00 X + a10 Y, Y -> a01 X + a11 Y.
        S a = S(A.m00), b = S(A.m10), c = S(A.m01), d = S(A.m11);
        const S &x2 = p.v[0], &xy = p.v[1], &y2 = p.v[2];
        CoeffValue<S> out = CoeffValue<S>::zero(2);
        out.v[0] = x2 * a * a + xy * a * c + y2 * c * c;
        out.v[1] = x2 * (S(2) * a * b) + xy * (a * d + b * c) + y2 * (S(2) * c * d);
        out.v[2] = x2 * b * b + xy * b * d + y2 * d * d;
        return out;
    }

    /// Polynomial P([a,b,c]) = aX^2 + bXY + cY^2 as a coefficient value.
    template <class S>
    CoeffValue<S> form_polynomial(const BQF &f)
    {
        return CoeffValue<S>::quadratic(S(f.a), S(f.b), S(f.c));
    }

    /**
     * Truncated Fourier expansion of a degree-2 Siegel modular form of weight
     * (k, j): coefficients on reduced definite forms with disc <= D and on
     * singular forms [0,0,c] with c <= S. Missing keys within bounds are zero.
     */
    template <class S>
    class SiegelExpansion
    {
    public:
        SiegelExpansion() = default;
        SiegelExpansion(int k, int j, long D, long singular)
            : k_(k), j_(j), D_(D), S_(singular)
        {
            if (j != 0 && j != 2)
                throw PreconditionError("SiegelExpansion: j must be 0 or 2");
            if (D < 0 || singular < 0)
                throw PreconditionError("SiegelExpansion: bounds must be nonnegative");
        }

        int k() const { return k_; }
        int j() const { return j_; }
        long disc_bound() const { return D_; }
        long singular_bound() const { return S_; }

        bool in_bounds(const BQF &reduced) const
        {
            long d = reduced.disc();
            return d == 0 ? reduced.c <= S_ : d <= D_;
        }

        void set(const BQF &reduced, const CoeffValue<S> &value)
        {
            if (!is_reduced(reduced))
                throw PreconditionError("SiegelExpansion: key " + reduced.to_string() + " is not reduced");
            if (!in_bounds(reduced))
                throw PreconditionError("SiegelExpansion: key " + reduced.to_string() + " outside bounds");
            if (value.j != j_)
                throw PreconditionError("SiegelExpansion: value has the wrong degree");
            if (value.is_zero())
                table_.erase(reduced);
            else
                table_[reduced] = value;
        }

        CoeffValue<S> stored(const BQF &reduced) const
        {
            auto it = table_.find(reduced);
            return it == table_.end() ? CoeffValue<S>::zero(j_) : it->second;
        }

        /// Nonzero stored keys in canonical order.
        std::vector<BQF> keys() const
        {
            std::vector<BQF> out;
            out.reserve(table_.size());
            for (const auto &kv : table_)
                out.push_back(kv.first);
            std::sort(out.begin(), out.end(), CanonicalKeyLess{});
            return out;
        }

        /// Every index within bounds, nonzero or not, in canonical order.
        std::vector<BQF> index_set() const { return index_set(D_, S_); }

        static std::vector<BQF> index_set(long D, long singular)
        {
            auto out = reduced_forms(D);
            for (long c = 0; c <= singular; ++c)
                out.push_back({0, 0, c});
            return out;
        }

        size_t size() const { return table_.size(); }

        friend bool operator==(const SiegelExpansion &a, const SiegelExpansion &b)
        {
            return a.k_ == b.k_ && a.j_ == b.j_ && a.D_ == b.D_ && a.S_ == b.S_ && a.table_ == b.table_;
        }

    private:
        int k_ = 0, j_ = 0;
        long D_ = 0, S_ = 0;
        std::unordered_map<BQF, CoeffValue<S>, BQFHash> table_;
    };

    /**
     * Transformation rule between an index and its reduced representative:
     * if g = f_U then C(f) = det(U)^k rho(U^{-t}) C(g), where rho(A) p = p((X, Y) A).
     */
    template <class S>
    CoeffValue<S> transform_coefficient(const CoeffValue<S> &reduced_value, const IMat2 &U, int k)
    {
        CoeffValue<S> out = reduced_value.j == 0 ? reduced_value : act_on_poly(U.transpose().unimodular_inverse(), reduced_value);
        if (k % 2 != 0 && U.det() < 0)
            out = S(-1) * out;
        return out;
    }

    template <class S>
    CoeffValue<S> coefficient_at(const SiegelExpansion<S> &F, const BQF &f)
    {
        auto [g, U] = reduce_bqf(f);
        if (!F.in_bounds(g))
            throw PreconditionError("coefficient_at: index " + f.to_string() + " (reduced " + g.to_string() + ") outside stored bounds");
        return transform_coefficient(F.stored(g), U, F.k());
    }

    template <class S>
    SiegelExpansion<S> multiply(const SiegelExpansion<S> &F, const SiegelExpansion<S> &G)
    {
        if (F.j() != 0 && G.j() != 0)
            throw PreconditionError("multiply: product of two vector-valued expansions is not supported");
        long D = std::min(F.disc_bound(), G.disc_bound());
        long Sb = std::min(F.singular_bound(), G.singular_bound());
        SiegelExpansion<S> out(F.k() + G.k(), F.j() + G.j(), D, Sb);
        for (const BQF &h : out.index_set())
        {
            CoeffValue<S> acc = CoeffValue<S>::zero(out.j());
            for_each_decomposition(h, [&](const BQF &f, const BQF &g)
                                   {
                auto cf = coefficient_at(F, f);
                if (cf.is_zero())
                    return;
                auto cg = coefficient_at(G, g);
                if (cg.is_zero())
                    return;
                acc += cf * cg; });
            out.set(h, acc);
        }
        return out;
    }

    /// Linear combination a F + b G of expansions of equal weight.
    template <class S>
    SiegelExpansion<S> linear_combination(const S &a, const SiegelExpansion<S> &F, const S &b, const SiegelExpansion<S> &G)
    {
        if (F.k() != G.k() || F.j() != G.j())
            throw PreconditionError("linear_combination: weights differ");
        SiegelExpansion<S> out(F.k(), F.j(), std::min(F.disc_bound(), G.disc_bound()), std::min(F.singular_bound(), G.singular_bound()));
        for (const BQF &h : out.index_set())
            out.set(h, a * F.stored(h) + b * G.stored(h));
        return out;
    }

    /**
     * Maass lift: C([a,b,c]) = sum_{d | gcd(a,b,c)} d^{k-1} c_phi((4ac - b^2)/d^2),
     * singular C([0,0,c]) = sigma_{k-1}(c) c_phi(0), constant -B_k/(2k) c_phi(0).
     */
    inline SiegelExpansion<Rational> maass_lift(const JacobiFormIndex1 &phi, int k, long D, long singular)
    {
        if (phi.disc_bound() < D)
            throw PreconditionError("maass_lift: Jacobi form truncated below the requested discriminant bound");
        SiegelExpansion<Rational> out(k, 0, D, singular);
        const Rational c0 = phi.by_disc(0);
        for (const BQF &h : out.index_set())
        {
            Rational v = 0;
            if (h.is_zero())
                v = -bernoulli(static_cast<unsigned>(k)) / Rational(2 * k) * c0;
            else if (h.disc() == 0)
                v = Rational(sigma(h.c, static_cast<unsigned long>(k - 1))) * c0;
            else
            {
                long g = h.content(), N = h.disc();
                for (long d : divisors(g))
                    v += Rational(ipow(d, static_cast<unsigned long>(k - 1))) * phi.by_disc(N / (d * d));
            }
            out.set(h, CoeffValue<Rational>::scalar(v));
        }
        return out;
    }

    struct IgusaGenerators
    {
        SiegelExpansion<Rational> E4, E6, X10, X12;
    };

    /// Jacobi truncation needed for lifts complete to discriminant D.
    inline long jacobi_truncation_for(long D) { return D / 4 + 1; }

    /// E4, E6 normalized to constant term 1 and chi10, chi12 with C([1,1,1]) = 1.
    inline IgusaGenerators igusa_generators(long D, long singular)
    {
        long n_max = jacobi_truncation_for(D);
        auto E41 = jacobi_eisenstein(4, n_max), E61 = jacobi_eisenstein(6, n_max);
        auto cusp = jacobi_cusp_generators(n_max);
        auto normalized = [&](const JacobiFormIndex1 &phi, int k)
        {
            Rational scale = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
            return maass_lift(scale * phi, k, D, singular);
        };
        return {normalized(E41, 4), normalized(E61, 6), maass_lift(cusp.phi10, 10, D, singular),
                maass_lift(cusp.phi12, 12, D, singular)};
    }

    /// Siegel Phi operator: sum_c C([0,0,c]) q^c, using the Y^2 component when j = 2.
    template <class S>
    QSeries phi_operator(const SiegelExpansion<S> &F)
    {
        QSeries out(F.k() + F.j(), static_cast<size_t>(F.singular_bound() + 1));
        for (long c = 0; c <= F.singular_bound(); ++c)
        {
            auto v = F.stored({0, 0, c});
            out[static_cast<size_t>(c)] = F.j() == 0 ? v.v[0] : v.v[2];
        }
        return out;
    }

    /// [F, G]_2 with C(h) = sum_{f+g=h} C_F(f) C_G(g) (P(f)/k - P(g)/k').
    template <class S>
    SiegelExpansion<S> satoh_bracket(const SiegelExpansion<S> &F, const SiegelExpansion<S> &G)
    {
        if (F.j() != 0 || G.j() != 0)
            throw PreconditionError("satoh_bracket: both arguments must be scalar-valued");
        if (F.k() < 1 || G.k() < 1)
            throw PreconditionError("satoh_bracket: weights must be positive");
        long D = std::min(F.disc_bound(), G.disc_bound());
        long Sb = std::min(F.singular_bound(), G.singular_bound());
        SiegelExpansion<S> out(F.k() + G.k(), 2, D, Sb);
        S ik = S(1) / S(F.k()), ikp = S(1) / S(G.k());
        for (const BQF &h : out.index_set())
        {
            CoeffValue<S> acc = CoeffValue<S>::zero(2);
            for_each_decomposition(h, [&](const BQF &f, const BQF &g)
                                   {
                auto cf = coefficient_at(F, f);
                if (cf.is_zero())
                    return;
                auto cg = coefficient_at(G, g);
                if (cg.is_zero())
                    return;
                S w = cf.v[0] * cg.v[0];
                acc += w * (ik * form_polynomial<S>(f) - ikp * form_polynomial<S>(g)); });
            out.set(h, acc);
        }
        return out;
    }
} // namespace smf
