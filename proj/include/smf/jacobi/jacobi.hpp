#pragma once

#include <vector>

#include "smf/algebra/bernoulli.hpp"
#include "smf/eform/qseries.hpp"

namespace smf
{
    /**
     * Index-1 Jacobi form of level 1, truncated at n <= n_max.
     *
     * For index 1 the coefficient c(n, r) depends only on N = 4n - r^2 (N also
     * fixes r mod 2), so the table is stored by N for 0 <= N <= 4 n_max.
     */
    class JacobiFormIndex1
    {
    public:
        JacobiFormIndex1() = default;
        JacobiFormIndex1(int weight, long n_max) : weight_(weight), n_max_(n_max), c_(static_cast<size_t>(4 * n_max + 1), Rational(0))
        {
            if (n_max < 0)
                throw PreconditionError("JacobiFormIndex1: negative truncation");
        }

        int weight() const { return weight_; }
        long n_max() const { return n_max_; }
        long disc_bound() const { return 4 * n_max_; }

        /// Coefficient indexed by the discriminant N = 4n - r^2.
        const Rational &by_disc(long N) const
        {
            static const Rational zero(0);
            if (N < 0)
                return zero;
            if (N > disc_bound())
                throw PreconditionError("JacobiFormIndex1: discriminant " + std::to_string(N) + " beyond truncation");
            return c_[static_cast<size_t>(N)];
        }

        void set_by_disc(long N, const Rational &v)
        {
            if (N < 0 || N > disc_bound())
                throw PreconditionError("JacobiFormIndex1: discriminant out of range");
            if (v != 0 && (N % 4 == 1 || N % 4 == 2))
                throw PreconditionError("JacobiFormIndex1: discriminant not congruent to 0 or 3 mod 4");
            c_[static_cast<size_t>(N)] = v;
        }

        const Rational &c(long n, long r) const { return by_disc(4 * n - r * r); }

        friend JacobiFormIndex1 operator+(const JacobiFormIndex1 &a, const JacobiFormIndex1 &b) { return combine(a, b, 1); }
        friend JacobiFormIndex1 operator-(const JacobiFormIndex1 &a, const JacobiFormIndex1 &b) { return combine(a, b, -1); }

        friend JacobiFormIndex1 operator*(const Rational &s, JacobiFormIndex1 f)
        {
            for (auto &v : f.c_)
                v *= s;
            return f;
        }

        friend bool operator==(const JacobiFormIndex1 &a, const JacobiFormIndex1 &b)
        {
            return a.weight_ == b.weight_ && a.c_ == b.c_;
        }

    private:
        static JacobiFormIndex1 combine(const JacobiFormIndex1 &a, const JacobiFormIndex1 &b, int sign)
        {
            if (a.weight_ != b.weight_)
                throw PreconditionError("JacobiFormIndex1: adding forms of different weight");
            JacobiFormIndex1 out(a.weight_, std::min(a.n_max_, b.n_max_));
            for (long N = 0; N <= out.disc_bound(); ++N)
                out.c_[static_cast<size_t>(N)] = sign > 0 ? Rational(a.c_[N] + b.c_[N]) : Rational(a.c_[N] - b.c_[N]);
            return out;
        }

        int weight_ = 0;
        long n_max_ = 0;
        std::vector<Rational> c_;
    };

    /// E_{k,1} with c(0,0) = 1 and c(n,r) = H(k-1, 4n-r^2) / H(k-1, 0).
    inline JacobiFormIndex1 jacobi_eisenstein(int k, long n_max)
    {
        if (k != 4 && k != 6)
            throw PreconditionError("jacobi_eisenstein: weight must be 4 or 6");
        JacobiFormIndex1 out(k, n_max);
        unsigned r = static_cast<unsigned>(k - 1);
        Rational h0 = cohen_H(r, 0);
        for (long N = 0; N <= out.disc_bound(); ++N)
            if (N % 4 == 0 || N % 4 == 3)
                out.set_by_disc(N, cohen_H(r, N) / h0);
        return out;
    }

    /// (f * phi)(n, r) = sum_m a_f(m) c_phi(n - m, r); truncated to the shorter of the two inputs.
    inline JacobiFormIndex1 scale_by_elliptic(const QSeries &f, const JacobiFormIndex1 &phi)
    {
        if (f.n_terms() == 0)
            throw PreconditionError("scale_by_elliptic: empty q-series");
        long n_max = std::min(phi.n_max(), static_cast<long>(f.n_terms()) - 1);
        JacobiFormIndex1 out(f.weight() + phi.weight(), n_max);
        for (long n = 0; n <= n_max; ++n)
            for (long r = 0; r <= 1; ++r)
            {
                if (4 * n - r * r < 0)
                    continue;
                Rational s = 0;
                for (long m = 0; m <= n; ++m)
                {
                    const Rational &a = f[static_cast<size_t>(m)];
                    if (a == 0)
                        continue;
                    const Rational &c = phi.c(n - m, r);
                    if (c != 0)
                        s += a * c;
                }
                out.set_by_disc(4 * n - r * r, s);
            }
        return out;
    }

    /// sum_n (sum_r c(n, r)) q^n for n <= n_max.
    inline QSeries specialize_z0(const JacobiFormIndex1 &phi)
    {
        QSeries out(phi.weight(), static_cast<size_t>(phi.n_max() + 1));
        for (long n = 0; n <= phi.n_max(); ++n)
        {
            Rational s = phi.c(n, 0);
            for (long r = 1; r * r <= 4 * n; ++r)
                s += 2 * phi.c(n, r);
            out[static_cast<size_t>(n)] = s;
        }
        return out;
    }

    struct JacobiCuspGenerators
    {
        JacobiFormIndex1 phi10;
        JacobiFormIndex1 phi12;
    };

    /// phi_{10,1} and phi_{12,1}, each scaled so that c(1, 1) = 1.
    inline JacobiCuspGenerators jacobi_cusp_generators(long n_max)
    {
        if (n_max < 1)
            throw PreconditionError("jacobi_cusp_generators: n_max must be at least 1");
        size_t n = static_cast<size_t>(n_max + 1);
        auto E4 = eisenstein_qexp(4, n), E6 = eisenstein_qexp(6, n);
        auto E41 = jacobi_eisenstein(4, n_max), E61 = jacobi_eisenstein(6, n_max);
        auto p10 = scale_by_elliptic(E6, E41) - scale_by_elliptic(E4, E61);
        auto p12 = scale_by_elliptic(E4 * E4, E41) - scale_by_elliptic(E6, E61);
        auto normalize = [](JacobiFormIndex1 &f)
        {
            Rational c11 = f.c(1, 1);
            if (c11 == 0)
                throw ComputationError("jacobi_cusp_generators: c(1,1) vanishes");
            f = Rational(1) / c11 * f;
        };
        normalize(p10);
        normalize(p12);
        return {p10, p12};
    }
} // namespace smf
