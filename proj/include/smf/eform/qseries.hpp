#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include "smf/algebra/bernoulli.hpp"
#include "smf/algebra/scalar.hpp"

namespace smf
{
    /// Truncated q-expansion sum_{n < n_terms} a_n q^n with rational coefficients.
    class QSeries
    {
    public:
        QSeries() = default;
        QSeries(int weight, std::vector<Rational> coeffs) : weight_(weight), c_(std::move(coeffs)) {}
        QSeries(int weight, size_t n_terms) : weight_(weight), c_(n_terms, Rational(0)) {}

        static QSeries from_integers(int weight, const std::vector<Integer> &v)
        {
            return QSeries(weight, std::vector<Rational>(v.begin(), v.end()));
        }

        int weight() const { return weight_; }
        size_t n_terms() const { return c_.size(); }
        const std::vector<Rational> &coefficients() const { return c_; }
        const Rational &operator[](size_t n) const
        {
            if (n >= c_.size())
                throw PreconditionError("QSeries: coefficient beyond truncation");
            return c_[n];
        }
        Rational &operator[](size_t n) { return c_[n]; }

        bool is_zero() const
        {
            return std::all_of(c_.begin(), c_.end(), [](const Rational &x) { return x == 0; });
        }

        QSeries truncate(size_t n) const
        {
            return QSeries(weight_, std::vector<Rational>(c_.begin(), c_.begin() + std::min(n, c_.size())));
        }

        friend QSeries operator+(const QSeries &a, const QSeries &b)
        {
            size_t n = std::min(a.n_terms(), b.n_terms());
            QSeries r(a.weight_, n);
            for (size_t i = 0; i < n; ++i)
                r.c_[i] = a.c_[i] + b.c_[i];
            return r;
        }

        friend QSeries operator-(const QSeries &a, const QSeries &b)
        {
            size_t n = std::min(a.n_terms(), b.n_terms());
            QSeries r(a.weight_, n);
            for (size_t i = 0; i < n; ++i)
                r.c_[i] = a.c_[i] - b.c_[i];
            return r;
        }

        friend QSeries operator*(const Rational &s, QSeries a)
        {
            for (auto &v : a.c_)
                v *= s;
            return a;
        }

        /// Product truncated to the shorter input; weights add.
        friend QSeries operator*(const QSeries &a, const QSeries &b)
        {
            size_t n = std::min(a.n_terms(), b.n_terms());
            QSeries r(a.weight_ + b.weight_, n);
            for (size_t i = 0; i < n; ++i)
            {
                if (a.c_[i] == 0)
                    continue;
                for (size_t j = 0; i + j < n; ++j)
                    r.c_[i + j] += a.c_[i] * b.c_[j];
            }
            return r;
        }

        friend bool operator==(const QSeries &a, const QSeries &b) { return a.c_ == b.c_; }

        friend std::ostream &operator<<(std::ostream &os, const QSeries &f)
        {
            for (size_t i = 0; i < f.c_.size(); ++i)
                os << (i ? " " : "") << f.c_[i];
            return os;
        }

    private:
        int weight_ = 0;
        std::vector<Rational> c_;
    };

    namespace detail
    {
        /// sigma_e(n) for n < N by a divisor sieve.
        inline std::vector<Integer> sigma_table(size_t N, unsigned long e)
        {
            std::vector<Integer> s(N, Integer(0));
            for (size_t d = 1; d < N; ++d)
            {
                Integer de = ipow(Integer(static_cast<unsigned long>(d)), e);
                for (size_t m = d; m < N; m += d)
                    s[m] += de;
            }
            return s;
        }

        /// Integer power-series product truncated to N terms.
        inline std::vector<Integer> mul_trunc(const std::vector<Integer> &a, const std::vector<Integer> &b, size_t N)
        {
            std::vector<Integer> c(N, Integer(0));
            for (size_t i = 0; i < std::min(N, a.size()); ++i)
            {
                if (a[i] == 0)
                    continue;
                for (size_t j = 0; j < b.size() && i + j < N; ++j)
                    c[i + j] += a[i] * b[j];
            }
            return c;
        }

        inline std::vector<Integer> pow_trunc(std::vector<Integer> base, unsigned e, size_t N)
        {
            std::vector<Integer> r(N, Integer(0));
            r[0] = 1;
            while (e)
            {
                if (e & 1)
                    r = mul_trunc(r, base, N);
                e >>= 1;
                if (e)
                    base = mul_trunc(base, base, N);
            }
            return r;
        }

        /// prod_{m>=1} (1 - q^m) by Euler's pentagonal number theorem.
        inline std::vector<Integer> euler_product(size_t N)
        {
            std::vector<Integer> e(N, Integer(0));
            for (long k = 0;; ++k)
            {
                bool any = false;
                for (long s : {k, -k})
                {
                    if (k == 0 && s == 0 && any)
                        continue;
                    long g = s * (3 * s - 1) / 2;
                    if (g < static_cast<long>(N))
                    {
                        e[static_cast<size_t>(g)] += (k % 2 == 0) ? 1 : -1;
                        any = true;
                    }
                }
                if (!any)
                    break;
            }
            return e;
        }

        inline std::vector<Integer> eisenstein_integral(int k, size_t n)
        {
            Rational factor = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
            if (factor.get_den() != 1)
                throw PreconditionError("eisenstein: normalization is not integral for this weight");
            auto s = sigma_table(n, static_cast<unsigned long>(k - 1));
            std::vector<Integer> c(n);
            for (size_t m = 0; m < n; ++m)
                c[m] = m == 0 ? Integer(1) : factor.get_num() * s[m];
            return c;
        }

        inline std::vector<Integer> delta_integral(size_t n)
        {
            std::vector<Integer> out(n, Integer(0));
            if (n <= 1)
                return out;
            auto p = pow_trunc(euler_product(n - 1), 24, n - 1);
            for (size_t i = 0; i + 1 < n; ++i)
                out[i + 1] = p[i];
            return out;
        }
    } // namespace detail

    /// E_k = 1 - (2k/B_k) sum sigma_{k-1}(m) q^m, to n terms.
    inline QSeries eisenstein_qexp(int k, size_t n)
    {
        if (k < 4 || k % 2 != 0)
            throw PreconditionError("eisenstein_qexp: weight must be even and at least 4");
        Rational factor = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
        auto s = detail::sigma_table(n, static_cast<unsigned long>(k - 1));
        QSeries out(k, n);
        for (size_t m = 0; m < n; ++m)
            out[m] = m == 0 ? Rational(1) : factor * Rational(s[m]);
        return out;
    }

    /// Delta = q prod (1-q^m)^24, to n terms.
    inline QSeries delta_qexp(size_t n)
    {
        if (n < 1)
            throw PreconditionError("delta_qexp: need at least one term");
        return QSeries::from_integers(12, detail::delta_integral(n));
    }

    inline long dimension_Mk(int k)
    {
        if (k < 0 || k % 2 != 0)
            return 0;
        if (k % 12 == 2)
            return k / 12;
        return k / 12 + 1;
    }

    inline long dimension_Sk(int k)
    {
        if (k < 12 || k % 2 != 0)
            return 0;
        return dimension_Mk(k) - 1;
    }

    namespace detail
    {
        /// Exponents (a, b) with 4a + 6b = w, b in {0, 1}; w even, w != 2.
        inline std::pair<int, int> e4e6_exponents(int w)
        {
            int b = (w % 4 == 2) ? 1 : 0;
            return {(w - 6 * b) / 4, b};
        }

        /// Unitriangular integral cusp basis Delta^j E4^a E6^b (leading q^j), j = 1..dim S_r.
        inline std::vector<std::vector<Integer>> triangular_cusp_basis(int r, size_t n)
        {
            long d = dimension_Sk(r);
            std::vector<std::vector<Integer>> out;
            if (d == 0)
                return out;
            auto E4 = eisenstein_integral(4, n);
            auto E6 = eisenstein_integral(6, n);
            auto D = delta_integral(n);
            std::vector<Integer> Dj = D;
            for (long j = 1; j <= d; ++j)
            {
                auto [a, b] = e4e6_exponents(r - 12 * static_cast<int>(j));
                auto g = mul_trunc(Dj, pow_trunc(E4, static_cast<unsigned>(a), n), n);
                if (b)
                    g = mul_trunc(g, E6, n);
                out.push_back(std::move(g));
                Dj = mul_trunc(Dj, D, n);
            }
            return out;
        }
    } // namespace detail

    /// Integral echelonized basis f_i = q^i + O(q^{d+1}) of S_r.
    inline std::vector<QSeries> victor_miller_basis(int r, size_t n)
    {
        if (r % 2 != 0)
            throw PreconditionError("victor_miller_basis: odd weight");
        long d = dimension_Sk(r);
        if (d == 0)
            return {};
        if (n < static_cast<size_t>(d + 1))
            throw PreconditionError("victor_miller_basis: too few terms to echelonize");
        auto g = detail::triangular_cusp_basis(r, n);
        // Clear entries above the diagonal, from the bottom up; integrality is kept since pivots are 1.
        for (long i = d - 1; i >= 0; --i)
            for (long t = i + 1; t < d; ++t)
            {
                Integer c = g[i][t + 1];
                if (c == 0)
                    continue;
                for (size_t m = 0; m < n; ++m)
                    g[i][m] -= c * g[t][m];
            }
        std::vector<QSeries> out;
        for (auto &v : g)
            out.push_back(QSeries::from_integers(r, v));
        return out;
    }

    /// a_{T_m f}(n) = sum_{d | gcd(m,n)} d^{r-1} a_f(mn/d^2); output length floor((N-1)/m) + 1.
    inline QSeries hecke_Tn_elliptic(const QSeries &f, int r, long m)
    {
        if (m < 1)
            throw PreconditionError("hecke_Tn_elliptic: index must be positive");
        size_t N = f.n_terms();
        if (N == 0)
            throw PreconditionError("hecke_Tn_elliptic: truncation too short");
        size_t out_n = (N - 1) / static_cast<size_t>(m) + 1;
        QSeries out(r, out_n);
        for (size_t n = 0; n < out_n; ++n)
        {
            if (n == 0)
            {
                // Constant term: sum_{d | m} d^{r-1} a_0.
                out[0] = Rational(sigma(m, static_cast<unsigned long>(r - 1))) * f[0];
                continue;
            }
            Rational s = 0;
            long g = igcd(m, static_cast<long>(n));
            for (long d : divisors(g))
                s += Rational(ipow(d, static_cast<unsigned long>(r - 1))) * f[static_cast<size_t>(m * static_cast<long>(n) / (d * d))];
            out[n] = s;
        }
        return out;
    }
} // namespace smf
