#pragma once

#include <vector>

#include "smf/algebra/bigfloat.hpp"
#include "smf/algebra/factor.hpp"
#include "smf/algebra/polynomial.hpp"
#include "smf/algebra/scalar.hpp"

namespace smf
{
    using IntegerVector = std::vector<Integer>;

    /// A lattice given by a list of linearly independent integer basis vectors.
    struct IntegerLattice
    {
        std::vector<IntegerVector> basis;
    };

    namespace detail
    {
        inline Integer dot(const IntegerVector &a, const IntegerVector &b)
        {
            Integer s = 0;
            for (size_t i = 0; i < a.size(); ++i)
                s += a[i] * b[i];
            return s;
        }

        /// round(a / b) for b > 0, ties away from -infinity.
        inline Integer round_div(const Integer &a, const Integer &b)
        {
            Integer num = 2 * a + b, den = 2 * b, q;
            mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return q;
        }
    } // namespace detail

    /**
     * LLL reduction with delta = 3/4 using exact integral Gram-Schmidt data
     * (all arithmetic in Z). Throws PreconditionError on a dependent basis.
     */
    inline IntegerLattice lll_reduce(const IntegerLattice &input)
    {
        std::vector<IntegerVector> b = input.basis;
        size_t n = b.size();
        if (n == 0)
            return {b};
        for (const auto &v : b)
            if (v.size() != b[0].size())
                throw PreconditionError("lll_reduce: vectors of unequal length");

        // 1-based bookkeeping as in the classical integral formulation.
        std::vector<Integer> d(n + 1, 0);
        std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1, 0));
        auto B = [&](size_t i) -> IntegerVector & { return b[i - 1]; };

        d[0] = 1;
        d[1] = detail::dot(B(1), B(1));
        if (d[1] == 0)
            throw PreconditionError("lll_reduce: dependent basis");
        size_t k = 2, kmax = 1;

        auto redi = [&](size_t kk, size_t l) {
            Integer two = 2 * lam[kk][l];
            if (abs(two) > d[l])
            {
                Integer q = detail::round_div(lam[kk][l], d[l]);
                for (size_t t = 0; t < B(kk).size(); ++t)
                    B(kk)[t] -= q * B(l)[t];
                lam[kk][l] -= q * d[l];
                for (size_t i = 1; i < l; ++i)
                    lam[kk][i] -= q * lam[l][i];
            }
        };

        auto swapi = [&](size_t kk) {
            std::swap(B(kk), B(kk - 1));
            for (size_t j = 1; j + 1 < kk; ++j)
                std::swap(lam[kk][j], lam[kk - 1][j]);
            Integer l = lam[kk][kk - 1];
            Integer Bv = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
            for (size_t i = kk + 1; i <= kmax; ++i)
            {
                Integer t = lam[i][kk];
                lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
                lam[i][kk - 1] = (Bv * t + l * lam[i][kk]) / d[kk];
            }
            d[kk - 1] = Bv;
        };

        while (k <= n)
        {
            if (k > kmax)
            {
                kmax = k;
                for (size_t j = 1; j <= k; ++j)
                {
                    Integer u = detail::dot(B(k), B(j));
                    for (size_t i = 1; i < j; ++i)
                        u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                    if (j < k)
                        lam[k][j] = u;
                    else
                    {
                        d[k] = u;
                        if (u == 0)
                            throw PreconditionError("lll_reduce: dependent basis");
                    }
                }
            }
            redi(k, k - 1);
            if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1])
            {
                swapi(k);
                k = std::max<size_t>(2, k - 1);
            }
            else
            {
                for (size_t l = k - 1; l-- > 1;)
                    redi(k, l);
                ++k;
            }
        }
        return {b};
    }

    /// Row-style Hermite normal form of the lattice spanned by the rows (zero rows dropped).
    inline std::vector<IntegerVector> hermite_normal_form(std::vector<IntegerVector> rows)
    {
        if (rows.empty())
            return rows;
        size_t m = rows[0].size();
        size_t r = 0;
        for (size_t c = 0; c < m && r < rows.size(); ++c)
        {
            // Euclid down the column until a single nonzero entry remains at row r.
            while (true)
            {
                size_t best = rows.size();
                for (size_t i = r; i < rows.size(); ++i)
                    if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
                        best = i;
                if (best == rows.size())
                    break;
                std::swap(rows[r], rows[best]);
                bool clean = true;
                for (size_t i = r + 1; i < rows.size(); ++i)
                {
                    if (rows[i][c] == 0)
                        continue;
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                    for (size_t t = 0; t < m; ++t)
                        rows[i][t] -= q * rows[r][t];
                    if (rows[i][c] != 0)
                        clean = false;
                }
                if (clean)
                    break;
            }
            if (r < rows.size() && rows[r][c] != 0)
            {
                if (rows[r][c] < 0)
                    for (auto &v : rows[r])
                        v = -v;
                for (size_t i = 0; i < r; ++i)
                {
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                    for (size_t t = 0; t < m; ++t)
                        rows[i][t] -= q * rows[r][t];
                }
                ++r;
            }
        }
        rows.resize(r);
        return rows;
    }

    /**
     * Integer polynomial of degree <= d nearly vanishing at x, found by LLL on
     * rows (e_i | round(C x^i)) with C = 2^ceil(prec/2). The result is the
     * irreducible factor of the shortest relation that vanishes at x, with
     * content 1 and positive leading coefficient, verified to satisfy
     * |p(x)| < 2^(-prec/4).
     */
    inline RationalPolynomial algdep(const BigFloat &x, unsigned d, long prec)
    {
        if (d < 1)
            throw PreconditionError("algdep: degree bound must be positive");
        mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec + 64);
        BigFloat xv = x.with_precision(wp);
        BigFloat C = BigFloat::pow2((prec + 1) / 2, wp);
        IntegerLattice L;
        BigFloat power(1L, wp);
        for (unsigned i = 0; i <= d; ++i)
        {
            IntegerVector row(d + 2, 0);
            row[i] = 1;
            row[d + 1] = (C * power).round_to_integer();
            L.basis.push_back(std::move(row));
            power = power * xv;
        }
        auto red = lll_reduce(L);
        BigFloat threshold = BigFloat::pow2(-prec / 4, wp);
        for (const auto &v : red.basis)
        {
            std::vector<Rational> coeffs(v.begin(), v.begin() + d + 1);
            RationalPolynomial p(coeffs);
            if (p.degree() < 1)
                continue;
            // Pick the irreducible factor that vanishes at x.
            RationalPolynomial best;
            BigFloat best_val(wp);
            bool have = false;
            for (const auto &[f, e] : factor_rational(p).factors)
            {
                RationalPolynomial g = primitive_part(f);
                BigFloat val = abs(g.evaluate<BigFloat>(xv));
                if (!have || val < best_val)
                {
                    best = g;
                    best_val = val;
                    have = true;
                }
            }
            if (have && best_val < threshold)
                return best;
        }
        throw ComputationError("algdep: no relation found at this precision");
    }
} // namespace smf
