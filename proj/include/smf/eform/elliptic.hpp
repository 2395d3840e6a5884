#pragma once

#include <map>
#include <vector>

#include "smf/algebra/factor.hpp"
#include "smf/algebra/matrix.hpp"
#include "smf/algebra/ntt.hpp"
#include "smf/algebra/number_field.hpp"
#include "smf/eform/qseries.hpp"

namespace smf
{
    /**
     * A normalized Hecke eigenform of level 1, representing its Galois orbit:
     * the eigenvalue field, coordinates in the Victor Miller cusp basis, and the
     * q-expansion coefficients a_n (n < n_terms) as field elements.
     */
    struct EllipticEigenform
    {
        int weight = 0;
        NumberField field = NumberField::rationals();
        std::vector<NumberFieldElement> coordinates;
        std::vector<NumberFieldElement> coefficients;

        const NumberFieldElement &a(size_t n) const
        {
            if (n >= coefficients.size())
                throw PreconditionError("EllipticEigenform: coefficient index beyond the computed range");
            return coefficients[n];
        }

        size_t n_terms() const { return coefficients.size(); }
    };

    /// Matrix of T_m on the Victor Miller basis, acting on row coordinate vectors: T_m f_i = sum_j M_ij f_j.
    inline RationalMatrix hecke_matrix_elliptic(const std::vector<QSeries> &basis, int r, long m)
    {
        size_t d = basis.size();
        RationalMatrix M(d, d);
        for (size_t i = 0; i < d; ++i)
        {
            if (basis[i].n_terms() < static_cast<size_t>(m) * d + 1)
                throw PreconditionError("hecke_matrix_elliptic: truncation too short");
            auto t = hecke_Tn_elliptic(basis[i], r, m);
            for (size_t j = 0; j < d; ++j)
                M(i, j) = t[j + 1];
        }
        return M;
    }

    /**
     * One eigenform per irreducible factor of the characteristic polynomial of T_2
     * on S_r, with coefficients a_n for n < n_terms in the factor's field.
     */
    inline std::vector<EllipticEigenform> elliptic_eigenforms(int r, size_t n_terms)
    {
        if (r % 2 != 0)
            throw PreconditionError("elliptic_eigenforms: odd weight");
        long d = dimension_Sk(r);
        if (d == 0)
            return {};
        size_t n = std::max(n_terms, static_cast<size_t>(2 * d + 2));
        auto basis = victor_miller_basis(r, n);
        RationalMatrix T2 = hecke_matrix_elliptic(basis, r, 2);
        auto fac = factor_rational(T2.charpoly());
        std::vector<EllipticEigenform> out;
        for (const auto &[phi, mult] : fac.factors)
        {
            if (mult != 1)
                throw ComputationError("elliptic_eigenforms: repeated T(2) eigenvalue");
            EllipticEigenform F;
            F.weight = r;
            F.field = phi.degree() == 1 ? NumberField::rationals() : NumberField(phi, "a", true);
            NumberFieldElement lambda = phi.degree() == 1 ? NumberFieldElement(-phi[0]) : F.field.generator();
            // Row vector c with c T2 = lambda c, i.e. kernel of (T2^t - lambda I).
            Matrix<NumberFieldElement> A(static_cast<size_t>(d), static_cast<size_t>(d));
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j)
                    A(i, j) = NumberFieldElement(T2(j, i)) - (i == j ? lambda : NumberFieldElement(0));
            auto ker = A.kernel();
            if (ker.size() != 1)
                throw ComputationError("elliptic_eigenforms: eigenspace is not one-dimensional");
            auto c = ker[0];
            NumberFieldElement scale = c[0].inverse();
            for (auto &x : c)
                x = x * scale;
            F.coordinates = c;
            F.coefficients.assign(n_terms, NumberFieldElement(0));
            for (size_t m = 0; m < n_terms; ++m)
                for (long i = 0; i < d; ++i)
                    if (basis[i][m] != 0)
                        F.coefficients[m] += c[i] * NumberFieldElement(basis[i][m]);
            out.push_back(std::move(F));
        }
        return out;
    }

    /// mu_p = a_p, mu_{p^2} = a_p^2 - 2p^{r-1}, mu_{p^3} = a_p(a_p^2 - 3p^{r-1}).
    inline NumberFieldElement mu_elliptic(const NumberFieldElement &ap, long p, int r, int delta)
    {
        NumberFieldElement q(Integer(ipow(p, static_cast<unsigned long>(r - 1))));
        switch (delta)
        {
        case 1:
            return ap;
        case 2:
            return ap * ap - NumberFieldElement(2) * q;
        case 3:
            return ap * (ap * ap - NumberFieldElement(3) * q);
        default:
            throw PreconditionError("mu_elliptic: delta must be 1, 2 or 3");
        }
    }

    inline NumberFieldElement mu_elliptic(const EllipticEigenform &f, long p, int delta)
    {
        return mu_elliptic(f.a(static_cast<size_t>(p)), p, f.weight, delta);
    }

    namespace detail
    {
        using ntt::u64;

        inline std::vector<u64> eisenstein_mod(int k, size_t N, u64 ell)
        {
            Rational factor = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
            Integer num = factor.get_num();
            u64 f = static_cast<u64>(mpz_fdiv_ui(num.get_mpz_t(), ell));
            std::vector<u64> s(N, 0);
            for (size_t d = 1; d < N; ++d)
            {
                u64 de = ntt::pow_mod(d % ell, static_cast<u64>(k - 1), ell);
                for (size_t m = d; m < N; m += d)
                {
                    s[m] += de;
                    if (s[m] >= ell)
                        s[m] -= ell;
                }
            }
            std::vector<u64> out(N);
            for (size_t m = 0; m < N; ++m)
                out[m] = m == 0 ? 1 % ell : static_cast<u64>(static_cast<unsigned __int128>(f) * s[m] % ell);
            return out;
        }

        inline std::vector<u64> power_mod_series(std::vector<u64> base, unsigned e, u64 ell, size_t N)
        {
            std::vector<u64> r(N, 0);
            r[0] = 1 % ell;
            while (e)
            {
                if (e & 1)
                    r = ntt::multiply_mod(r, base, ell, N);
                e >>= 1;
                if (e)
                    base = ntt::multiply_mod(base, base, ell, N);
            }
            return r;
        }
    } // namespace detail

    /// Default cap on the number of q-expansion terms used by the ordinarity test.
    inline constexpr size_t kOrdinarityTermCap = 8'000'000;

    /**
     * True iff T_ell acting on S_r is invertible modulo ell, computed from the
     * triangular integral basis Delta^j E4^a E6^b reduced mod ell to d*ell + 1 terms.
     */
    inline bool is_ordinary(int r, const Integer &ell_in, size_t term_cap = kOrdinarityTermCap)
    {
        if (!is_prime(ell_in))
            throw PreconditionError("is_ordinary: ell must be prime");
        if (!ell_in.fits_ulong_p() || ell_in > Integer(2147483647))
            throw PreconditionError("is_ordinary: ell too large for the modular method");
        ntt::u64 ell = ell_in.get_ui();
        long d = dimension_Sk(r);
        if (d == 0)
            return true;
        size_t N = static_cast<size_t>(d) * ell + 1;
        if (N > term_cap)
            throw ComputationError("is_ordinary: required q-expansion length exceeds the configured memory cap");
        auto E4 = detail::eisenstein_mod(4, N, ell);
        auto E6 = detail::eisenstein_mod(6, N, ell);
        // Delta from the Euler product, reduced mod ell.
        std::vector<ntt::u64> eta(N, 0);
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
                    eta[static_cast<size_t>(g)] = (k % 2 == 0) ? 1 % ell : ell - 1;
                    any = true;
                }
            }
            if (!any)
                break;
        }
        auto eta24 = detail::power_mod_series(eta, 24, ell, N);
        std::vector<ntt::u64> D(N, 0);
        for (size_t i = 0; i + 1 < N; ++i)
            D[i + 1] = eta24[i];

        std::vector<std::vector<ntt::u64>> rows;
        std::vector<ntt::u64> Dj = D;
        for (long j = 1; j <= d; ++j)
        {
            auto [a, b] = detail::e4e6_exponents(r - 12 * static_cast<int>(j));
            auto g = ntt::multiply_mod(Dj, detail::power_mod_series(E4, static_cast<unsigned>(a), ell, N), ell, N);
            if (b)
                g = ntt::multiply_mod(g, E6, ell, N);
            std::vector<ntt::u64> row;
            for (long t = 1; t <= d; ++t)
                row.push_back(g[static_cast<size_t>(t) * ell]);
            rows.push_back(std::move(row));
            if (j < d)
                Dj = ntt::multiply_mod(Dj, D, ell, N);
        }
        // Determinant mod ell by elimination.
        for (long c = 0; c < d; ++c)
        {
            long piv = -1;
            for (long i = c; i < d; ++i)
                if (rows[i][c] % ell != 0)
                {
                    piv = i;
                    break;
                }
            if (piv < 0)
                return false;
            std::swap(rows[piv], rows[c]);
            ntt::u64 inv = ntt::pow_mod(rows[c][c], ell - 2, ell);
            for (long i = c + 1; i < d; ++i)
            {
                ntt::u64 f = static_cast<ntt::u64>(static_cast<unsigned __int128>(rows[i][c]) * inv % ell);
                for (long t = c; t < d; ++t)
                    rows[i][t] = (rows[i][t] + ell - static_cast<ntt::u64>(static_cast<unsigned __int128>(f) * rows[c][t] % ell)) % ell;
            }
        }
        return true;
    }
} // namespace smf
