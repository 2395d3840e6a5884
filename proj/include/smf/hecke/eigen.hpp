#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <tuple>
#include <vector>

#include "smf/algebra/factor.hpp"
#include "smf/algebra/matrix.hpp"
#include "smf/algebra/number_field.hpp"
#include "smf/hecke/hecke.hpp"

namespace smf
{
    /// A Hecke eigenform of weight (k, 2) up to Galois conjugacy.
    struct EigenSystem
    {
        int k = 0, j = 2;
        NumberField field = NumberField::rationals();
        RationalPolynomial t2_factor;
        std::vector<NumberFieldElement> coordinates;
        bool cuspidal = false;
        std::map<long, NumberFieldElement> eigenvalues; ///< keyed by p^delta
    };

    /// T(2) together with the pivot indices used to compute it.
    struct HeckeMatrix
    {
        RationalMatrix T;
        std::vector<std::pair<BQF, int>> pivots; ///< (index, component)
    };

    /// Restriction of an operator to the cusp subspace: rows of W span it, W T = T_cusp W.
    struct CuspRestriction
    {
        RationalMatrix W;
        RationalMatrix T;
    };

    /**
     * Hecke computations on a Satoh basis with cached images of basis elements.
     * Row convention: T(B_i) = sum_j T_ij B_j.
     */
    class HeckeEngine
    {
    public:
        explicit HeckeEngine(std::shared_ptr<const SatohBasis> basis) : basis_(std::move(basis))
        {
            if (!basis_)
                throw PreconditionError("HeckeEngine: null basis");
        }

        const SatohBasis &basis() const { return *basis_; }
        size_t dim() const { return basis_->size(); }

        /// Image of the i-th basis element under T(p^delta) at Q (cached).
        CoeffValue<Rational> image(size_t i, long p, int delta, const BQF &Q)
        {
            auto key = std::make_tuple(i, p, delta, Q.a, Q.b, Q.c);
            {
                std::lock_guard<std::mutex> lock(mu_);
                auto it = images_.find(key);
                if (it != images_.end())
                    return it->second;
            }
            auto v = hecke_image(*basis_, i, p, delta, Q);
            std::lock_guard<std::mutex> lock(mu_);
            images_.emplace(key, v);
            return v;
        }

        /// Definite reduced indices usable as T(p^delta) targets, canonical order.
        std::vector<BQF> target_indices(long p, int delta, long disc_cap) const
        {
            long need = ipow(p, static_cast<unsigned long>(2 * delta)).get_si();
            long cap = std::min(disc_cap, basis_->disc_bound() / need);
            return cap >= 3 ? reduced_forms(cap) : std::vector<BQF>{};
        }

        /// Matrix of T(2); see hecke_matrix.
        HeckeMatrix t2_matrix(unsigned seed = 0) { return hecke_matrix(2, 1, seed); }

        /**
         * Matrix of T(p^delta): greedy pivots (Q, component) raising the rank of N,
         * then T = M N^{-1}. A nonzero seed shuffles the candidate order.
         */
        HeckeMatrix hecke_matrix(long p, int delta, unsigned seed = 0)
        {
            size_t n = dim();
            auto candidates = target_indices(p, delta, 400);
            if (seed != 0)
            {
                std::mt19937 rng(seed);
                size_t prefix = std::min<size_t>(candidates.size(), 40);
                std::shuffle(candidates.begin(), candidates.begin() + static_cast<long>(prefix), rng);
            }
            HeckeMatrix out;
            std::vector<std::vector<Rational>> echelon; // reduced rows of pivot vectors
            std::vector<size_t> lead;
            for (const BQF &Q : candidates)
            {
                if (out.pivots.size() == n)
                    break;
                std::vector<CoeffValue<Rational>> vals(n);
                for (size_t i = 0; i < n; ++i)
                    vals[i] = basis_->coefficient(i, Q);
                for (int comp = 0; comp < 3 && out.pivots.size() < n; ++comp)
                {
                    std::vector<Rational> v(n);
                    for (size_t i = 0; i < n; ++i)
                        v[i] = vals[i].v[static_cast<size_t>(comp)];
                    std::vector<Rational> w = v;
                    for (size_t r = 0; r < echelon.size(); ++r)
                        if (w[lead[r]] != 0)
                        {
                            Rational f = w[lead[r]] / echelon[r][lead[r]];
                            for (size_t t = 0; t < n; ++t)
                                w[t] -= f * echelon[r][t];
                        }
                    auto nz = std::find_if(w.begin(), w.end(), [](const Rational &x)
                                           { return x != 0; });
                    if (nz == w.end())
                        continue;
                    echelon.push_back(w);
                    lead.push_back(static_cast<size_t>(nz - w.begin()));
                    out.pivots.push_back({Q, comp});
                }
            }
            if (out.pivots.size() < n)
                throw ComputationError("hecke_matrix: cannot reach full rank within stored indices");
            RationalMatrix N(n, n), M(n, n);
            for (size_t c = 0; c < n; ++c)
            {
                const auto &[Q, comp] = out.pivots[c];
                for (size_t i = 0; i < n; ++i)
                {
                    N(i, c) = basis_->coefficient(i, Q).v[static_cast<size_t>(comp)];
                    M(i, c) = image(i, p, delta, Q).v[static_cast<size_t>(comp)];
                }
            }
            out.T = M * N.inverse();
            return out;
        }

        /// Row vectors (C_{B_i}([0,0,c]) Y^2-part)_c for c = 0..cmax.
        RationalMatrix phi_matrix(long cmax = 30) const
        {
            cmax = std::min(cmax, basis_->singular_bound());
            RationalMatrix P(dim(), static_cast<size_t>(cmax + 1));
            for (size_t i = 0; i < dim(); ++i)
                for (long c = 0; c <= cmax; ++c)
                    P(i, static_cast<size_t>(c)) = basis_->coefficient(i, {0, 0, c}).v[2];
            return P;
        }

        /// T(2) restricted to the cusp subspace {w : w Phi = 0}.
        CuspRestriction cusp_t2()
        {
            RationalMatrix T = t2_matrix().T;
            auto ker = phi_matrix().transpose().kernel();
            size_t r = ker.size(), n = dim();
            CuspRestriction out{RationalMatrix(r, n), RationalMatrix(r, r)};
            if (r == 0)
                return out;
            for (size_t a = 0; a < r; ++a)
                for (size_t i = 0; i < n; ++i)
                    out.W(a, i) = ker[a][i];
            RationalMatrix WT = out.W * T;
            auto [R, piv] = out.W.rref();
            RationalMatrix Wp(r, r), WTp(r, r);
            for (size_t a = 0; a < r; ++a)
                for (size_t b = 0; b < r; ++b)
                {
                    Wp(a, b) = out.W(a, piv[b]);
                    WTp(a, b) = WT(a, piv[b]);
                }
            out.T = WTp * Wp.inverse();
            if (!(out.T * out.W == WT))
                throw ComputationError("cusp_t2: cusp subspace is not T(2)-stable");
            return out;
        }

        /// One eigensystem per irreducible factor of the characteristic polynomial of T(2).
        std::vector<EigenSystem> eigensystems()
        {
            size_t n = dim();
            std::vector<EigenSystem> out;
            if (n == 0)
                return out;
            RationalMatrix T = t2_matrix().T;
            RationalMatrix P = phi_matrix();
            auto fac = factor_rational(T.charpoly());
            for (const auto &[phi, mult] : fac.factors)
            {
                if (mult != 1)
                    throw ComputationError("eigensystems: repeated T(2) eigenvalue");
                EigenSystem E;
                E.k = basis_->k();
                E.t2_factor = phi;
                E.field = phi.degree() == 1 ? NumberField::rationals() : NumberField(phi, "a", true);
                NumberFieldElement lambda = phi.degree() == 1 ? NumberFieldElement(-phi[0]) : E.field.generator();
                Matrix<NumberFieldElement> A(n, n);
                for (size_t i = 0; i < n; ++i)
                    for (size_t t = 0; t < n; ++t)
                        A(i, t) = NumberFieldElement(T(t, i)) - (i == t ? lambda : NumberFieldElement(0));
                auto ker = A.kernel();
                if (ker.size() != 1)
                    throw ComputationError("eigensystems: eigenspace is not one-dimensional");
                auto c = ker[0];
                auto first = std::find_if(c.begin(), c.end(), [](const NumberFieldElement &x)
                                          { return !x.is_zero(); });
                NumberFieldElement scale = first->inverse();
                for (auto &x : c)
                    x = x * scale;
                E.coordinates = c;
                E.cuspidal = true;
                for (size_t col = 0; col < P.cols() && E.cuspidal; ++col)
                {
                    NumberFieldElement s(0);
                    for (size_t i = 0; i < n; ++i)
                        if (P(i, col) != 0)
                            s += c[i] * NumberFieldElement(P(i, col));
                    E.cuspidal = s.is_zero();
                }
                if (!(direct_eigenvalue(E, 2, 1) == lambda))
                    throw ComputationError("eigensystems: direct T(2) eigenvalue disagrees with the T(2) matrix");
                E.eigenvalues[2] = lambda;
                out.push_back(std::move(E));
            }
            std::stable_sort(out.begin(), out.end(), [](const EigenSystem &a, const EigenSystem &b)
                             { return std::make_tuple(a.cuspidal, a.field.degree()) < std::make_tuple(b.cuspidal, b.field.degree()); });
            return out;
        }

        /// Coefficient of the eigenform at Q as a polynomial with field coefficients.
        CoeffValue<NumberFieldElement> eigenform_coefficient(const EigenSystem &E, const BQF &Q) const
        {
            CoeffValue<NumberFieldElement> out = CoeffValue<NumberFieldElement>::zero(2);
            for (size_t i = 0; i < dim(); ++i)
            {
                if (E.coordinates[i].is_zero())
                    continue;
                auto v = basis_->coefficient(i, Q);
                for (size_t t = 0; t < 3; ++t)
                    if (v.v[t] != 0)
                        out.v[t] += E.coordinates[i] * NumberFieldElement(v.v[t]);
            }
            return out;
        }

        /// lambda_{p^delta}, computed once per eigensystem and stored in E.eigenvalues.
        NumberFieldElement eigenvalue(EigenSystem &E, long p, int delta)
        {
            long key = ipow(p, static_cast<unsigned long>(delta)).get_si();
            if (auto it = E.eigenvalues.find(key); it != E.eigenvalues.end())
                return it->second;
            auto l = direct_eigenvalue(E, p, delta);
            E.eigenvalues[key] = l;
            return l;
        }

        /**
         * Ratio of X^2 components of T(p^delta)F and F at the first target index
         * where F has nonzero X^2 component, checked on all components there and
         * at a second such index.
         */
        NumberFieldElement direct_eigenvalue(const EigenSystem &E, long p, int delta)
        {
            long key = ipow(p, static_cast<unsigned long>(delta)).get_si();
            std::vector<BQF> used;
            NumberFieldElement lambda;
            auto targets = target_indices(p, delta, 1L << 30);
            if (targets.size() < 2)
                throw PreconditionError("insufficient truncation: discriminant bound " + std::to_string(basis_->disc_bound()) +
                                        " leaves fewer than two targets for T(" + std::to_string(key) + ")");
            for (const BQF &Q : targets)
            {
                auto c = eigenform_coefficient(E, Q);
                if (c.v[0].is_zero())
                    continue;
                CoeffValue<NumberFieldElement> img = CoeffValue<NumberFieldElement>::zero(2);
                for (size_t i = 0; i < dim(); ++i)
                {
                    if (E.coordinates[i].is_zero())
                        continue;
                    auto v = image(i, p, delta, Q);
                    for (size_t t = 0; t < 3; ++t)
                        if (v.v[t] != 0)
                            img.v[t] += E.coordinates[i] * NumberFieldElement(v.v[t]);
                }
                NumberFieldElement l = img.v[0] / c.v[0];
                for (size_t t = 0; t < 3; ++t)
                    if (!(img.v[t] == l * c.v[t]))
                        throw ComputationError("eigenvalue: T(" + std::to_string(key) + ") image at " + Q.to_string() +
                                               " is not proportional to the eigenform coefficient");
                if (used.empty())
                    lambda = l;
                else if (!(l == lambda))
                    throw ComputationError("eigenvalue: inconsistent T(" + std::to_string(key) + ") eigenvalue at " +
                                           used[0].to_string() + " and " + Q.to_string());
                used.push_back(Q);
                if (used.size() == 2)
                    break;
            }
            if (used.empty())
                throw ComputationError("eigenvalue: every candidate index has zero X^2 coefficient");
            if (used.size() < 2)
                throw PreconditionError("insufficient truncation: no second index for the T(" + std::to_string(key) +
                                        ") consistency check");
            return lambda;
        }

    private:
        std::shared_ptr<const SatohBasis> basis_;
        std::mutex mu_;
        std::map<std::tuple<size_t, long, int, long, long, long>, CoeffValue<Rational>> images_;
    };

    inline RationalMatrix t2_matrix(std::shared_ptr<const SatohBasis> basis, unsigned seed = 0)
    {
        return HeckeEngine(std::move(basis)).t2_matrix(seed).T;
    }

    inline std::vector<EigenSystem> eigensystems(std::shared_ptr<const SatohBasis> basis)
    {
        return HeckeEngine(std::move(basis)).eigensystems();
    }

    /// lambda_p, lambda_{p^2} with the derived lambda_i(p^2), lambda_2(p^2) = p^(2k+j-6).
    struct LocalEigenData
    {
        long p = 2;
        int k = 0, j = 2;
        NumberFieldElement lambda_p, lambda_p2;
        NumberFieldElement l0, l1, l2;
    };

    inline LocalEigenData local_eigen_data(const NumberFieldElement &lambda_p, const NumberFieldElement &lambda_p2, long p, int k, int j)
    {
        if (2 * k + j < 6)
            throw PreconditionError("local_eigen_data: weight too small");
        LocalEigenData d{p, k, j, lambda_p, lambda_p2, {}, {}, {}};
        d.l2 = NumberFieldElement(ipow(p, static_cast<unsigned long>(2 * k + j - 6)));
        Integer c2 = Integer((p * p + 1) * (p + 1) - 1);
        d.l1 = (lambda_p * lambda_p - lambda_p2 - NumberFieldElement(c2) * d.l2) * NumberFieldElement(Rational(1, p));
        d.l0 = lambda_p2 - d.l1 - d.l2;
        return d;
    }

    inline LocalEigenData local_eigen_data(HeckeEngine &engine, EigenSystem &E, long p)
    {
        auto lp = engine.eigenvalue(E, p, 1);
        auto lp2 = engine.eigenvalue(E, p, 2);
        return local_eigen_data(lp, lp2, p, E.k, E.j);
    }

    /// mu_p = lambda_p, mu_{p^2} = 2 lambda_{p^2} - lambda_p^2 + 2q, mu_{p^3} = (3 lambda_{p^2} - 2 lambda_p^2 + 3(p+1)q) lambda_p, q = p^(2k+j-4).
    inline NumberFieldElement mu_siegel(const LocalEigenData &d, int k, int j, int delta)
    {
        NumberFieldElement q(ipow(d.p, static_cast<unsigned long>(2 * k + j - 4)));
        const auto &l = d.lambda_p, &l2 = d.lambda_p2;
        switch (delta)
        {
        case 1:
            return l;
        case 2:
            return NumberFieldElement(2) * l2 - l * l + NumberFieldElement(2) * q;
        case 3:
            return (NumberFieldElement(3) * l2 - NumberFieldElement(2) * l * l + NumberFieldElement(3 * (d.p + 1)) * q) * l;
        default:
            throw PreconditionError("mu_siegel: delta must be 1, 2 or 3");
        }
    }

    namespace detail
    {
        inline BigComplex complex_sqrt(const BigComplex &z)
        {
            BigFloat r = z.modulus();
            BigFloat re = sqrt(ldexp(r + z.re, -1));
            BigFloat im = sqrt(abs(ldexp(r - z.re, -1)));
            if (z.im < BigFloat(0L, r.precision()))
                im = -im;
            return {re, im};
        }

        /// Roots of x^2 - s x + t.
        inline std::array<BigComplex, 2> quadratic_roots(const BigComplex &s, const BigComplex &t)
        {
            BigComplex four(BigFloat(4L, s.re.precision()));
            BigComplex two(BigFloat(2L, s.re.precision()));
            BigComplex disc = s * s - four * t;
            BigComplex r = complex_sqrt(disc);
            return {(s + r) / two, (s - r) / two};
        }
    } // namespace detail

    /// Largest relative deviation ||z| - R| / R over all Satake roots z and real embeddings, R = p^((2k+j-3)/2).
    inline BigFloat rp_deviation(const LocalEigenData &d, int k, int j, mpfr_prec_t prec = 256)
    {
        NumberFieldElement R2(ipow(d.p, static_cast<unsigned long>(2 * k + j - 3)));
        NumberFieldElement b = d.lambda_p * d.lambda_p - d.lambda_p2 - NumberFieldElement(ipow(d.p, static_cast<unsigned long>(2 * k + j - 4)));
        NumberFieldElement c0 = b - NumberFieldElement(2) * R2;
        std::vector<BigFloat> embeddings;
        if (d.lambda_p.has_field() && d.lambda_p.field_degree() > 1)
            embeddings = real_roots(d.lambda_p.field_data()->modulus, prec);
        else if (d.lambda_p2.has_field() && d.lambda_p2.field_degree() > 1)
            embeddings = real_roots(d.lambda_p2.field_data()->modulus, prec);
        else
            embeddings.push_back(BigFloat(0L, prec));
        BigFloat R = sqrt(BigFloat(R2.embed(BigFloat(0L, prec))));
        BigFloat worst(0L, prec);
        for (const BigFloat &x : embeddings)
        {
            BigComplex s(d.lambda_p.embed(x)), t(c0.embed(x)), r2(R2.embed(x));
            for (const BigComplex &y : detail::quadratic_roots(s, t))
                for (const BigComplex &z : detail::quadratic_roots(y, r2))
                {
                    BigFloat dev = abs(z.modulus() - R) / R;
                    if (dev > worst)
                        worst = dev;
                }
        }
        return worst;
    }

    /// True iff every Satake root lies within 2^-tolerance_bits (relative) of the circle of radius p^((2k+j-3)/2).
    inline bool rp_check(const LocalEigenData &d, int k, int j, long tolerance_bits)
    {
        mpfr_prec_t prec = std::max<mpfr_prec_t>(256, 4 * tolerance_bits + 64);
        return rp_deviation(d, k, j, prec) < BigFloat::pow2(-tolerance_bits, prec);
    }
} // namespace smf
