#pragma once

#include <map>
#include <string>
#include <vector>

#include "smf/siegel/satoh.hpp"

namespace smf
{
    /// Representatives of SL2(Z) / Gamma0(p^beta).
    struct CosetReps
    {
        long p = 2;
        int beta = 0;
        std::vector<IMat2> reps;
    };

    /// True iff U1 Gamma0(N) = U2 Gamma0(N), i.e. U1^{-1} U2 is lower-left divisible by N.
    inline bool gamma0_equivalent(const IMat2 &U1, const IMat2 &U2, long N)
    {
        IMat2 W = U1.unimodular_inverse() * U2;
        return mod_floor(W.m10, N) == 0;
    }

    /**
     * {(1 0; m 1) : m mod p^beta} together with {(p t, -1; 1, 0) : t mod p^(beta-1)},
     * checked pairwise inequivalent.
     */
    inline CosetReps coset_reps(long p, int beta)
    {
        if (!is_prime(p))
            throw PreconditionError("coset_reps: p = " + std::to_string(p) + " is not prime");
        if (beta < 0 || beta > 3)
            throw PreconditionError("coset_reps: beta must lie in 0..3");
        CosetReps out{p, beta, {}};
        if (beta == 0)
        {
            out.reps.push_back(IMat2::identity());
            return out;
        }
        long N = ipow(p, static_cast<unsigned long>(beta)).get_si();
        for (long m = 0; m < N; ++m)
            out.reps.push_back({1, 0, m, 1});
        for (long t = 0; t < N / p; ++t)
            out.reps.push_back({p * t, -1, 1, 0});
        for (size_t i = 0; i < out.reps.size(); ++i)
        {
            if (out.reps[i].det() != 1)
                throw ComputationError("coset_reps: representative of determinant != 1");
            for (size_t k = i + 1; k < out.reps.size(); ++k)
                if (gamma0_equivalent(out.reps[i], out.reps[k], N))
                    throw ComputationError("coset_reps: equivalent representatives");
        }
        return out;
    }

    /// One summand of the Hecke formula: factor * act_on_poly(action, C(index)).
    struct HeckeTerm
    {
        BQF index;
        IMat2 action;
        Integer factor;
    };

    /**
     * Terms of C'(T) for T(p^delta) on weight (k, j):
     * sum over alpha + beta + gamma = delta and U in R(p^beta) with
     * a_U = 0 mod p^(beta+gamma), b_U = c_U = 0 mod p^gamma of
     * p^(beta(k-2) + gamma(2k+j-3)) rho(U^{-t} diag(p^beta, 1)) C(p^alpha [a_U/p^(beta+gamma), b_U/p^gamma, c_U p^(beta-gamma)]),
     * where [a_U, b_U, c_U] = transform(T, U).
     */
    inline std::vector<HeckeTerm> hecke_terms(const BQF &T, long p, int delta, int k, int j)
    {
        if (delta < 1 || delta > 3)
            throw PreconditionError("hecke_terms: delta must be 1, 2 or 3");
        if (!T.is_semidefinite())
            throw PreconditionError("hecke_terms: target " + T.to_string() + " is not semidefinite");
        if (k < 2)
            throw PreconditionError("hecke_terms: weight below 2");
        std::vector<HeckeTerm> out;
        for (int alpha = 0; alpha <= delta; ++alpha)
            for (int beta = 0; alpha + beta <= delta; ++beta)
            {
                int gamma = delta - alpha - beta;
                long pa = ipow(p, static_cast<unsigned long>(alpha)).get_si();
                long pb = ipow(p, static_cast<unsigned long>(beta)).get_si();
                long pg = ipow(p, static_cast<unsigned long>(gamma)).get_si();
                Integer factor = ipow(p, static_cast<unsigned long>(beta * (k - 2) + gamma * (2 * k + j - 3)));
                for (const IMat2 &U : coset_reps(p, beta).reps)
                {
                    BQF f = transform(T, U);
                    if (f.a % (pb * pg) != 0 || f.b % pg != 0 || f.c % pg != 0)
                        continue;
                    BQF idx{pa * (f.a / (pb * pg)), pa * (f.b / pg), pa * (f.c * pb / pg)};
                    IMat2 M = U.transpose().unimodular_inverse() * IMat2{pb, 0, 0, 1};
                    out.push_back({idx, M, factor});
                }
            }
        return out;
    }

    /// Largest discriminant demanded by T(p^delta) at target T.
    inline long hecke_disc_requirement(const BQF &T, long p, int delta)
    {
        return ipow(p, static_cast<unsigned long>(2 * delta)).get_si() * T.disc();
    }

    /// Evaluates the Hecke formula with an arbitrary coefficient source coef(BQF) -> CoeffValue<S>.
    template <class S, class Coef>
    CoeffValue<S> apply_hecke_terms(const std::vector<HeckeTerm> &terms, int j, Coef &&coef)
    {
        CoeffValue<S> acc = CoeffValue<S>::zero(j);
        for (const auto &t : terms)
        {
            CoeffValue<S> v = coef(t.index);
            if (v.is_zero())
                continue;
            acc += S(t.factor) * act_on_poly(t.action, v);
        }
        return acc;
    }

    /// C' at each target for T(p^delta) applied to a stored expansion; all demanded indices are checked first.
    template <class S>
    std::map<BQF, CoeffValue<S>, CanonicalKeyLess> hecke_image(const SiegelExpansion<S> &F, long p, int delta,
                                                               const std::vector<BQF> &targets)
    {
        std::vector<std::vector<HeckeTerm>> all;
        for (const BQF &T : targets)
        {
            auto terms = hecke_terms(T, p, delta, F.k(), F.j());
            for (const auto &t : terms)
            {
                BQF r = reduce_bqf(t.index).reduced;
                if (!F.in_bounds(r))
                    throw PreconditionError("insufficient truncation: T(" + std::to_string(p) + "^" + std::to_string(delta) +
                                            ") at " + T.to_string() + " needs index " + t.index.to_string() +
                                            " of discriminant " + std::to_string(r.disc()));
            }
            all.push_back(std::move(terms));
        }
        std::map<BQF, CoeffValue<S>, CanonicalKeyLess> out;
        for (size_t i = 0; i < targets.size(); ++i)
            out[targets[i]] = apply_hecke_terms<S>(all[i], F.j(), [&](const BQF &f)
                                                   { return coefficient_at(F, f); });
        return out;
    }

    /// C' of the i-th basis element at target T under T(p^delta).
    inline CoeffValue<Rational> hecke_image(const SatohBasis &basis, size_t i, long p, int delta, const BQF &T)
    {
        auto terms = hecke_terms(T, p, delta, basis.k(), basis.j());
        for (const auto &t : terms)
            basis.ring()->require_in_bounds(t.index);
        return apply_hecke_terms<Rational>(terms, basis.j(), [&](const BQF &f)
                                           { return basis.coefficient(i, f); });
    }
} // namespace smf
