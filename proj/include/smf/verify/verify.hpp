#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smf/eform/elliptic.hpp"
#include "smf/hecke/eigen.hpp"
#include "smf/verify/cube.hpp"

namespace smf
{
    enum class OrdinaryStatus
    {
        CheckedTrue,
        CheckedFalse,
        Unchecked
    };

    inline std::string to_string(OrdinaryStatus s)
    {
        switch (s)
        {
        case OrdinaryStatus::CheckedTrue:
            return "checked-true";
        case OrdinaryStatus::CheckedFalse:
            return "checked-false";
        default:
            return "unchecked";
        }
    }

    /// p^delta with delta in 1..3.
    struct PrimePower
    {
        long p = 2;
        int delta = 1;
        long value() const { return ipow(p, static_cast<unsigned long>(delta)).get_si(); }
    };

    inline PrimePower checked_prime_power(long q)
    {
        auto [p, e] = q >= 2 ? prime_power(q) : std::pair<long, int>{0, 0};
        if (p == 0)
            throw PreconditionError("not a prime power: " + std::to_string(q));
        if (e > 3)
            throw PreconditionError("exponent above 3 in " + std::to_string(q));
        return {p, e};
    }

    /// A conjectured congruence between a degree-one form of weight r and a vector-valued form of weight (k, j).
    struct CongruenceCase
    {
        CongruenceKind kind = CongruenceKind::Harder;
        int r = 0, t = 0, k = 0, j = 0;
        Integer ell;
        int s = 1;
        std::vector<long> p_delta_list;
        OrdinaryStatus ordinary = OrdinaryStatus::Unchecked;

        /// harder: k = r - t + 2, j = 2t - r - 2; sym2: k = t - r + 2, j = 2r - t - 2.
        bool weights_consistent() const
        {
            if (kind == CongruenceKind::Harder)
                return k == r - t + 2 && j == 2 * t - r - 2;
            return k == t - r + 2 && j == 2 * r - t - 2;
        }
    };

    /// Harder case at t = r/2 + 2, so (k, j) = (r/2, 2).
    inline CongruenceCase harder_case(int r, const Integer &ell, std::vector<long> p_delta_list,
                                      OrdinaryStatus ordinary = OrdinaryStatus::Unchecked)
    {
        if (r % 4 != 0 || r < 8)
            throw PreconditionError("harder_case: r must be a multiple of 4");
        if (!is_prime(ell))
            throw PreconditionError("harder_case: ell must be prime");
        CongruenceCase c{CongruenceKind::Harder, r, r / 2 + 2, 0, 0, ell, 1, std::move(p_delta_list), ordinary};
        c.k = c.r - c.t + 2;
        c.j = 2 * c.t - c.r - 2;
        return c;
    }

    /// Symmetric-square case at t = 2r - 4, so (k, j) = (r - 2, 2).
    inline CongruenceCase sym2_case(int r, const Integer &ell, std::vector<long> p_delta_list,
                                    OrdinaryStatus ordinary = OrdinaryStatus::Unchecked)
    {
        if (r % 2 != 0 || r < 12)
            throw PreconditionError("sym2_case: r must be even and at least 12");
        if (!is_prime(ell))
            throw PreconditionError("sym2_case: ell must be prime");
        CongruenceCase c{CongruenceKind::Sym2, r, 2 * r - 4, 0, 0, ell, 1, std::move(p_delta_list), ordinary};
        c.k = c.t - c.r + 2;
        c.j = 2 * c.r - c.t - 2;
        return c;
    }

    /// One congruence at a fixed p^delta for one pair (f, F).
    struct PDeltaOutcome
    {
        long q = 0, p = 0;
        int delta = 1;
        NumberFieldElement mu_f, mu_F, rhs;
        RationalPolynomial m, M;              ///< minimal polynomials of rhs and mu_F
        std::set<Integer> roots_m, roots_M;   ///< their roots mod ell
        std::set<Integer> residues_rhs, residues_F; ///< images over all field roots mod ell
        bool per_pdelta_match = false;        ///< some root choice works at this p^delta alone
        bool global_match = false;            ///< holds under the case's chosen root pair
        Integer residue_rhs, residue_F;       ///< under the chosen root pair, or the first available pair on failure
        bool residues_available = false;
        bool via_cube_reduction = false;
        std::optional<CubeCertificate> certificate;
    };

    /// Outcome for one degree-one orbit f against one eigenform orbit F.
    struct CandidateOutcome
    {
        size_t orbit_f = 0, system_F = 0;
        RationalPolynomial field_f, field_F;
        std::set<Integer> field_roots_f, field_roots_F;
        std::optional<std::pair<Integer, Integer>> root_pair;
        bool global_pass = false;
        bool per_pdelta_pass = false;
        std::vector<PDeltaOutcome> rows;
    };

    struct VerificationReport
    {
        CongruenceCase congruence;
        long cusp_dimension = 0;
        std::vector<CandidateOutcome> candidates;
        std::optional<size_t> matched; ///< candidate index that passed under the global policy
        bool vacuous = false;
        bool pass = false;            ///< global root-pair policy
        bool per_pdelta_pass = false; ///< the weaker per-p^delta policy
        std::vector<std::string> warnings;

        std::string verdict() const
        {
            if (vacuous)
                return "PASS (vacuous)";
            return pass ? "PASS" : "FAIL";
        }
    };

    /// Shared state for verification: a truncated expansion ring plus per-weight engines and eigensystems.
    class VerificationWorkspace
    {
    public:
        explicit VerificationWorkspace(long D = 3000, long singular = 750) : ring_(std::make_shared<SiegelRing>(D, singular)) {}
        explicit VerificationWorkspace(std::shared_ptr<SiegelRing> ring) : ring_(std::move(ring))
        {
            if (!ring_)
                throw PreconditionError("VerificationWorkspace: null ring");
        }

        const std::shared_ptr<SiegelRing> &ring() const { return ring_; }

        HeckeEngine &engine(int k)
        {
            auto it = engines_.find(k);
            if (it == engines_.end())
            {
                auto basis = std::make_shared<SatohBasis>(k, ring_);
                it = engines_.emplace(k, std::make_unique<HeckeEngine>(basis)).first;
            }
            return *it->second;
        }

        std::vector<EigenSystem> &eigensystems(int k)
        {
            auto it = systems_.find(k);
            if (it == systems_.end())
                it = systems_.emplace(k, engine(k).eigensystems()).first;
            return it->second;
        }

        /// Degree-one eigenforms of weight r with at least n_terms coefficients.
        const std::vector<EllipticEigenform> &elliptic(int r, size_t n_terms)
        {
            auto it = elliptic_.find(r);
            if (it == elliptic_.end() || it->second.empty() || it->second.front().n_terms() < n_terms)
                it = elliptic_.insert_or_assign(r, elliptic_eigenforms(r, std::max<size_t>(n_terms, 8))).first;
            return it->second;
        }

    private:
        std::shared_ptr<SiegelRing> ring_;
        std::map<int, std::unique_ptr<HeckeEngine>> engines_;
        std::map<int, std::vector<EigenSystem>> systems_;
        std::map<int, std::vector<EllipticEigenform>> elliptic_;
    };

    namespace detail
    {
        inline std::optional<Integer> try_reduce(const NumberFieldElement &x, const Integer &ell, const Integer &root)
        {
            try
            {
                return x.reduce_mod(ell, root);
            }
            catch (const PreconditionError &)
            {
                return std::nullopt;
            }
        }

        inline std::set<Integer> try_roots(const RationalPolynomial &p, const Integer &ell)
        {
            try
            {
                return roots_mod_ell(p, ell);
            }
            catch (const PreconditionError &)
            {
                return {};
            }
        }

        inline std::set<Integer> residues(const NumberFieldElement &x, const Integer &ell, const std::set<Integer> &roots)
        {
            std::set<Integer> out;
            for (const Integer &rho : roots)
                if (auto v = try_reduce(x, ell, rho))
                    out.insert(*v);
            return out;
        }

    } // namespace detail

    /// First pair (rho_f, rho_F) of roots mod ell under which lhs[i] = rhs[i] mod ell for every i.
    inline std::optional<std::pair<Integer, Integer>> find_root_pair(const std::vector<NumberFieldElement> &lhs,
                                                                     const std::vector<NumberFieldElement> &rhs,
                                                                     const std::set<Integer> &roots_f, const std::set<Integer> &roots_F,
                                                                     const Integer &ell)
    {
        if (lhs.size() != rhs.size())
            throw PreconditionError("find_root_pair: length mismatch");
        for (const Integer &rf : roots_f)
            for (const Integer &rF : roots_F)
            {
                bool all = true;
                for (size_t i = 0; i < lhs.size() && all; ++i)
                {
                    auto a = detail::try_reduce(lhs[i], ell, rf), b = detail::try_reduce(rhs[i], ell, rF);
                    all = a && b && *a == *b;
                }
                if (all)
                    return std::pair{rf, rF};
            }
        return std::nullopt;
    }

    /// Per-index policy: every i admits its own root pair.
    inline bool per_index_match(const std::vector<NumberFieldElement> &lhs, const std::vector<NumberFieldElement> &rhs,
                                const std::set<Integer> &roots_f, const std::set<Integer> &roots_F, const Integer &ell)
    {
        for (size_t i = 0; i < lhs.size(); ++i)
            if (!find_root_pair({lhs[i]}, {rhs[i]}, roots_f, roots_F, ell))
                return false;
        return true;
    }

    namespace detail
    {
        inline NumberFieldElement right_hand_side(const CongruenceCase &c, const NumberFieldElement &mu_f, long p, int delta)
        {
            auto pw = [p](long e)
            { return NumberFieldElement(Integer(ipow(p, static_cast<unsigned long>(e)))); };
            if (c.kind == CongruenceKind::Harder)
                return mu_f + pw(delta * (c.k + c.j - 1)) + pw(delta * (c.k - 2));
            return mu_f * (pw(delta * (c.k - 2)) + NumberFieldElement(1));
        }

        inline CandidateOutcome evaluate_candidate(HeckeEngine &engine, const CongruenceCase &c, const EllipticEigenform &f,
                                                   EigenSystem &F, size_t orbit_f, size_t system_F, std::vector<std::string> &warnings)
        {
            CandidateOutcome out;
            out.orbit_f = orbit_f;
            out.system_F = system_F;
            out.field_f = f.field.modulus();
            out.field_F = F.field.modulus();
            out.field_roots_f = try_roots(out.field_f, c.ell);
            out.field_roots_F = try_roots(out.field_F, c.ell);
            for (long q : c.p_delta_list)
            {
                PrimePower pp = checked_prime_power(q);
                PDeltaOutcome row;
                row.q = q;
                row.p = pp.p;
                row.delta = pp.delta;
                if (pp.delta == 1)
                {
                    row.mu_f = mu_elliptic(f, pp.p, 1);
                    row.mu_F = engine.eigenvalue(F, pp.p, 1);
                }
                else if (pp.delta == 2)
                {
                    row.mu_f = mu_elliptic(f, pp.p, 2);
                    row.mu_F = mu_siegel(local_eigen_data(engine, F, pp.p), c.k, c.j, 2);
                }
                else
                {
                    auto d = local_eigen_data(engine, F, pp.p);
                    auto cube = cube_reduction(mu_elliptic(f, pp.p, 1), mu_elliptic(f, pp.p, 2), mu_siegel(d, c.k, c.j, 1),
                                               mu_siegel(d, c.k, c.j, 2), pp.p, c.r, c.k, c.j, c.kind);
                    if (!(cube.mu3_f == mu_elliptic(f, pp.p, 3)) || !(cube.mu3_F == mu_siegel(d, c.k, c.j, 3)))
                        throw ComputationError("verify: cube reduction disagrees with the direct delta = 3 values at p = " +
                                               std::to_string(pp.p));
                    row.mu_f = cube.mu3_f;
                    row.mu_F = cube.mu3_F;
                    row.via_cube_reduction = true;
                    row.certificate = cube.certificate;
                    if (!cube.certificate.valid)
                        warnings.push_back("cube certificate invalid at p^delta = " + std::to_string(q));
                }
                row.rhs = right_hand_side(c, row.mu_f, pp.p, pp.delta);
                row.m = row.rhs.min_poly();
                row.M = row.mu_F.min_poly();
                row.roots_m = try_roots(row.m, c.ell);
                row.roots_M = try_roots(row.M, c.ell);
                row.residues_rhs = residues(row.rhs, c.ell, out.field_roots_f);
                row.residues_F = residues(row.mu_F, c.ell, out.field_roots_F);
                row.per_pdelta_match = find_root_pair({row.rhs}, {row.mu_F}, out.field_roots_f, out.field_roots_F, c.ell).has_value();
                out.rows.push_back(std::move(row));
            }
            std::vector<NumberFieldElement> lhs, rhs;
            for (const auto &row : out.rows)
            {
                lhs.push_back(row.rhs);
                rhs.push_back(row.mu_F);
            }
            out.per_pdelta_pass = per_index_match(lhs, rhs, out.field_roots_f, out.field_roots_F, c.ell);
            out.root_pair = find_root_pair(lhs, rhs, out.field_roots_f, out.field_roots_F, c.ell);
            std::optional<std::pair<Integer, Integer>> shown = out.root_pair;
            if (!shown && !out.field_roots_f.empty() && !out.field_roots_F.empty())
                shown = std::pair{*out.field_roots_f.begin(), *out.field_roots_F.begin()};
            out.global_pass = out.root_pair.has_value();
            for (auto &row : out.rows)
            {
                if (!shown)
                    continue;
                // Re-verify each congruence under the chosen embedding pair.
                auto a = try_reduce(row.rhs, c.ell, shown->first), b = try_reduce(row.mu_F, c.ell, shown->second);
                row.residues_available = a && b;
                if (a)
                    row.residue_rhs = *a;
                if (b)
                    row.residue_F = *b;
                row.global_match = out.root_pair && row.residues_available && *a == *b;
                if (out.root_pair && !row.global_match)
                    throw ComputationError("verify: chosen root pair fails on re-verification");
            }
            return out;
        }
    } // namespace detail

    /**
     * Checks a congruence case against every cuspidal eigenform orbit of weight (k, j) and every
     * degree-one eigenform orbit of weight r. The verdict follows the global policy: one fixed pair
     * of roots mod ell (one embedding per side) must satisfy all listed congruences simultaneously.
     */
    inline VerificationReport verify_case(VerificationWorkspace &ws, const CongruenceCase &c)
    {
        if (!c.weights_consistent())
            throw PreconditionError("verify_case: weights (k, j) inconsistent with (r, t)");
        if (c.j != 2)
            throw PreconditionError("verify_case: only j = 2 is supported");
        if (c.ell == 2)
            throw PreconditionError("verify_case: ell = 2 is excluded by the cube reduction");
        VerificationReport rep;
        rep.congruence = c;
        if (c.s != 1)
            rep.warnings.push_back("exponent s > 1 requested; only s = 1 is verified");
        auto &systems = ws.eigensystems(c.k);
        for (const auto &E : systems)
            if (E.cuspidal)
                rep.cusp_dimension += E.field.degree();
        if (c.p_delta_list.empty())
        {
            rep.vacuous = true;
            rep.pass = rep.per_pdelta_pass = true;
            rep.warnings.push_back("empty p^delta list: vacuous pass");
            return rep;
        }
        long pmax = 2;
        for (long q : c.p_delta_list)
            pmax = std::max(pmax, checked_prime_power(q).p);
        const auto &forms = ws.elliptic(c.r, static_cast<size_t>(pmax) + 1);
        HeckeEngine &engine = ws.engine(c.k);
        for (size_t o = 0; o < forms.size(); ++o)
            for (size_t i = 0; i < systems.size(); ++i)
            {
                if (!systems[i].cuspidal)
                    continue;
                rep.candidates.push_back(detail::evaluate_candidate(engine, c, forms[o], systems[i], o, i, rep.warnings));
                const auto &cand = rep.candidates.back();
                if (cand.global_pass && !rep.matched)
                    rep.matched = rep.candidates.size() - 1;
                rep.per_pdelta_pass = rep.per_pdelta_pass || cand.per_pdelta_pass;
            }
        rep.pass = rep.matched.has_value();
        if (rep.pass != rep.per_pdelta_pass)
            rep.warnings.push_back(std::string("policies differ: global ") + (rep.pass ? "PASS" : "FAIL") + ", per-p^delta " +
                                   (rep.per_pdelta_pass ? "PASS" : "FAIL"));
        return rep;
    }

    inline VerificationReport verify_harder(VerificationWorkspace &ws, int r, const std::vector<long> &p_delta_list, const Integer &ell,
                                            OrdinaryStatus ordinary = OrdinaryStatus::Unchecked)
    {
        return verify_case(ws, harder_case(r, ell, p_delta_list, ordinary));
    }

    /// Pass without evidence: no prime of the requested kind exists for this weight.
    inline VerificationReport vacuous_report(CongruenceKind kind, int r, const std::vector<long> &p_delta_list, const std::string &reason)
    {
        VerificationReport rep;
        int t = kind == CongruenceKind::Harder ? r / 2 + 2 : 2 * r - 4;
        int k = kind == CongruenceKind::Harder ? r / 2 : r - 2;
        rep.congruence = CongruenceCase{kind, r, t, k, 2, Integer(0), 1, p_delta_list, OrdinaryStatus::Unchecked};
        rep.vacuous = rep.pass = rep.per_pdelta_pass = true;
        rep.warnings.push_back(reason + ": vacuous pass");
        return rep;
    }

    /// One report per externally supplied prime; no primes gives a single vacuous report.
    inline std::vector<VerificationReport> verify_sym2(VerificationWorkspace &ws, int r, const std::vector<long> &p_delta_list,
                                                       const std::vector<Integer> &ells)
    {
        if (ells.empty())
            return {vacuous_report(CongruenceKind::Sym2, r, p_delta_list, "no odd primes supplied for this weight")};
        std::vector<VerificationReport> out;
        for (const Integer &ell : ells)
            out.push_back(verify_case(ws, sym2_case(r, ell, p_delta_list)));
        return out;
    }

    /// Ordinarity annotation from the modular test; unchecked when out of reach.
    inline OrdinaryStatus ordinary_status(int r, const Integer &ell)
    {
        try
        {
            return is_ordinary(r, ell) ? OrdinaryStatus::CheckedTrue : OrdinaryStatus::CheckedFalse;
        }
        catch (const PreconditionError &)
        {
        }
        catch (const ComputationError &)
        {
        }
        return OrdinaryStatus::Unchecked;
    }
} // namespace smf
