#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "smf/siegel/ring.hpp"

namespace smf
{
    /// Basis element multiplier * [A, B] of weight (multiplier weight + kA + kB, 2).
    struct SatohElement
    {
        Monomial multiplier;
        Igusa A = Igusa::E4, B = Igusa::E6;

        int weight() const { return multiplier.weight() + igusa_weight(A) + igusa_weight(B); }

        /// True when the bracket involves a cusp generator, which forces Phi = 0.
        bool bracket_is_cuspidal() const { return A == Igusa::X10 || A == Igusa::X12 || B == Igusa::X10 || B == Igusa::X12; }

        std::string label() const
        {
            std::string br = "[" + igusa_name(A) + "," + igusa_name(B) + "]";
            return multiplier.is_one() ? br : multiplier.to_string() + "*" + br;
        }
    };

    /**
     * Elements of the decomposition
     * M_{k,2} = [E4,E6] M_{k-10} + [E4,X10] M_{k-14} + [E4,X12] M_{k-16}
     *         + [E6,X10] C[E6,X10,X12]_{k-16} + [E6,X12] C[E6,X10,X12]_{k-18}
     *         + [X10,X12] C[X10,X12]_{k-22}.
     */
    inline std::vector<SatohElement> satoh_elements(int k)
    {
        if (k % 2 != 0 || k < 10)
            throw PreconditionError("satoh_elements: weight must be even and at least 10");
        using enum Igusa;
        const std::vector<Igusa> all{E4, E6, X10, X12}, no_e4{E6, X10, X12}, cusp{X10, X12};
        struct Summand
        {
            Igusa A, B;
            const std::vector<Igusa> *gens;
        };
        const Summand summands[] = {{E4, E6, &all}, {E4, X10, &all}, {E4, X12, &all}, {E6, X10, &no_e4}, {E6, X12, &no_e4}, {X10, X12, &cusp}};
        std::vector<SatohElement> out;
        for (const auto &s : summands)
            for (const Monomial &m : monomials_of_weight(k - igusa_weight(s.A) - igusa_weight(s.B), *s.gens))
                out.push_back({m, s.A, s.B});
        return out;
    }

    /**
     * Basis of M_{k,2} given by the Satoh decomposition, evaluated lazily through
     * a shared SiegelRing. Coefficient values are memoized on reduced indices.
     */
    class SatohBasis
    {
    public:
        SatohBasis(int k, std::shared_ptr<SiegelRing> ring) : k_(k), ring_(std::move(ring)), elements_(satoh_elements(k))
        {
            if (!ring_)
                throw PreconditionError("SatohBasis: null ring");
            memo_.resize(elements_.size());
        }

        int k() const { return k_; }
        int j() const { return 2; }
        size_t size() const { return elements_.size(); }
        const SatohElement &element(size_t i) const { return elements_.at(i); }
        const std::vector<SatohElement> &elements() const { return elements_; }
        std::string label(size_t i) const { return element(i).label(); }
        const std::shared_ptr<SiegelRing> &ring() const { return ring_; }
        long disc_bound() const { return ring_->disc_bound(); }
        long singular_bound() const { return ring_->singular_bound(); }

        /// Coefficient of the i-th element at any semidefinite index.
        CoeffValue<Rational> coefficient(size_t i, const BQF &f) const
        {
            const SatohElement &e = element(i);
            ring_->require_in_bounds(f);
            auto [r, U] = reduce_bqf(f);
            CoeffValue<Rational> value;
            {
                std::lock_guard<std::mutex> lock(mu_);
                auto it = memo_[i].find(r);
                if (it != memo_[i].end())
                    value = it->second;
            }
            if (value.j != 2)
            {
                value = ring_->element(e.multiplier, e.A, e.B, r);
                std::lock_guard<std::mutex> lock(mu_);
                memo_[i].emplace(r, value);
            }
            return transform_coefficient(value, U, k_);
        }

        /// Full table of the i-th element up to the given bounds (at most the ring's).
        SiegelExpansion<Rational> materialize(size_t i, long D, long singular) const
        {
            if (D > disc_bound() || singular > singular_bound())
                throw PreconditionError("SatohBasis::materialize: bounds exceed the ring's truncation");
            SiegelExpansion<Rational> out(k_, 2, D, singular);
            for (const BQF &h : out.index_set())
                out.set(h, coefficient(i, h));
            return out;
        }

    private:
        int k_;
        std::shared_ptr<SiegelRing> ring_;
        std::vector<SatohElement> elements_;
        mutable std::mutex mu_;
        mutable std::vector<std::unordered_map<BQF, CoeffValue<Rational>, BQFHash>> memo_;
    };

    inline SatohBasis satoh_basis(int k, long D, long singular)
    {
        return SatohBasis(k, std::make_shared<SiegelRing>(D, singular));
    }
} // namespace smf
