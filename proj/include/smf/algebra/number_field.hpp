#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "smf/algebra/bigfloat.hpp"
#include "smf/algebra/factor.hpp"
#include "smf/algebra/matrix.hpp"
#include "smf/algebra/modpoly.hpp"
#include "smf/algebra/polynomial.hpp"
#include "smf/algebra/roots.hpp"

namespace smf
{
    class NumberFieldElement;

    /// Q[x]/(modulus) for a monic irreducible modulus. Cheap to copy (shared immutable data).
    class NumberField
    {
    public:
        struct Data
        {
            RationalPolynomial modulus;
            std::string variable;
        };

        /// Verifies irreducibility unless `trusted` is set.
        explicit NumberField(const RationalPolynomial &modulus, std::string variable = "a", bool trusted = false)
        {
            if (modulus.degree() < 1)
                throw PreconditionError("NumberField: modulus must have positive degree");
            auto m = modulus.monic();
            if (!trusted && !is_irreducible(m))
                throw PreconditionError("NumberField: modulus is reducible: " + m.to_string());
            data_ = std::make_shared<const Data>(Data{m, std::move(variable)});
        }

        static NumberField rationals() { return NumberField(RationalPolynomial{Rational(0), Rational(1)}, "a", true); }

        const RationalPolynomial &modulus() const { return data_->modulus; }
        long degree() const { return data_->modulus.degree(); }
        const std::string &variable() const { return data_->variable; }
        const std::shared_ptr<const Data> &data() const { return data_; }

        NumberFieldElement generator() const;
        NumberFieldElement element(const RationalPolynomial &coords) const;
        NumberFieldElement element(const Rational &value) const;

        /// Real roots of the modulus in increasing order: the real embeddings.
        std::vector<BigFloat> real_embeddings(mpfr_prec_t prec) const { return real_roots(modulus(), prec); }

        friend bool operator==(const NumberField &a, const NumberField &b)
        {
            return a.data_ == b.data_ || a.modulus() == b.modulus();
        }

    private:
        std::shared_ptr<const Data> data_;
    };

    /**
     * Element of a number field, stored as a polynomial in the generator of
     * degree below the field degree. A null field pointer denotes a rational
     * constant that combines with elements of any field.
     */
    class NumberFieldElement
    {
    public:
        NumberFieldElement() = default;
        NumberFieldElement(int v) : c_(Rational(v)) {}
        NumberFieldElement(long v) : c_(Rational(v)) {}
        NumberFieldElement(const Integer &v) : c_(Rational(v)) {}
        NumberFieldElement(const Rational &v) : c_(v) {}
        NumberFieldElement(std::shared_ptr<const NumberField::Data> f, RationalPolynomial c)
            : f_(std::move(f)), c_(std::move(c))
        {
            if (f_ && c_.degree() >= f_->modulus.degree())
                c_ = c_ % f_->modulus;
        }

        const RationalPolynomial &coordinates() const { return c_; }
        const std::shared_ptr<const NumberField::Data> &field_data() const { return f_; }
        bool has_field() const { return f_ != nullptr; }
        long field_degree() const { return f_ ? f_->modulus.degree() : 1; }

        bool is_zero() const { return c_.is_zero(); }
        bool is_rational() const { return c_.degree() <= 0; }
        Rational rational_value() const
        {
            if (!is_rational())
                throw PreconditionError("element is not rational");
            return c_[0];
        }

        friend NumberFieldElement operator+(const NumberFieldElement &a, const NumberFieldElement &b)
        {
            return {common(a, b), a.c_ + b.c_};
        }
        friend NumberFieldElement operator-(const NumberFieldElement &a, const NumberFieldElement &b)
        {
            return {common(a, b), a.c_ - b.c_};
        }
        friend NumberFieldElement operator-(const NumberFieldElement &a) { return {a.f_, -a.c_}; }
        friend NumberFieldElement operator*(const NumberFieldElement &a, const NumberFieldElement &b)
        {
            auto f = common(a, b);
            if (a.is_rational())
                return {f, b.c_ * a.c_[0]};
            if (b.is_rational())
                return {f, a.c_ * b.c_[0]};
            return {f, (a.c_ * b.c_) % f->modulus};
        }
        friend NumberFieldElement operator/(const NumberFieldElement &a, const NumberFieldElement &b)
        {
            return a * b.inverse();
        }
        NumberFieldElement &operator+=(const NumberFieldElement &b) { return *this = *this + b; }
        NumberFieldElement &operator-=(const NumberFieldElement &b) { return *this = *this - b; }
        NumberFieldElement &operator*=(const NumberFieldElement &b) { return *this = *this * b; }
        NumberFieldElement &operator/=(const NumberFieldElement &b) { return *this = *this / b; }

        friend bool operator==(const NumberFieldElement &a, const NumberFieldElement &b)
        {
            common(a, b);
            return a.c_ == b.c_;
        }
        friend bool operator!=(const NumberFieldElement &a, const NumberFieldElement &b) { return !(a == b); }
        friend bool operator==(const NumberFieldElement &a, int v) { return a == NumberFieldElement(v); }

        NumberFieldElement inverse() const
        {
            if (is_zero())
                throw std::domain_error("NumberFieldElement: division by zero");
            if (is_rational())
                return {f_, RationalPolynomial(Rational(1) / c_[0])};
            auto [g, s, t] = poly_xgcd(c_, f_->modulus);
            if (g.degree() != 0)
                throw ComputationError("NumberFieldElement: non-invertible element (modulus reducible?)");
            return {f_, s};
        }

        NumberFieldElement pow(unsigned long e) const
        {
            NumberFieldElement r = NumberFieldElement(f_, RationalPolynomial(Rational(1)));
            NumberFieldElement b = *this;
            while (e)
            {
                if (e & 1)
                    r *= b;
                b *= b;
                e >>= 1;
            }
            return r;
        }

        /// Matrix of multiplication by this element on the power basis (column i = e * a^i).
        RationalMatrix multiplication_matrix() const
        {
            long d = field_degree();
            RationalMatrix m(static_cast<size_t>(d), static_cast<size_t>(d));
            for (long i = 0; i < d; ++i)
            {
                RationalPolynomial col = f_ ? (c_ * RationalPolynomial::monomial(Rational(1), static_cast<size_t>(i))) % f_->modulus : c_;
                for (long r = 0; r < d; ++r)
                    m(static_cast<size_t>(r), static_cast<size_t>(i)) = col[static_cast<size_t>(r)];
            }
            return m;
        }

        Rational norm() const { return multiplication_matrix().det(); }

        Rational trace() const
        {
            auto m = multiplication_matrix();
            Rational t = 0;
            for (size_t i = 0; i < m.rows(); ++i)
                t += m(i, i);
            return t;
        }

        /// Minimal polynomial over Q: square-free part of the characteristic polynomial of multiplication.
        RationalPolynomial min_poly() const
        {
            if (is_rational())
                return RationalPolynomial{-c_[0], Rational(1)};
            return squarefree_part(multiplication_matrix().charpoly());
        }

        BigFloat embed(const BigFloat &root) const
        {
            BigFloat acc(root.precision());
            const auto &c = c_.coefficients();
            for (size_t i = c.size(); i-- > 0;)
                acc = acc * root + BigFloat(c[i], root.precision());
            return acc;
        }

        /// Image in F_ell under the generator -> root map (root must be a root of the modulus mod ell).
        Integer reduce_mod(const Integer &ell, const Integer &root) const
        {
            auto p = modp::from_rational(c_, ell);
            return modp::evaluate(p, root, ell);
        }

        std::string to_string() const
        {
            return c_.to_string(f_ ? f_->variable : std::string("a"));
        }

        friend std::ostream &operator<<(std::ostream &os, const NumberFieldElement &e) { return os << e.to_string(); }

    private:
        std::shared_ptr<const NumberField::Data> f_;
        RationalPolynomial c_;

        static std::shared_ptr<const NumberField::Data> common(const NumberFieldElement &a, const NumberFieldElement &b)
        {
            if (!a.f_)
                return b.f_;
            if (!b.f_ || a.f_ == b.f_)
                return a.f_;
            if (a.f_->modulus == b.f_->modulus)
                return a.f_;
            throw PreconditionError("NumberFieldElement: operands live in different fields");
        }
    };

    inline NumberFieldElement NumberField::generator() const
    {
        return element(RationalPolynomial::x());
    }

    inline NumberFieldElement NumberField::element(const RationalPolynomial &coords) const
    {
        return NumberFieldElement(data_, coords % data_->modulus);
    }

    inline NumberFieldElement NumberField::element(const Rational &value) const
    {
        return NumberFieldElement(data_, RationalPolynomial(value));
    }

    inline RationalPolynomial nf_min_poly(const NumberFieldElement &e) { return e.min_poly(); }
} // namespace smf
