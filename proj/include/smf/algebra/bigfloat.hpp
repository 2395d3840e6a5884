#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "smf/algebra/scalar.hpp"

namespace smf
{
    /**
     * RAII handle over an MPFR value. Binary operations produce results at the
     * larger of the operand precisions, rounded to nearest.
     */
    class BigFloat
    {
    public:
        static mpfr_prec_t &default_precision()
        {
            static thread_local mpfr_prec_t prec = 256;
            return prec;
        }

        explicit BigFloat(mpfr_prec_t prec = default_precision())
        {
            mpfr_init2(v_, prec);
            mpfr_set_zero(v_, 1);
        }
        BigFloat(long x, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
        BigFloat(double x, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
        BigFloat(const Integer &x, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
        BigFloat(const Rational &x, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
        BigFloat(const std::string &s, mpfr_prec_t prec) : BigFloat(prec)
        {
            if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
                throw std::invalid_argument("not a decimal number: " + s);
        }
        // Implicit from small integers so BigFloat works inside generic evaluate<T>().
        BigFloat(int x) : BigFloat(static_cast<long>(x), default_precision()) {}
        BigFloat(const Rational &x) : BigFloat(x, default_precision()) {}

        BigFloat(const BigFloat &o) : BigFloat(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
        BigFloat(BigFloat &&o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
        BigFloat &operator=(const BigFloat &o)
        {
            if (this != &o)
            {
                mpfr_set_prec(v_, mpfr_get_prec(o.v_));
                mpfr_set(v_, o.v_, MPFR_RNDN);
            }
            return *this;
        }
        BigFloat &operator=(BigFloat &&o) noexcept
        {
            mpfr_swap(v_, o.v_);
            return *this;
        }
        ~BigFloat() { mpfr_clear(v_); }

        mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
        mpfr_ptr raw() { return v_; }
        mpfr_srcptr raw() const { return v_; }

        BigFloat with_precision(mpfr_prec_t prec) const
        {
            BigFloat r(prec);
            mpfr_set(r.v_, v_, MPFR_RNDN);
            return r;
        }

        double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
        bool is_zero() const { return mpfr_zero_p(v_) != 0; }
        int sign() const { return mpfr_sgn(v_); }
        /// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
        long exponent2() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

        Integer round_to_integer() const
        {
            Integer z;
            mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
            return z;
        }

        Rational to_rational() const
        {
            Rational q;
            mpfr_exp_t e;
            Integer m;
            e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
            q = m;
            if (e >= 0)
                q *= Rational(ipow(2, static_cast<unsigned long>(e)));
            else
                q /= Rational(ipow(2, static_cast<unsigned long>(-e)));
            q.canonicalize();
            return q;
        }

        std::string to_string(int digits = 20) const
        {
            char *buf = nullptr;
            std::string fmt = "%." + std::to_string(digits) + "Rg";
            mpfr_asprintf(&buf, fmt.c_str(), v_);
            std::string s(buf);
            mpfr_free_str(buf);
            return s;
        }

        friend std::ostream &operator<<(std::ostream &os, const BigFloat &x) { return os << x.to_string(); }

#define SMF_BF_BINOP(op, fn)                                                        \
    friend BigFloat operator op(const BigFloat &a, const BigFloat &b)               \
    {                                                                               \
        BigFloat r(std::max(a.precision(), b.precision()));                         \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                            \
        return r;                                                                   \
    }                                                                               \
    BigFloat &operator op##=(const BigFloat &b)                                     \
    {                                                                               \
        if (b.precision() > precision())                                            \
            mpfr_prec_round(v_, b.precision(), MPFR_RNDN);                          \
        fn(v_, v_, b.v_, MPFR_RNDN);                                                \
        return *this;                                                               \
    }
        SMF_BF_BINOP(+, mpfr_add)
        SMF_BF_BINOP(-, mpfr_sub)
        SMF_BF_BINOP(*, mpfr_mul)
        SMF_BF_BINOP(/, mpfr_div)
#undef SMF_BF_BINOP

        friend BigFloat operator-(const BigFloat &a)
        {
            BigFloat r(a.precision());
            mpfr_neg(r.v_, a.v_, MPFR_RNDN);
            return r;
        }

        friend bool operator<(const BigFloat &a, const BigFloat &b) { return mpfr_less_p(a.v_, b.v_); }
        friend bool operator>(const BigFloat &a, const BigFloat &b) { return mpfr_greater_p(a.v_, b.v_); }
        friend bool operator<=(const BigFloat &a, const BigFloat &b) { return mpfr_lessequal_p(a.v_, b.v_); }
        friend bool operator>=(const BigFloat &a, const BigFloat &b) { return mpfr_greaterequal_p(a.v_, b.v_); }
        friend bool operator==(const BigFloat &a, const BigFloat &b) { return mpfr_equal_p(a.v_, b.v_); }

        static BigFloat pi(mpfr_prec_t prec)
        {
            BigFloat r(prec);
            mpfr_const_pi(r.v_, MPFR_RNDN);
            return r;
        }

        /// 2^e exactly.
        static BigFloat pow2(long e, mpfr_prec_t prec)
        {
            BigFloat r(prec);
            mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
            return r;
        }

#define SMF_BF_UNARY(name, fn)              \
    friend BigFloat name(const BigFloat &a) \
    {                                       \
        BigFloat r(a.precision());          \
        fn(r.v_, a.v_, MPFR_RNDN);          \
        return r;                           \
    }
        SMF_BF_UNARY(exp, mpfr_exp)
        SMF_BF_UNARY(log, mpfr_log)
        SMF_BF_UNARY(sqrt, mpfr_sqrt)
        SMF_BF_UNARY(abs, mpfr_abs)
        SMF_BF_UNARY(gamma, mpfr_gamma)
        SMF_BF_UNARY(log2, mpfr_log2)
        SMF_BF_UNARY(cos, mpfr_cos)
        SMF_BF_UNARY(sin, mpfr_sin)
#undef SMF_BF_UNARY

        friend BigFloat pow(const BigFloat &a, long e)
        {
            BigFloat r(a.precision());
            mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
            return r;
        }

        friend BigFloat pow(const BigFloat &a, const BigFloat &e)
        {
            BigFloat r(std::max(a.precision(), e.precision()));
            mpfr_pow(r.v_, a.v_, e.v_, MPFR_RNDN);
            return r;
        }

        friend BigFloat ldexp(const BigFloat &a, long e)
        {
            BigFloat r(a.precision());
            mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
            return r;
        }

    private:
        mpfr_t v_;
    };

    /// Sets the thread's default BigFloat precision for the lifetime of the guard.
    class PrecisionGuard
    {
    public:
        explicit PrecisionGuard(mpfr_prec_t prec) : saved_(BigFloat::default_precision())
        {
            BigFloat::default_precision() = prec;
        }
        ~PrecisionGuard() { BigFloat::default_precision() = saved_; }
        PrecisionGuard(const PrecisionGuard &) = delete;
        PrecisionGuard &operator=(const PrecisionGuard &) = delete;

    private:
        mpfr_prec_t saved_;
    };

    /// Minimal complex number over BigFloat, enough for polynomial root finding.
    struct BigComplex
    {
        BigFloat re, im;

        BigComplex() = default;
        BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
        explicit BigComplex(const BigFloat &r) : re(r), im(r.precision()) {}

        friend BigComplex operator+(const BigComplex &a, const BigComplex &b) { return {a.re + b.re, a.im + b.im}; }
        friend BigComplex operator-(const BigComplex &a, const BigComplex &b) { return {a.re - b.re, a.im - b.im}; }
        friend BigComplex operator*(const BigComplex &a, const BigComplex &b)
        {
            return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
        }
        friend BigComplex operator/(const BigComplex &a, const BigComplex &b)
        {
            BigFloat d = b.re * b.re + b.im * b.im;
            return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
        }
        BigFloat norm2() const { return re * re + im * im; }
        BigFloat modulus() const { return sqrt(norm2()); }
    };
} // namespace smf
