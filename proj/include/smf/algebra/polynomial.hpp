#pragma once

#include <initializer_list>
#include <ostream>
#include <sstream>
#include <tuple>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "smf/algebra/scalar.hpp"

namespace smf
{
    /**
     * Dense univariate polynomial, coefficients stored lowest degree first.
     * R must be a commutative ring constructible from int; division routines
     * additionally need R to be a field.
     */
    template <class R>
    class Polynomial
    {
    public:
        Polynomial() = default;
        Polynomial(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
        Polynomial(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }
        explicit Polynomial(const R &constant) : c_{constant} { trim(); }

        static Polynomial monomial(const R &coeff, size_t deg)
        {
            std::vector<R> c(deg + 1, R(0));
            c[deg] = coeff;
            return Polynomial(std::move(c));
        }

        static Polynomial x() { return monomial(R(1), 1); }

        /// -1 for the zero polynomial.
        long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
        bool is_zero() const noexcept { return c_.empty(); }
        const std::vector<R> &coefficients() const noexcept { return c_; }

        R operator[](size_t i) const { return i < c_.size() ? c_[i] : R(0); }
        R lead() const { return c_.empty() ? R(0) : c_.back(); }

        template <class T>
        T evaluate(const T &x) const
        {
            T acc = T(0);
            for (size_t i = c_.size(); i-- > 0;)
                acc = acc * x + T(c_[i]);
            return acc;
        }

        R operator()(const R &x) const { return evaluate<R>(x); }

        Polynomial derivative() const
        {
            if (c_.size() <= 1)
                return {};
            std::vector<R> d(c_.size() - 1);
            for (size_t i = 1; i < c_.size(); ++i)
                d[i - 1] = c_[i] * R(static_cast<long>(i));
            return Polynomial(std::move(d));
        }

        Polynomial monic() const
        {
            if (is_zero())
                return *this;
            R inv = R(1) / lead();
            std::vector<R> c = c_;
            for (auto &v : c)
                v *= inv;
            return Polynomial(std::move(c));
        }

        Polynomial &operator+=(const Polynomial &o)
        {
            if (o.c_.size() > c_.size())
                c_.resize(o.c_.size(), R(0));
            for (size_t i = 0; i < o.c_.size(); ++i)
                c_[i] += o.c_[i];
            trim();
            return *this;
        }

        Polynomial &operator-=(const Polynomial &o)
        {
            if (o.c_.size() > c_.size())
                c_.resize(o.c_.size(), R(0));
            for (size_t i = 0; i < o.c_.size(); ++i)
                c_[i] -= o.c_[i];
            trim();
            return *this;
        }

        Polynomial &operator*=(const R &s)
        {
            for (auto &v : c_)
                v *= s;
            trim();
            return *this;
        }

        friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
        friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
        friend Polynomial operator*(Polynomial a, const R &s) { return a *= s; }
        friend Polynomial operator*(const R &s, Polynomial a) { return a *= s; }
        friend Polynomial operator-(Polynomial a)
        {
            for (auto &v : a.c_)
                v = -v;
            return a;
        }

        friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
        {
            if (a.is_zero() || b.is_zero())
                return {};
            std::vector<R> c(a.c_.size() + b.c_.size() - 1, R(0));
            for (size_t i = 0; i < a.c_.size(); ++i)
            {
                if (a.c_[i] == 0)
                    continue;
                for (size_t j = 0; j < b.c_.size(); ++j)
                    c[i + j] += a.c_[i] * b.c_[j];
            }
            return Polynomial(std::move(c));
        }

        Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }

        friend bool operator==(const Polynomial &a, const Polynomial &b)
        {
            if (a.c_.size() != b.c_.size())
                return false;
            for (size_t i = 0; i < a.c_.size(); ++i)
                if (!(a.c_[i] == b.c_[i]))
                    return false;
            return true;
        }
        friend bool operator!=(const Polynomial &a, const Polynomial &b) { return !(a == b); }

        /// Euclidean division over a field: returns (quotient, remainder).
        friend std::pair<Polynomial, Polynomial> divmod(const Polynomial &a, const Polynomial &b)
        {
            if (b.is_zero())
                throw std::domain_error("polynomial division by zero");
            std::vector<R> r = a.c_;
            long db = b.degree();
            if (a.degree() < db)
                return {Polynomial(), a};
            std::vector<R> q(static_cast<size_t>(a.degree() - db + 1), R(0));
            R inv = R(1) / b.lead();
            for (long i = a.degree(); i >= db; --i)
            {
                R coef = r[i] * inv;
                q[i - db] = coef;
                if (coef == 0)
                    continue;
                for (long j = 0; j <= db; ++j)
                    r[i - db + j] -= coef * b.c_[j];
            }
            r.resize(static_cast<size_t>(db));
            return {Polynomial(std::move(q)), Polynomial(std::move(r))};
        }

        friend Polynomial operator%(const Polynomial &a, const Polynomial &b) { return divmod(a, b).second; }
        friend Polynomial operator/(const Polynomial &a, const Polynomial &b) { return divmod(a, b).first; }

        std::string to_string(const std::string &var = "x") const
        {
            if (is_zero())
                return "0";
            std::ostringstream os;
            bool first = true;
            for (size_t i = c_.size(); i-- > 0;)
            {
                if (c_[i] == 0)
                    continue;
                std::string s = coeff_string(c_[i]);
                bool neg = !s.empty() && s[0] == '-';
                if (neg)
                    s = s.substr(1);
                if (first)
                    os << (neg ? "-" : "");
                else
                    os << (neg ? " - " : " + ");
                first = false;
                bool unit = (s == "1");
                if (i == 0)
                    os << s;
                else
                {
                    if (!unit)
                        os << s << "*";
                    os << var;
                    if (i > 1)
                        os << "^" << i;
                }
            }
            return os.str();
        }

        friend std::ostream &operator<<(std::ostream &os, const Polynomial &p) { return os << p.to_string(); }

    private:
        std::vector<R> c_;

        void trim()
        {
            while (!c_.empty() && c_.back() == 0)
                c_.pop_back();
        }

        static std::string coeff_string(const R &v)
        {
            if constexpr (std::is_same_v<R, Rational>)
                return v.get_den() == 1 ? v.get_num().get_str() : v.get_str();
            else
            {
                std::ostringstream os;
                os << v;
                return os.str();
            }
        }
    };

    using RationalPolynomial = Polynomial<Rational>;

    /// Monic gcd over a field.
    template <class R>
    Polynomial<R> poly_gcd(Polynomial<R> a, Polynomial<R> b)
    {
        while (!b.is_zero())
        {
            auto r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
    template <class R>
    std::tuple<Polynomial<R>, Polynomial<R>, Polynomial<R>> poly_xgcd(Polynomial<R> a, Polynomial<R> b)
    {
        Polynomial<R> s0(R(1)), s1, t0, t1(R(1));
        while (!b.is_zero())
        {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
            auto s2 = s0 - q * s1;
            auto t2 = t0 - q * t1;
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (a.is_zero())
            return {a, s0, t0};
        R inv = R(1) / a.lead();
        return {a * inv, s0 * inv, t0 * inv};
    }

    inline RationalPolynomial poly_from_integers(const std::vector<long> &c)
    {
        std::vector<Rational> v;
        v.reserve(c.size());
        for (long x : c)
            v.emplace_back(x);
        return RationalPolynomial(std::move(v));
    }

    /// Scales p to a primitive integer polynomial with positive leading coefficient.
    inline std::vector<Integer> primitive_integer_coefficients(const RationalPolynomial &p)
    {
        std::vector<Integer> out;
        if (p.is_zero())
            return out;
        Integer den = 1;
        for (const auto &c : p.coefficients())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        Integer g = 0;
        for (const auto &c : p.coefficients())
        {
            Integer v = c.get_num() * (den / c.get_den());
            out.push_back(v);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
        if (out.back() < 0)
            g = -g;
        for (auto &v : out)
            v /= g;
        return out;
    }

    inline RationalPolynomial primitive_part(const RationalPolynomial &p)
    {
        auto ints = primitive_integer_coefficients(p);
        std::vector<Rational> v(ints.begin(), ints.end());
        return RationalPolynomial(std::move(v));
    }

    /// Square-free part (monic) of a nonzero polynomial over Q.
    inline RationalPolynomial squarefree_part(const RationalPolynomial &p)
    {
        auto g = poly_gcd(p, p.derivative());
        return (p / g).monic();
    }
} // namespace smf
