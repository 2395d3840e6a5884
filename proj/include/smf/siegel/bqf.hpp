#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "smf/algebra/scalar.hpp"

namespace smf
{
    /// Binary quadratic form aX^2 + bXY + cY^2 with machine-integer entries.
    struct BQF
    {
        long a = 0, b = 0, c = 0;

        long disc() const { return 4 * a * c - b * b; }
        bool is_zero() const { return a == 0 && b == 0 && c == 0; }
        bool is_semidefinite() const { return a >= 0 && c >= 0 && disc() >= 0; }
        bool is_definite() const { return a > 0 && disc() > 0; }
        long content() const { return igcd(igcd(a, b), c); }

        friend bool operator==(const BQF &x, const BQF &y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
        friend bool operator!=(const BQF &x, const BQF &y) { return !(x == y); }
        friend BQF operator+(const BQF &x, const BQF &y) { return {x.a + y.a, x.b + y.b, x.c + y.c}; }
        friend BQF operator-(const BQF &x, const BQF &y) { return {x.a - y.a, x.b - y.b, x.c - y.c}; }
        friend BQF operator*(long s, const BQF &x) { return {s * x.a, s * x.b, s * x.c}; }

        std::string to_string() const
        {
            return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
        }

        friend std::ostream &operator<<(std::ostream &os, const BQF &f) { return os << f.to_string(); }
    };

    struct BQFHash
    {
        size_t operator()(const BQF &f) const noexcept
        {
            size_t h = std::hash<long>{}(f.a);
            h = h * 1000003u ^ std::hash<long>{}(f.b);
            h = h * 1000003u ^ std::hash<long>{}(f.c);
            return h;
        }
    };

    /// Canonical key order: definite forms by (disc, a, b), then singular forms [0,0,c] by c.
    struct CanonicalKeyLess
    {
        bool operator()(const BQF &x, const BQF &y) const
        {
            bool sx = x.disc() == 0, sy = y.disc() == 0;
            if (sx != sy)
                return !sx;
            if (sx)
                return std::tie(x.c, x.a, x.b) < std::tie(y.c, y.a, y.b);
            return std::make_tuple(x.disc(), x.a, x.b) < std::make_tuple(y.disc(), y.a, y.b);
        }
    };

    /// 2x2 matrix [[m00, m01], [m10, m11]].
    template <class T = long>
    struct Mat2
    {
        T m00{1}, m01{0}, m10{0}, m11{1};

        static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
        T det() const { return m00 * m11 - m01 * m10; }
        Mat2 transpose() const { return {m00, m10, m01, m11}; }

        friend Mat2 operator*(const Mat2 &x, const Mat2 &y)
        {
            return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
                    x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
        }

        friend bool operator==(const Mat2 &x, const Mat2 &y)
        {
            return x.m00 == y.m00 && x.m01 == y.m01 && x.m10 == y.m10 && x.m11 == y.m11;
        }

        /// Inverse of an integer matrix of determinant +-1.
        Mat2 unimodular_inverse() const
        {
            T d = det();
            if (d != T(1) && d != T(-1))
                throw PreconditionError("Mat2: matrix is not unimodular");
            return {m11 * d, -m01 * d, -m10 * d, m00 * d};
        }

        friend std::ostream &operator<<(std::ostream &os, const Mat2 &m)
        {
            return os << "[[" << m.m00 << "," << m.m01 << "],[" << m.m10 << "," << m.m11 << "]]";
        }
    };

    using IMat2 = Mat2<long>;

    /// f_U(X, Y) := f((X, Y) U^t), i.e. Gram matrix U^t G U.
    inline BQF transform(const BQF &f, const IMat2 &U)
    {
        // X' = u00 X + u01 Y, Y' = u10 X + u11 Y.
        long p = U.m00, q = U.m01, r = U.m10, s = U.m11;
        return {f.a * p * p + f.b * p * r + f.c * r * r,
                2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
                f.a * q * q + f.b * q * s + f.c * s * s};
    }

    inline bool is_reduced(const BQF &f)
    {
        if (f.disc() == 0)
            return f.a == 0 && f.b == 0 && f.c >= 0;
        return 0 <= f.b && f.b <= f.a && f.a <= f.c;
    }

    struct Reduction
    {
        BQF reduced;
        IMat2 U; ///< reduced == transform(f, U), det U = +-1.
    };

    /**
     * GL2(Z)-reduction of a positive semidefinite form to 0 <= b <= a <= c
     * (singular forms go to [0, 0, c]).
     */
    inline Reduction reduce_bqf(const BQF &f)
    {
        if (!f.is_semidefinite())
            throw PreconditionError("reduce_bqf: form " + f.to_string() + " is not positive semidefinite");
        BQF g = f;
        IMat2 U = IMat2::identity();
        auto apply = [&](const IMat2 &V)
        {
            g = transform(g, V);
            U = U * V;
        };
        for (;;)
        {
            if (g.a == 0)
            {
                // Semidefinite with a = 0 forces b = 0.
                break;
            }
            // Translate b into (-a, a].
            long num = g.a - g.b, den = 2 * g.a;
            long t = num >= 0 ? num / den : -((-num + den - 1) / den);
            if (t != 0)
                apply({1, t, 0, 1});
            if (g.a > g.c)
            {
                apply({0, -1, 1, 0});
                continue;
            }
            break;
        }
        if (g.a != 0 && g.b < 0)
            apply({1, 0, 0, -1});
        if (g.a == g.c && g.b < 0)
            apply({0, 1, 1, 0});
        if (!is_reduced(g))
            throw ComputationError("reduce_bqf: reduction of " + f.to_string() + " did not terminate in reduced form");
        return {g, U};
    }

    /// Reduced definite forms with 0 < disc <= D in canonical order.
    inline std::vector<BQF> reduced_forms(long D)
    {
        std::vector<BQF> out;
        for (long a = 1; 3 * a * a <= D; ++a)
            for (long b = 0; b <= a; ++b)
                for (long c = a;; ++c)
                {
                    long d = 4 * a * c - b * b;
                    if (d > D)
                        break;
                    out.push_back({a, b, c});
                }
        std::sort(out.begin(), out.end(), CanonicalKeyLess{});
        return out;
    }

    /// Floor of the square root of a nonnegative integer.
    inline long isqrt(long n)
    {
        if (n <= 0)
            return 0;
        long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
        while (r * r > n)
            --r;
        while ((r + 1) * (r + 1) <= n)
            ++r;
        return r;
    }

    /// Calls visit(f, h - f) for every semidefinite f with h - f semidefinite.
    template <class Visit>
    void for_each_decomposition(const BQF &h, Visit &&visit)
    {
        for (long a1 = 0; a1 <= h.a; ++a1)
        {
            long a2 = h.a - a1;
            for (long c1 = 0; c1 <= h.c; ++c1)
            {
                long c2 = h.c - c1;
                long r1 = isqrt(4 * a1 * c1);
                long r2 = isqrt(4 * a2 * c2);
                long lo = std::max(-r1, h.b - r2), hi = std::min(r1, h.b + r2);
                for (long b1 = lo; b1 <= hi; ++b1)
                    visit(BQF{a1, b1, c1}, BQF{a2, h.b - b1, c2});
            }
        }
    }
} // namespace smf
