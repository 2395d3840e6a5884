#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "smf/algebra/bigfloat.hpp"
#include "smf/algebra/lattice.hpp"
#include "smf/eform/elliptic.hpp"

namespace smf
{
    /// Lambda(f, s) with a bound on |computed - exact|.
    struct CompletedLValue
    {
        int r = 0;
        BigFloat s;
        BigFloat value;
        BigFloat error_bound;
        size_t terms = 0;
    };

    enum class Parity
    {
        Odd,
        Even
    };

    inline bool parity_matches(int t, Parity parity) { return (t % 2 == 0) == (parity == Parity::Even); }

    /**
     * Upper incomplete gamma Gamma(s, x) for s > 0, x >= 0. Positive integers s use the closed form
     * (s-1)! e^{-x} sum_{m<s} x^m / m!; otherwise the continued fraction (modified Lentz) for
     * x > s + 1 and Gamma(s) minus the lower-gamma power series below that.
     */
    inline BigFloat incomplete_gamma(const BigFloat &s, const BigFloat &x, mpfr_prec_t prec)
    {
        BigFloat zero(0L, prec);
        if (x < zero)
            throw PreconditionError("incomplete_gamma: x must be nonnegative");
        if (!(s > zero))
            throw PreconditionError("incomplete_gamma: s must be positive");
        mpfr_prec_t wp = prec + 32;
        BigFloat sv = s.with_precision(wp), xv = x.with_precision(wp);
        if (xv.is_zero())
            return gamma(sv).with_precision(prec);
        BigFloat one(1L, wp);
        BigFloat eps = BigFloat::pow2(-static_cast<long>(wp), wp);
        const long max_iter = 100000 + 20 * static_cast<long>(wp);
        Integer si = sv.round_to_integer();
        if (si >= 1 && si <= 100000 && BigFloat(si, wp) == sv)
        {
            long n = si.get_si();
            BigFloat term = one, sum = one, fact = one;
            for (long m = 1; m < n; ++m)
            {
                term = term * xv / BigFloat(m, wp);
                sum = sum + term;
                if (m > 1)
                    fact = fact * BigFloat(m, wp);
            }
            return (fact * exp(-xv) * sum).with_precision(prec);
        }
        BigFloat prefactor = exp(sv * log(xv) - xv);
        if (xv > sv + one)
        {
            // Gamma(s,x) = prefactor / (x+1-s - 1(1-s)/(x+3-s - 2(2-s)/(x+5-s - ...)))
            BigFloat tiny = BigFloat::pow2(-4 * static_cast<long>(wp), wp);
            BigFloat b = xv + one - sv;
            BigFloat c = one / tiny, d = one / b, h = d;
            for (long i = 1; i <= max_iter; ++i)
            {
                BigFloat an = -BigFloat(i, wp) * (BigFloat(i, wp) - sv);
                b = b + BigFloat(2L, wp);
                d = an * d + b;
                if (abs(d) < tiny)
                    d = tiny;
                c = b + an / c;
                if (abs(c) < tiny)
                    c = tiny;
                d = one / d;
                BigFloat delta = d * c;
                h = h * delta;
                if (abs(delta - one) < eps)
                    return (prefactor * h).with_precision(prec);
            }
            throw ComputationError("incomplete_gamma: continued fraction did not converge");
        }
        // gamma(s,x) = prefactor * sum_n x^n / (s (s+1) ... (s+n))
        BigFloat term = one / sv, sum = term;
        for (long n = 1; n <= max_iter; ++n)
        {
            term = term * xv / (sv + BigFloat(n, wp));
            sum = sum + term;
            if (abs(term) < abs(sum) * eps)
                return (gamma(sv) - prefactor * sum).with_precision(prec);
        }
        throw ComputationError("incomplete_gamma: power series did not converge");
    }

    namespace detail
    {
        /// log of an upper bound for Gamma(a, x), valid for x > max(a - 1, 0).
        inline double log_gamma_upper_bound(double a, double x)
        {
            double lb = (a - 1) * std::log(x) - x;
            if (a > 1)
                lb += std::log(x / (x - a + 1));
            return lb;
        }

        /// log of a bound for |term n| of the Lambda series using |a_n| <= 2 n^(r/2).
        inline double log_term_bound(int r, double s, long n)
        {
            double x = 2 * M_PI * static_cast<double>(n);
            double t1 = -s * std::log(x) + log_gamma_upper_bound(s, x);
            double t2 = (s - r) * std::log(x) + log_gamma_upper_bound(r - s, x);
            double m = std::max(t1, t2);
            return std::log(2.0) + 0.5 * r * std::log(static_cast<double>(n)) + m + std::log1p(std::exp(std::min(t1, t2) - m));
        }

        /// log of a bound for sum_{n > N} |term n|.
        inline double log_tail_bound(int r, double s, long N)
        {
            double n1 = static_cast<double>(N + 1);
            double rho = std::exp(-2 * M_PI + 0.5 * r * std::log1p(1.0 / n1));
            if (rho >= 0.5)
                return INFINITY;
            return log_term_bound(r, s, N + 1) - std::log(1 - rho);
        }
    } // namespace detail

    /// Smallest N with tail bound below 2^-(prec + 8) for every s in [1, r - 1].
    inline long lambda_terms_needed(int r, mpfr_prec_t prec)
    {
        double target = -(static_cast<double>(prec) + 8) * std::log(2.0);
        long N = std::max(r, 4);
        for (;; ++N)
        {
            double worst = -INFINITY;
            for (double s = 1; s <= r - 1; s += 0.5)
                worst = std::max(worst, detail::log_tail_bound(r, s, N));
            if (worst < target)
                return N;
            if (N > 1000000)
                throw ComputationError("lambda_terms_needed: no admissible truncation");
        }
    }

    /**
     * Lambda(f, s) = sum_n a_n [(2 pi n)^{-s} Gamma(s, 2 pi n) + (-1)^{r/2} (2 pi n)^{s-r} Gamma(r - s, 2 pi n)]
     * for a cusp eigenform with real coefficients a[n] (a[0] ignored), 1 <= s <= r - 1.
     */
    inline CompletedLValue lambda_value(const std::vector<BigFloat> &a, int r, const BigFloat &s, mpfr_prec_t prec)
    {
        if (r % 2 != 0 || r < 2)
            throw PreconditionError("lambda_value: weight must be even and positive");
        double sd = s.to_double();
        if (sd < 1 || sd > r - 1)
            throw PreconditionError("lambda_value: s must lie in [1, r-1]");
        long N = lambda_terms_needed(r, prec);
        if (static_cast<long>(a.size()) <= N)
            throw PreconditionError("lambda_value: need " + std::to_string(N) + " q-expansion terms, have " +
                                    std::to_string(a.size() == 0 ? 0 : a.size() - 1));
        mpfr_prec_t wp = prec + 32;
        BigFloat sv = s.with_precision(wp);
        BigFloat rs = BigFloat(static_cast<long>(r), wp) - sv;
        BigFloat two_pi = ldexp(BigFloat::pi(wp), 1);
        BigFloat sign(r % 4 == 0 ? 1L : -1L, wp);
        BigFloat sum(0L, wp), abs_sum(0L, wp);
        for (long n = 1; n <= N; ++n)
        {
            BigFloat an = a[static_cast<size_t>(n)].with_precision(wp);
            if (an == BigFloat(0L, wp))
                continue;
            BigFloat x = two_pi * BigFloat(n, wp);
            BigFloat lx = log(x);
            BigFloat t1 = exp(-(sv * lx)) * incomplete_gamma(sv, x, wp);
            BigFloat t2 = exp((sv - BigFloat(static_cast<long>(r), wp)) * lx) * incomplete_gamma(rs, x, wp);
            BigFloat term = an * (t1 + sign * t2);
            sum = sum + term;
            abs_sum = abs_sum + abs(an) * (t1 + t2);
        }
        CompletedLValue out;
        out.r = r;
        out.s = s;
        out.terms = static_cast<size_t>(N);
        out.value = sum.with_precision(prec);
        // Rounding: each term carries relative error below 2^(12 - wp) (exp, log, gamma, products);
        // summation adds N roundings; the final rounding to prec adds 2^-prec relative.
        BigFloat rounding = abs_sum * BigFloat::pow2(12 - static_cast<long>(wp), wp) * BigFloat(N + 2, wp) +
                            abs(sum) * BigFloat::pow2(-static_cast<long>(prec), wp);
        BigFloat tail = exp(BigFloat(detail::log_tail_bound(r, sd, N), wp));
        out.error_bound = (rounding + tail).with_precision(prec);
        return out;
    }

    /// Lambda for a rational q-expansion.
    inline CompletedLValue lambda_value(const QSeries &f, int r, const BigFloat &s, mpfr_prec_t prec)
    {
        std::vector<BigFloat> a;
        for (size_t n = 0; n < f.n_terms(); ++n)
            a.push_back(BigFloat(f[n], prec + 32));
        return lambda_value(a, r, s, prec);
    }

    /// Coefficients a_n of an eigenform embedded through a real root of its field modulus.
    inline std::vector<BigFloat> embedded_coefficients(const EllipticEigenform &f, const BigFloat &root)
    {
        std::vector<BigFloat> a;
        a.reserve(f.n_terms());
        for (size_t n = 0; n < f.n_terms(); ++n)
            a.push_back(f.a(n).embed(root));
        return a;
    }

    /// Real embeddings of an eigenform's coefficient field (a single dummy root for Q).
    inline std::vector<BigFloat> eigenform_embeddings(const EllipticEigenform &f, mpfr_prec_t prec)
    {
        if (f.field.degree() == 1)
            return {BigFloat(0L, prec)};
        auto roots = f.field.real_embeddings(prec);
        if (static_cast<long>(roots.size()) != f.field.degree())
            throw ComputationError("eigenform_embeddings: coefficient field is not totally real");
        return roots;
    }

    /// Eigenforms of weight r with enough coefficients for Lambda at the given precision.
    inline std::vector<EllipticEigenform> eigenforms_for_lvalues(int r, mpfr_prec_t prec)
    {
        return elliptic_eigenforms(r, static_cast<size_t>(lambda_terms_needed(r, prec) + 1));
    }

    /// Lambda(f^sigma, t) / Lambda(f^sigma, t0) for every real embedding sigma.
    inline std::vector<BigFloat> critical_ratio_values(const EllipticEigenform &f, int t, int t0, mpfr_prec_t prec)
    {
        if ((t - t0) % 2 != 0)
            throw PreconditionError("critical_ratio_values: t and t0 have different parity");
        std::vector<BigFloat> out;
        for (const BigFloat &root : eigenform_embeddings(f, prec + 64))
        {
            auto a = embedded_coefficients(f, root);
            auto num = lambda_value(a, f.weight, BigFloat(static_cast<long>(t), prec), prec);
            auto den = lambda_value(a, f.weight, BigFloat(static_cast<long>(t0), prec), prec);
            out.push_back(num.value / den.value);
        }
        return out;
    }

    /**
     * Minimal polynomial of an algebraic number of degree dividing d given by its
     * values in all d real embeddings: algdep on the first value, accepted only if
     * it vanishes at every embedded value.
     */
    inline std::optional<RationalPolynomial> recognize_conjugates(const std::vector<BigFloat> &values, unsigned d, long prec)
    {
        RationalPolynomial p;
        try
        {
            p = algdep(values.front(), d, prec);
        }
        catch (const ComputationError &)
        {
            return std::nullopt;
        }
        if (d % static_cast<unsigned>(p.degree()) != 0)
            return std::nullopt;
        mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec + 64);
        BigFloat threshold = BigFloat::pow2(-prec / 4, wp);
        for (const BigFloat &x : values)
        {
            BigFloat v = abs(p.evaluate<BigFloat>(x.with_precision(wp)));
            if (!(v < threshold))
                return std::nullopt;
        }
        return p;
    }

    /// Default working precision of the critical-value pipeline.
    inline constexpr long kDefaultLPrecision = 256;

    /// Largest precision in bits whose truncation fits in the eigenform's computed coefficients.
    inline long max_supported_precision(const EllipticEigenform &f, long cap = 1 << 14)
    {
        long best = 0;
        for (long p = 64; p <= cap; p *= 2)
            if (lambda_terms_needed(f.weight, static_cast<mpfr_prec_t>(p)) < static_cast<long>(f.n_terms()))
                best = p;
        return best;
    }

    /**
     * Minimal polynomial over Q of Lambda(f, t)/Lambda(f, t0), starting at prec bits and
     * doubling until two successive precisions agree.
     */
    inline RationalPolynomial critical_ratio_minpoly(const EllipticEigenform &f, int t, int t0, long prec = kDefaultLPrecision)
    {
        if (t < 1 || t > f.weight - 1 || t0 < 1 || t0 > f.weight - 1)
            throw PreconditionError("critical_ratio_minpoly: critical points lie in [1, r-1]");
        if (t == t0)
            return RationalPolynomial({Rational(-1), Rational(1)});
        unsigned d = static_cast<unsigned>(f.field.degree());
        long max_prec = max_supported_precision(f);
        std::optional<RationalPolynomial> last;
        for (long p = prec; p <= max_prec; p *= 2)
        {
            auto vals = critical_ratio_values(f, t, t0, static_cast<mpfr_prec_t>(p));
            auto rec = recognize_conjugates(vals, d, p);
            if (rec && last && *rec == *last)
                return *rec;
            last = rec;
        }
        throw ComputationError("critical_ratio_minpoly: no stable relation for t = " + std::to_string(t) + " up to " +
                               std::to_string(max_prec) + " bits");
    }

    /// Normalizing point of each parity: t0 = 1 for odd ratios, t0 = 2 for even ones.
    inline int default_t0(Parity parity) { return parity == Parity::Odd ? 1 : 2; }

    /// t -> minimal polynomial of Lambda(f, t)/Lambda(f, t0) over all critical t of the given parity.
    inline std::map<int, RationalPolynomial> critical_ratio_minpolys(const EllipticEigenform &f, Parity parity,
                                                                     long prec = kDefaultLPrecision)
    {
        int t0 = default_t0(parity);
        std::map<int, RationalPolynomial> out;
        for (int t = 1; t <= f.weight - 1; ++t)
            if (parity_matches(t, parity))
                out.emplace(t, critical_ratio_minpoly(f, t, t0, prec));
        return out;
    }

    /// Coefficient precision that supports four doublings from prec.
    inline long lvalue_coefficient_precision(long prec) { return 16 * prec; }

    /// One table per Galois orbit of eigenforms in S_r.
    inline std::vector<std::map<int, RationalPolynomial>> critical_ratio_minpolys(int r, Parity parity, long prec = kDefaultLPrecision)
    {
        std::vector<std::map<int, RationalPolynomial>> out;
        for (const auto &f : eigenforms_for_lvalues(r, static_cast<mpfr_prec_t>(lvalue_coefficient_precision(prec))))
            out.push_back(critical_ratio_minpolys(f, parity, prec));
        return out;
    }

    /// Norm from Q_f to Q of a root of the irreducible p, where [Q_f : Q] = field_degree.
    inline Rational norm_of_root(const RationalPolynomial &p, long field_degree)
    {
        long d = p.degree();
        if (d < 1 || field_degree % d != 0)
            throw PreconditionError("norm_of_root: degree does not divide the field degree");
        Rational base = p[0] / p.lead();
        if (d % 2 != 0)
            base = -base;
        Rational out(1);
        for (long i = 0; i < field_degree / d; ++i)
            out *= base;
        return out;
    }

    /// A large prime dividing a critical-value norm.
    struct HarderPrime
    {
        Integer ell;
        std::optional<bool> ordinary; ///< empty when the modular test is out of reach
        bool square_divides = false;  ///< ell^2 divides the norm numerator (exponent s > 1, flagged only)
        size_t orbit = 0;

        friend bool operator<(const HarderPrime &a, const HarderPrime &b) { return a.ell < b.ell; }
    };

    /**
     * Primes ell > max(bound, r) dividing the numerator of Norm(Lambda(f, t)/Lambda(f, t0)) for some
     * eigenform orbit f of S_r, with t0 the default point of t's parity. Each is annotated with is_ordinary.
     */
    inline std::vector<HarderPrime> harder_congruence_primes(int r, int t, long bound = 0, long prec = kDefaultLPrecision)
    {
        Parity parity = t % 2 == 0 ? Parity::Even : Parity::Odd;
        auto forms = eigenforms_for_lvalues(r, static_cast<mpfr_prec_t>(lvalue_coefficient_precision(prec)));
        long cutoff = std::max<long>(bound, r);
        std::map<Integer, HarderPrime> found;
        for (size_t o = 0; o < forms.size(); ++o)
        {
            auto p = critical_ratio_minpoly(forms[o], t, default_t0(parity), prec);
            Rational n = norm_of_root(p, forms[o].field.degree());
            Integer num = abs(n.get_num());
            if (num == 0)
                continue;
            for (const auto &[ell, e] : factor_integer(num))
            {
                if (ell <= cutoff)
                    continue;
                HarderPrime h{ell, std::nullopt, e > 1, o};
                try
                {
                    h.ordinary = is_ordinary(r, ell);
                }
                catch (const PreconditionError &)
                {
                }
                catch (const ComputationError &)
                {
                }
                found.emplace(ell, h);
            }
        }
        std::vector<HarderPrime> out;
        for (auto &[ell, h] : found)
            out.push_back(h);
        return out;
    }
} // namespace smf
