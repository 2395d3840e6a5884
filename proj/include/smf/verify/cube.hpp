#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "smf/algebra/number_field.hpp"
#include "smf/algebra/scalar.hpp"

namespace smf
{
    enum class CongruenceKind
    {
        Harder,
        Sym2
    };

    inline std::string to_string(CongruenceKind kind) { return kind == CongruenceKind::Harder ? "harder" : "sym2"; }

    namespace detail
    {
        /// Polynomial in two variables (g, h) with rational coefficients, keyed by exponent pairs.
        class BiPoly
        {
        public:
            BiPoly() = default;
            BiPoly(const Rational &c)
            {
                if (c != 0)
                    t_[{0, 0}] = c;
            }
            static BiPoly g() { return monomial(1, 0); }
            static BiPoly h() { return monomial(0, 1); }
            static BiPoly monomial(int a, int b, const Rational &c = Rational(1))
            {
                BiPoly out;
                if (c != 0)
                    out.t_[{a, b}] = c;
                return out;
            }

            bool is_zero() const { return t_.empty(); }

            friend BiPoly operator+(BiPoly a, const BiPoly &b)
            {
                for (const auto &[e, c] : b.t_)
                    a.add(e, c);
                return a;
            }
            friend BiPoly operator-(BiPoly a, const BiPoly &b)
            {
                for (const auto &[e, c] : b.t_)
                    a.add(e, -c);
                return a;
            }
            friend BiPoly operator*(const BiPoly &a, const BiPoly &b)
            {
                BiPoly out;
                for (const auto &[ea, ca] : a.t_)
                    for (const auto &[eb, cb] : b.t_)
                        out.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
                return out;
            }

            std::string to_string() const
            {
                if (t_.empty())
                    return "0";
                std::string out;
                for (auto it = t_.rbegin(); it != t_.rend(); ++it)
                {
                    const auto &[e, c] = *it;
                    std::string coef = c.get_str();
                    if (!out.empty())
                        out += c < 0 ? " - " : " + ";
                    else if (c < 0)
                        out += "-";
                    Rational ac = abs(c);
                    bool unit = ac == 1 && (e.first || e.second);
                    std::string term = unit ? "" : ac.get_str();
                    auto var = [&](const char *name, int k)
                    {
                        if (k == 0)
                            return;
                        if (!term.empty())
                            term += "*";
                        term += name;
                        if (k > 1)
                            term += "^" + std::to_string(k);
                    };
                    var("g1", e.first);
                    var("h1", e.second);
                    out += term;
                }
                return out;
            }

        private:
            void add(std::pair<int, int> e, const Rational &c)
            {
                Rational &slot = t_[e];
                slot += c;
                if (slot == 0)
                    t_.erase(e);
            }
            std::map<std::pair<int, int>, Rational> t_;
        };
    } // namespace detail

    /// Record of the symbolic check behind the delta = 3 reduction.
    struct CubeCertificate
    {
        CongruenceKind kind = CongruenceKind::Harder;
        bool weight_relation = false;
        std::string relation;               ///< the weight relation that was required
        std::vector<std::string> steps;     ///< identities checked, in order
        std::string residual;               ///< G3(g1 + h1 ...) - target, as a polynomial in g1, h1
        bool g2_consistent = false;         ///< mu2_f = g1^2 - 2 p^(r-1)
        bool h_identities = false;          ///< h2, h3 relations against their closed forms
        bool valid = false;
    };

    struct CubeReduction
    {
        NumberFieldElement mu3_f;
        NumberFieldElement mu3_F;
        CubeCertificate certificate;
    };

    /**
     * mu_{p^3} on both sides from the delta = 1, 2 data:
     * g3 = g1(g1^2 - 3p^(r-1)) and G3 = G1(-G1^2 + 3G2 + 6p^(2k+j-3))/2,
     * together with a certificate that the congruences at delta = 1, 2 imply the one at delta = 3.
     * The certificate expands the chain as polynomials in (g1, h1) and requires the residual to vanish.
     */
    inline CubeReduction cube_reduction(const NumberFieldElement &mu1_f, const NumberFieldElement &mu2_f, const NumberFieldElement &mu1_F,
                                        const NumberFieldElement &mu2_F, long p, int r, int k, int j, CongruenceKind kind)
    {
        using detail::BiPoly;
        CubeCertificate cert;
        cert.kind = kind;
        if (kind == CongruenceKind::Harder)
        {
            cert.relation = "r - 1 = 2k + j - 3";
            cert.weight_relation = r - 1 == 2 * k + j - 3;
        }
        else
        {
            cert.relation = "r = k + j";
            cert.weight_relation = r == k + j;
        }
        if (!cert.weight_relation)
            throw PreconditionError("cube_reduction: weight relation " + cert.relation + " fails for r = " + std::to_string(r) +
                                    ", k = " + std::to_string(k) + ", j = " + std::to_string(j));
        auto pw = [p](long e)
        { return Rational(ipow(p, static_cast<unsigned long>(e))); };
        Rational Q = pw(r - 1), P = pw(2 * k + j - 3), S = pw(k - 2);

        CubeReduction out;
        out.mu3_f = mu1_f * (mu1_f * mu1_f - NumberFieldElement(3 * Q));
        out.mu3_F = NumberFieldElement(Rational(1, 2)) * mu1_F *
                    (NumberFieldElement(0) - mu1_F * mu1_F + NumberFieldElement(3) * mu2_F + NumberFieldElement(6 * P));
        cert.g2_consistent = mu2_f == mu1_f * mu1_f - NumberFieldElement(2 * Q);

        BiPoly g1 = BiPoly::g(), h1 = BiPoly::h();
        BiPoly g2 = g1 * g1 - BiPoly(2 * Q), g3 = g1 * (g1 * g1 - BiPoly(3 * Q));
        auto G3_of = [&](const BiPoly &G1, const BiPoly &G2)
        { return BiPoly(Rational(1, 2)) * G1 * (BiPoly(0) - G1 * G1 + BiPoly(3) * G2 + BiPoly(6 * P)); };
        cert.steps.push_back("g2 = g1^2 - 2p^(r-1), g3 = g1(g1^2 - 3p^(r-1))");
        cert.steps.push_back("G3 = (1/2) G1 (-G1^2 + 3 G2 + 6p^(2k+j-3))");
        BiPoly residual;
        if (kind == CongruenceKind::Harder)
        {
            Rational h1v = pw(k + j - 1) + S;
            Rational h2v = pw(2 * (k + j - 1)) + pw(2 * (k - 2));
            Rational h3v = pw(3 * (k + j - 1)) + pw(3 * (k - 2));
            cert.h_identities = h2v == h1v * h1v - 2 * P && h3v == h1v * (h1v * h1v - 3 * P);
            cert.steps.push_back("h_d = p^(d(k+j-1)) + p^(d(k-2)): h2 = h1^2 - 2p^(2k+j-3), h3 = h1(h1^2 - 3p^(2k+j-3))");
            BiPoly h2 = h1 * h1 - BiPoly(2 * P), h3 = h1 * (h1 * h1 - BiPoly(3 * P));
            cert.steps.push_back("substitute G1 = g1 + h1, G2 = g2 + h2 and compare with g3 + h3");
            residual = G3_of(g1 + h1, g2 + h2) - (g3 + h3);
        }
        else
        {
            Rational h1v = S + 1, h2v = pw(2 * (k - 2)) + 1, h3v = pw(3 * (k - 2)) + 1;
            cert.h_identities = h2v == h1v * h1v - 2 * S && h3v == h1v * (h1v * h1v - 3 * S);
            cert.steps.push_back("h_d = p^(d(k-2)) + 1: h2 = h1^2 - 2p^(k-2), h3 = h1(h1^2 - 3p^(k-2))");
            BiPoly h2 = h1 * h1 - BiPoly(2 * S), h3 = h1 * (h1 * h1 - BiPoly(3 * S));
            cert.steps.push_back("substitute G1 = g1 h1, G2 = g2 h2 and compare with g3 h3");
            residual = G3_of(g1 * h1, g2 * h2) - g3 * h3;
        }
        cert.residual = residual.to_string();
        cert.steps.push_back("residual = " + cert.residual);
        cert.valid = cert.weight_relation && residual.is_zero() && cert.h_identities && cert.g2_consistent;
        out.certificate = std::move(cert);
        return out;
    }
} // namespace smf
