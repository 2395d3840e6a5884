#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "smf/cli/cache.hpp"
#include "smf/lfunc/lfunc.hpp"
#include "smf/verify/verify.hpp"

using namespace smf;

namespace
{
    /// Tolerances and budgets, fixed here for every run.
    constexpr long kDisc = 3000, kSingular = 750;
    constexpr double kIgusaBudgetSeconds = 600;
    constexpr double kHarderBudgetSeconds = 3600;
    constexpr long kRpToleranceBits = 40;
    constexpr double kRatioTarget = 0.045375, kRatioRelTol = 1e-4;
    constexpr int kIdentityTrials = 1000;
    const std::vector<long> kDeskPDelta{2, 3, 4, 5, 7, 8, 9};

    struct Outcome
    {
        enum class Status
        {
            Pass,
            Fail,
            Skip
        } status = Status::Pass;
        std::string detail;
    };

    class Checker
    {
    public:
        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass_ = false;
                failures_.push_back(what);
            }
        }
        void note(const std::string &s) { notes_.push_back(s); }
        Outcome outcome() const
        {
            Outcome o;
            o.status = pass_ ? Outcome::Status::Pass : Outcome::Status::Fail;
            std::string d;
            for (const auto &f : failures_)
                d += (d.empty() ? "" : "; ") + std::string("failed: ") + f;
            for (const auto &n : notes_)
                d += (d.empty() ? "" : "; ") + n;
            o.detail = d;
            return o;
        }

    private:
        bool pass_ = true;
        std::vector<std::string> failures_, notes_;
    };

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    std::string fmt_seconds(double s)
    {
        std::ostringstream os;
        os.precision(3);
        os << s << "s";
        return os.str();
    }

    struct Context
    {
        std::shared_ptr<SiegelRing> ring;
        std::unique_ptr<VerificationWorkspace> ws;
    };

    Outcome criterion1()
    {
        Checker c;
        auto t0 = std::chrono::steady_clock::now();
        auto g = igusa_generators(kDisc, kSingular);
        SiegelRing ring(kDisc, kSingular);
        double elapsed = seconds_since(t0);
        auto phi4 = phi_operator(g.E4), phi6 = phi_operator(g.E6);
        auto e4 = eisenstein_qexp(4, 50), e6 = eisenstein_qexp(6, 50);
        bool ok4 = true, ok6 = true;
        for (size_t n = 0; n < 50; ++n)
        {
            ok4 = ok4 && phi4[n] == e4[n];
            ok6 = ok6 && phi6[n] == e6[n];
        }
        c.require(ok4, "Phi(E4) = E4 to 50 terms");
        c.require(ok6, "Phi(E6) = E6 to 50 terms");
        bool cusp = true;
        for (long s = 0; s <= kSingular; ++s)
            cusp = cusp && g.X10.stored({0, 0, s}).is_zero() && g.X12.stored({0, 0, s}).is_zero();
        c.require(cusp, "singular coefficients of X10, X12 vanish");
        c.require(g.X10.stored({1, 1, 1}).v[0] == 1 && g.X12.stored({1, 1, 1}).v[0] == 1, "X10, X12 normalized at [1,1,1]");
        c.require(ring.generator_expansion(Igusa::X12) == g.X12 && ring.generator_expansion(Igusa::E6) == g.E6,
                  "lazy ring agrees with the lifted tables");
        c.require(elapsed < kIgusaBudgetSeconds, "runtime under 10 minutes");
        c.note("D=3000 S=750 in " + fmt_seconds(elapsed));
        return c.outcome();
    }

    size_t cusp_dim(std::vector<EigenSystem> &systems)
    {
        size_t d = 0;
        for (const auto &E : systems)
            if (E.cuspidal)
                d += static_cast<size_t>(E.field.degree());
        return d;
    }

    Outcome criterion2(Context &ctx, bool stretch)
    {
        Checker c;
        std::vector<std::pair<int, size_t>> expected{{14, 1}, {16, 2}, {18, 2}, {20, 3}};
        if (stretch)
        {
            expected.emplace_back(22, 5);
            expected.emplace_back(24, 5);
        }
        std::string seen;
        for (auto [k, dim] : expected)
        {
            auto &systems = ctx.ws->eigensystems(k);
            size_t from_orbits = cusp_dim(systems);
            size_t from_phi = ctx.ws->engine(k).phi_matrix().transpose().kernel().size();
            c.require(from_orbits == dim && from_phi == dim, "dim S_{" + std::to_string(k) + ",2} = " + std::to_string(dim));
            seen += (seen.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(from_orbits) + "/" +
                    std::to_string(ctx.ws->engine(k).dim());
        }
        c.note("k:dimS/dimM " + seen + (stretch ? "" : " (k=22,24 with --long)"));
        return c.outcome();
    }

    Outcome criterion3(Context &ctx)
    {
        Checker c;
        std::string seen;
        for (int k : {14, 16, 18, 20})
        {
            auto cp = ctx.ws->engine(k).cusp_t2().T.charpoly();
            std::vector<long> degs;
            for (const auto &[f, m] : factor_rational(cp).factors)
                for (unsigned i = 0; i < m; ++i)
                    degs.push_back(f.degree());
            std::sort(degs.begin(), degs.end());
            std::vector<long> want = k == 20 ? std::vector<long>{1, 2} : std::vector<long>{static_cast<long>(cp.degree())};
            c.require(degs == want, "cusp T(2) factorization at k=" + std::to_string(k));
            std::string d;
            for (long x : degs)
                d += (d.empty() ? "" : "+") + std::to_string(x);
            seen += (seen.empty() ? "" : " ") + std::to_string(k) + ":" + d;
        }
        c.note("factor degrees " + seen);
        return c.outcome();
    }

    Outcome criterion4(Context &ctx)
    {
        Checker c;
        size_t forms = 0;
        for (int k : {14, 16, 18, 20})
        {
            auto &systems = ctx.ws->eigensystems(k);
            for (auto &E : systems)
            {
                if (!E.cuspidal)
                    continue;
                ++forms;
                for (long p : {2, 3, 5})
                {
                    auto d = local_eigen_data(ctx.ws->engine(k), E, p);
                    c.require(rp_check(d, k, 2, kRpToleranceBits),
                              "k=" + std::to_string(k) + " degree " + std::to_string(E.field.degree()) + " p=" + std::to_string(p));
                }
            }
        }
        c.note(std::to_string(forms) + " Galois orbits, p in {2,3,5}, tolerance 2^-40");
        return c.outcome();
    }

    Outcome criterion5(Context &ctx, bool enabled)
    {
        if (!enabled)
            return {Outcome::Status::Skip, "long-running stretch check; run with --long"};
        Checker c;
        auto &systems = ctx.ws->eigensystems(22);
        std::vector<const EigenSystem *> eis;
        for (const auto &E : systems)
            if (!E.cuspidal)
                eis.push_back(&E);
        size_t dim = 0;
        for (auto *E : eis)
            dim += static_cast<size_t>(E->field.degree());
        c.require(dim == 2, "non-cuspidal part of M_{22,2} is 2-dimensional");
        c.require(eis.size() == 1 && eis[0]->t2_factor.degree() == 2, "a single irreducible quadratic T(2) factor");
        c.note("non-cuspidal dim " + std::to_string(dim) + " in " + std::to_string(eis.size()) + " orbit(s)");
        return c.outcome();
    }

    Outcome criterion6(Context &ctx)
    {
        Checker c;
        auto t0 = std::chrono::steady_clock::now();
        const std::vector<std::pair<int, long>> cases{{32, 211}, {36, 269741}, {40, 509}, {40, 1447}};
        for (auto [r, ell] : cases)
        {
            auto rep = verify_harder(*ctx.ws, r, kDeskPDelta, Integer(ell));
            c.require(rep.pass && !rep.vacuous, "(" + std::to_string(r) + ", " + std::to_string(ell) + ")");
        }
        for (int r : {32, 36, 40})
        {
            std::set<Integer> found;
            for (const auto &hp : harder_congruence_primes(r, r / 2 + 2))
                if (hp.ordinary.value_or(false))
                    found.insert(hp.ell);
            std::set<Integer> want;
            for (auto [rr, ell] : cases)
                if (rr == r)
                    want.insert(Integer(ell));
            c.require(found == want, "ordinary large primes at r=" + std::to_string(r) + " match the desk cases");
        }
        for (int r : {12, 16, 20, 24, 28})
            c.require(harder_congruence_primes(r, r / 2 + 2).empty(), "vacuity at r=" + std::to_string(r));
        double elapsed = seconds_since(t0);
        c.require(elapsed < kHarderBudgetSeconds, "runtime under 1 hour");
        c.note("4 cases x 7 prime powers, vacuity r=12..28, " + fmt_seconds(elapsed));
        return c.outcome();
    }

    Outcome criterion7(Context &ctx)
    {
        Checker c;
        const std::vector<std::pair<int, long>> cases{{16, 373}, {18, 541}, {18, 2879}, {20, 439367}, {22, 281}, {22, 286397}};
        for (auto [r, ell] : cases)
        {
            auto reps = verify_sym2(*ctx.ws, r, kDeskPDelta, {Integer(ell)});
            c.require(reps.size() == 1 && reps[0].pass && !reps[0].vacuous, "(" + std::to_string(r) + ", " + std::to_string(ell) + ")");
        }
        c.note("6 cases x 7 prime powers; r=12 vacuity needs the symmetric-square value, which is an input here (not checked)");
        return c.outcome();
    }

    Outcome criterion8()
    {
        Checker c;
        auto forms = eigenforms_for_lvalues(32, static_cast<mpfr_prec_t>(lvalue_coefficient_precision(kDefaultLPrecision)));
        c.require(forms.size() == 1, "one Galois orbit at r=32");
        if (forms.size() != 1)
            return c.outcome();
        auto vals = critical_ratio_values(forms[0], 3, 1, 256);
        bool hit = false;
        for (const auto &v : vals)
            hit = hit || std::abs(v.to_double() / kRatioTarget - 1) < kRatioRelTol;
        c.require(hit, "ratio 0.045375 to 4 significant figures");
        auto p = critical_ratio_minpoly(forms[0], 3, 1);
        auto quoted = poly_from_integers({18826702, -471820065, 1254224510});
        c.require(p == quoted, "minimal polynomial equals 1254224510x^2 - 471820065x + 18826702 (recognized: " + p.to_string() + ")");
        auto primes = harder_congruence_primes(32, 18);
        c.require(primes.size() == 1 && primes[0].ell == 211 && primes[0].ordinary.value_or(false), "Harder primes at r=32 = {211}, ordinary");
        return c.outcome();
    }

    Outcome criterion9()
    {
        Checker c;
        auto delta = delta_qexp(100);
        size_t count = 0;
        for (long p = 2; p < 100; ++p)
        {
            if (!is_prime(p))
                continue;
            ++count;
            Integer lhs = delta[static_cast<size_t>(p)].get_num() - ipow(p, 11) - 1;
            c.require(mpz_divisible_ui_p(lhs.get_mpz_t(), 691) != 0, "tau(" + std::to_string(p) + ") mod 691");
        }
        c.require(is_ordinary(12, Integer(691)), "is_ordinary(12, 691)");
        c.note(std::to_string(count) + " primes below 100");
        return c.outcome();
    }

    SiegelExpansion<Rational> combine(const Rational &a, const SiegelExpansion<Rational> &F, const Rational &b,
                                      const SiegelExpansion<Rational> &G)
    {
        SiegelExpansion<Rational> out(F.k(), F.j(), std::min(F.disc_bound(), G.disc_bound()),
                                      std::min(F.singular_bound(), G.singular_bound()));
        for (const BQF &h : out.index_set())
            out.set(h, a * F.stored(h) + b * G.stored(h));
        return out;
    }

    Outcome criterion10(Context &ctx)
    {
        Checker c;
        std::mt19937 rng(20261018);
        auto rnd = [&](long lo, long hi)
        { return std::uniform_int_distribution<long>(lo, hi)(rng); };
        auto rrat = [&]()
        { return make_rational(rnd(-50, 50), rnd(1, 20)); };

        // Ring laws on small tables.
        auto g = igusa_generators(60, 20);
        const SiegelExpansion<Rational> *gens[] = {&g.E4, &g.E6, &g.X10, &g.X12};
        bool laws = true;
        for (int trial = 0; trial < 6; ++trial)
        {
            const auto &F = *gens[rnd(0, 3)], &G = *gens[rnd(0, 3)], &H = *gens[rnd(0, 3)];
            laws = laws && multiply(F, G) == multiply(G, F);
            laws = laws && multiply(multiply(F, G), H) == multiply(F, multiply(G, H));
            Rational a = rrat(), b = rrat();
            auto E4E6 = multiply(g.E4, g.E6);
            laws = laws && multiply(F, combine(a, E4E6, b, g.X10)) == combine(a, multiply(F, E4E6), b, multiply(F, g.X10));
        }
        c.require(laws, "ring laws");

        // Coset representatives: count, and every sampled SL2(Z) element lies in exactly one coset.
        bool cosets = true;
        const IMat2 S{0, -1, 1, 0}, T{1, 1, 0, 1}, Ti{1, -1, 0, 1};
        for (long p : {2, 3, 5, 7})
            for (int beta : {1, 2})
            {
                auto reps = coset_reps(p, beta);
                long N = ipow(p, static_cast<unsigned long>(beta)).get_si();
                cosets = cosets && static_cast<long>(reps.reps.size()) == N / p * (p + 1);
                for (int trial = 0; trial < 40; ++trial)
                {
                    IMat2 U = IMat2::identity();
                    for (int step = 0, n = static_cast<int>(rnd(1, 12)); step < n; ++step)
                        U = U * (rnd(0, 2) == 0 ? S : (rnd(0, 1) ? T : Ti));
                    int hits = 0;
                    for (const auto &R : reps.reps)
                        hits += gamma0_equivalent(R, U, N) ? 1 : 0;
                    cosets = cosets && hits == 1;
                }
            }
        c.require(cosets, "coset representatives complete for p <= 7, beta <= 2");

        // Pivot independence of the T(2) matrix.
        bool pivots = true;
        for (int k : {14, 16, 20})
        {
            auto &engine = ctx.ws->engine(k);
            auto base = engine.t2_matrix().T;
            for (unsigned seed : {1u, 7u, 99u})
                pivots = pivots && engine.t2_matrix(seed).T == base;
        }
        c.require(pivots, "t2_matrix independent of pivot order");

        // mu recursions: the delta = 3 expression through delta = 1, 2 on both sides, and the cube certificate.
        bool identities = true;
        for (int trial = 0; trial < kIdentityTrials; ++trial)
        {
            long p = std::array<long, 4>{2, 3, 5, 7}[static_cast<size_t>(rnd(0, 3))];
            int k = static_cast<int>(2 * rnd(5, 12)), j = 2, r = 2 * k;
            Rational lp = rrat(), lp2 = rrat(), ap = rrat();
            auto d = local_eigen_data(lp, lp2, p, k, j);
            auto G1 = mu_siegel(d, k, j, 1), G2 = mu_siegel(d, k, j, 2), G3 = mu_siegel(d, k, j, 3);
            NumberFieldElement P(Rational(ipow(p, static_cast<unsigned long>(2 * k + j - 3))));
            identities = identities && G3 == NumberFieldElement(Rational(1, 2)) * G1 *
                                                 (NumberFieldElement(0) - G1 * G1 + NumberFieldElement(3) * G2 + NumberFieldElement(6) * P);
            NumberFieldElement Q(Rational(ipow(p, static_cast<unsigned long>(r - 1))));
            auto g1 = mu_elliptic(NumberFieldElement(ap), p, r, 1), g2 = mu_elliptic(NumberFieldElement(ap), p, r, 2),
                 g3 = mu_elliptic(NumberFieldElement(ap), p, r, 3);
            identities = identities && g2 == g1 * g1 - NumberFieldElement(2) * Q && g3 == g1 * (g1 * g1 - NumberFieldElement(3) * Q);
            if (trial % 50 == 0)
            {
                auto cube = cube_reduction(g1, g2, G1, G2, p, r, k, j, CongruenceKind::Harder);
                identities = identities && cube.certificate.valid;
            }
        }
        c.require(identities, "mu recursions on 1000 random inputs");

        // Functional equation residuals.
        bool feq = true;
        for (int r : {12, 16, 20})
        {
            auto f = elliptic_eigenforms(r, 200)[0];
            auto a = embedded_coefficients(f, eigenform_embeddings(f, 320)[0]);
            for (int trial = 0; trial < 3; ++trial)
            {
                double s = 1 + (r - 2) * std::uniform_real_distribution<double>(0, 1)(rng);
                auto v1 = lambda_value(a, r, BigFloat(s, 256), 256);
                auto v2 = lambda_value(a, r, BigFloat(static_cast<long>(r), 256) - BigFloat(s, 256), 256);
                BigFloat sign(r % 4 == 0 ? 1L : -1L, 256);
                feq = feq && abs(v1.value - sign * v2.value) <= v1.error_bound + v2.error_bound;
            }
        }
        c.require(feq, "functional equation within the error bounds");

        // Cache round trip.
        bool cache = true;
        for (int j : {0, 2})
        {
            SiegelExpansion<Rational> F(12, j, 80, 20);
            for (const BQF &h : F.index_set())
                F.set(h, j == 0 ? CoeffValue<Rational>::scalar(rrat()) : CoeffValue<Rational>::quadratic(rrat(), rrat(), rrat()));
            auto text = cache_to_string(cache_from_expansion("F", F));
            auto back = cache_from_string(text);
            cache = cache && cache_to_string(back) == text && expansion_from_cache(back) == F;
        }
        c.require(cache, "cache round trip byte-exact");
        c.note("ring laws, cosets, pivots, 1000 identity trials, functional equation, cache");
        return c.outcome();
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Acceptance run: one PASS/FAIL/SKIP line per criterion 1-10."};
    bool long_checks = false;
    std::vector<int> expect_red, only;
    app.add_flag("--long", long_checks, "Also run the long-running stretch checks (criterion 5, k = 22 and 24 in criterion 2)");
    app.add_option("--expect-red", expect_red, "Criteria known to fail; exit 0 iff exactly these fail")->delimiter(',');
    app.add_option("--only", only, "Run only these criteria")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    Context ctx;
    std::set<int> selected(only.begin(), only.end());
    auto wanted = [&](int n)
    { return selected.empty() || selected.count(n) > 0; };
    std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, [&]
         { return criterion1(); }},
        {2, [&]
         { return criterion2(ctx, long_checks); }},
        {3, [&]
         { return criterion3(ctx); }},
        {4, [&]
         { return criterion4(ctx); }},
        {5, [&]
         { return criterion5(ctx, long_checks); }},
        {6, [&]
         { return criterion6(ctx); }},
        {7, [&]
         { return criterion7(ctx); }},
        {8, [&]
         { return criterion8(); }},
        {9, [&]
         { return criterion9(); }},
        {10, [&]
         { return criterion10(ctx); }},
    };

    std::set<int> red;
    for (auto &[n, run] : criteria)
    {
        if (!wanted(n))
            continue;
        if (!ctx.ws)
        {
            ctx.ring = std::make_shared<SiegelRing>(kDisc, kSingular);
            ctx.ws = std::make_unique<VerificationWorkspace>(ctx.ring);
        }
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = run();
        }
        catch (const std::exception &e)
        {
            o = {Outcome::Status::Fail, std::string("exception: ") + e.what()};
        }
        const char *label = o.status == Outcome::Status::Pass ? "PASS" : (o.status == Outcome::Status::Fail ? "FAIL" : "SKIP");
        if (o.status == Outcome::Status::Fail)
            red.insert(n);
        std::cout << "criterion " << n << ": " << label << "  [" << fmt_seconds(seconds_since(t0)) << "]  " << o.detail << std::endl;
    }

    std::set<int> expected;
    for (int n : expect_red)
        if (wanted(n))
            expected.insert(n);
    if (red == expected)
    {
        if (!red.empty())
            std::cout << "known red criteria reproduced as expected\n";
        return 0;
    }
    std::cout << "unexpected result: red set differs from --expect-red\n";
    return 1;
}
