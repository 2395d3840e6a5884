#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smf/cli/cache.hpp"
#include "smf/cli/config.hpp"
#include "smf/lfunc/lfunc.hpp"
#include "smf/verify/report.hpp"

namespace smf::cli
{
    namespace fs = std::filesystem;

    inline fs::path generator_cache_path(const RunConfig &cfg, Igusa g) { return fs::path(cfg.cache_dir) / (igusa_name(g) + ".cache"); }

    inline fs::path eigen_cache_path(const RunConfig &cfg, int k)
    {
        return fs::path(cfg.cache_dir) / ("eigen_k" + std::to_string(k) + ".txt");
    }

    inline constexpr Igusa kAllGenerators[] = {Igusa::E4, Igusa::E6, Igusa::X10, Igusa::X12};

    /// Writes the four generator caches, or reports "cache up to date" when every file already matches.
    inline int cmd_igusa(const RunConfig &cfg, std::ostream &os)
    {
        cfg.validate();
        fs::create_directories(cfg.cache_dir);
        SiegelRing ring(cfg.disc_bound, cfg.singular_bound);
        bool fresh = true;
        for (Igusa g : kAllGenerators)
        {
            auto path = generator_cache_path(cfg, g);
            CacheFile expected = cache_from_expansion(igusa_name(g), ring.generator_expansion(g));
            bool ok = false;
            if (fs::exists(path))
            {
                try
                {
                    ok = load_cache_file(path) == expected;
                }
                catch (const CacheFormatError &e)
                {
                    os << "stale " << path.string() << ": " << e.what() << "\n";
                }
            }
            if (!ok)
            {
                save_cache_file(path, expected);
                os << "wrote " << path.string() << " (" << expected.records.size() << " records)\n";
                fresh = false;
            }
        }
        if (fresh)
            os << "cache up to date\n";
        return kExitOk;
    }

    /**
     * Ring for downstream commands. The four generator caches must exist, carry the configured
     * bounds, pass their checksums and agree record-by-record with the ring's own coefficients.
     */
    inline std::shared_ptr<SiegelRing> ring_from_cache(const RunConfig &cfg)
    {
        cfg.validate();
        auto ring = std::make_shared<SiegelRing>(cfg.disc_bound, cfg.singular_bound);
        for (Igusa g : kAllGenerators)
        {
            auto path = generator_cache_path(cfg, g);
            if (!fs::exists(path))
                throw PreconditionError("missing Igusa cache " + path.string() + "; run 'smf igusa' with the same bounds first");
            CacheFile c = load_cache_file(path);
            if (c.disc_bound != cfg.disc_bound || c.singular_bound != cfg.singular_bound)
                throw PreconditionError("Igusa cache " + path.string() + " has bounds (" + std::to_string(c.disc_bound) + ", " +
                                        std::to_string(c.singular_bound) + "), configuration asks for (" +
                                        std::to_string(cfg.disc_bound) + ", " + std::to_string(cfg.singular_bound) + ")");
            if (c.name != igusa_name(g) || c.k != igusa_weight(g) || c.j != 0)
                throw CacheFormatError("Igusa cache " + path.string() + " holds the wrong generator");
            for (const auto &[key, value] : c.records)
                if (Rational(ring->generator(g, key)) != value.v[0])
                    throw CacheFormatError("Igusa cache " + path.string() + " disagrees with the generator at " + key.to_string());
        }
        return ring;
    }

    inline int cmd_basis(const RunConfig &cfg, int k, std::ostream &os)
    {
        auto basis = std::make_shared<SatohBasis>(k, ring_from_cache(cfg));
        HeckeEngine engine(basis);
        size_t cusp = engine.phi_matrix().transpose().kernel().size();
        os << "weight (" << k << ",2)  dim M " << basis->size() << "  dim S " << cusp << "\n";
        for (size_t i = 0; i < basis->size(); ++i)
            os << "  B" << i << " = " << basis->label(i) << (basis->element(i).bracket_is_cuspidal() ? "  (cusp bracket)" : "") << "\n";
        return kExitOk;
    }

    namespace detail
    {
        inline std::string coefficient_list(const RationalPolynomial &p)
        {
            std::string out;
            for (const auto &c : p.coefficients())
                out += (out.empty() ? "" : " ") + c.get_str();
            return out.empty() ? "0" : out;
        }

        inline void write_eigen_cache(const fs::path &path, const RunConfig &cfg, int k, const std::vector<EigenSystem> &systems)
        {
            std::ostringstream body;
            body << "smf-eigen 1\nweight " << k << " 2\nbounds " << cfg.disc_bound << " " << cfg.singular_bound << "\nsystems "
                 << systems.size() << "\n";
            for (size_t s = 0; s < systems.size(); ++s)
            {
                const auto &E = systems[s];
                body << "system " << s << "\nt2_factor " << coefficient_list(E.t2_factor) << "\ncuspidal " << (E.cuspidal ? 1 : 0) << "\n";
                for (size_t i = 0; i < E.coordinates.size(); ++i)
                    body << "coordinate " << i << " " << coefficient_list(E.coordinates[i].coordinates()) << "\n";
            }
            smf::detail::FileLock lock(path, true);
            auto tmp = path;
            tmp += ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                out << body.str();
                if (!out.flush())
                    throw std::runtime_error("cannot write " + tmp.string());
            }
            fs::rename(tmp, path);
        }
    } // namespace detail

    /// Factorization of the T(2) characteristic polynomial, one line per orbit, plus the eigenvectors in the Satoh basis.
    inline int cmd_eigen(const RunConfig &cfg, int k, std::ostream &os)
    {
        VerificationWorkspace ws(ring_from_cache(cfg));
        auto &systems = ws.eigensystems(k);
        const auto &basis = ws.engine(k).basis();
        size_t cusp = 0;
        for (const auto &E : systems)
            if (E.cuspidal)
                cusp += static_cast<size_t>(E.field.degree());
        os << "weight (" << k << ",2)  dim M " << basis.size() << "  dim S " << cusp << "\n";
        os << "charpoly T(2) =";
        for (const auto &E : systems)
            os << " (" << E.t2_factor.to_string() << ")";
        os << "\n";
        for (size_t s = 0; s < systems.size(); ++s)
        {
            const auto &E = systems[s];
            os << "system " << s << ": degree " << E.field.degree() << ", " << (E.cuspidal ? "cuspidal" : "non-cuspidal")
               << ", field " << E.field.modulus().to_string("a") << "\n";
            for (size_t i = 0; i < E.coordinates.size(); ++i)
                if (!E.coordinates[i].is_zero())
                    os << "    (" << E.coordinates[i] << ") * " << basis.label(i) << "\n";
        }
        fs::create_directories(cfg.cache_dir);
        detail::write_eigen_cache(eigen_cache_path(cfg, k), cfg, k, systems);
        return kExitOk;
    }

    inline int cmd_eigenvalues(const RunConfig &cfg, int k, const std::vector<long> &p_delta_list, std::ostream &os)
    {
        VerificationWorkspace ws(ring_from_cache(cfg));
        auto &systems = ws.eigensystems(k);
        auto &engine = ws.engine(k);
        for (size_t s = 0; s < systems.size(); ++s)
        {
            os << "system " << s << (systems[s].cuspidal ? " (cuspidal)" : " (non-cuspidal)") << "\n";
            for (long q : p_delta_list)
            {
                auto pp = checked_prime_power(q);
                os << "  lambda(" << q << ") = " << engine.eigenvalue(systems[s], pp.p, pp.delta) << "\n";
            }
        }
        return kExitOk;
    }

    /// Ramanujan-Petersson check of every cuspidal eigenform; exit 2 when some Satake root leaves the circle.
    inline int cmd_check_rp(const RunConfig &cfg, int k, const std::vector<long> &primes, long tolerance_bits, std::ostream &os)
    {
        VerificationWorkspace ws(ring_from_cache(cfg));
        auto &systems = ws.eigensystems(k);
        auto &engine = ws.engine(k);
        bool all = true;
        mpfr_prec_t prec = std::max<mpfr_prec_t>(static_cast<mpfr_prec_t>(cfg.precision_bits), 4 * tolerance_bits + 64);
        for (size_t s = 0; s < systems.size(); ++s)
        {
            if (!systems[s].cuspidal)
                continue;
            for (long p : primes)
            {
                if (!is_prime(p))
                    throw PreconditionError("check rp: " + std::to_string(p) + " is not prime");
                auto d = local_eigen_data(engine, systems[s], p);
                BigFloat dev = rp_deviation(d, k, 2, prec);
                bool ok = dev < BigFloat::pow2(-tolerance_bits, prec);
                all = all && ok;
                os << "system " << s << "  p " << p << "  max relative deviation " << dev.to_string(6) << "  " << (ok ? "ok" : "FAIL") << "\n";
            }
        }
        os << "rp check " << (all ? "PASS" : "FAIL") << "\n";
        return all ? kExitOk : kExitCongruenceFail;
    }

    struct VerifyOptions
    {
        std::string kind;                  ///< "harder" or "sym2"
        int r = 0;
        std::vector<Integer> ells;         ///< overrides the computed or tabulated primes when nonempty
        ReportFormat format = ReportFormat::Text;
    };

    /// Runs every applicable congruence and emits the reports; exit 2 when any of them fails.
    inline int cmd_verify(const RunConfig &cfg, const VerifyOptions &opt, std::ostream &os)
    {
        std::vector<VerificationReport> reports;
        if (opt.kind == "harder")
        {
            if (opt.r % 4 != 0 || opt.r < 12)
                throw PreconditionError("verify harder: r must be a multiple of 4 and at least 12");
            std::vector<Integer> ells = opt.ells;
            std::vector<OrdinaryStatus> status;
            if (ells.empty())
                for (const auto &hp : harder_congruence_primes(opt.r, opt.r / 2 + 2, 0, cfg.precision_bits))
                {
                    ells.push_back(hp.ell);
                    status.push_back(!hp.ordinary ? OrdinaryStatus::Unchecked
                                                  : (*hp.ordinary ? OrdinaryStatus::CheckedTrue : OrdinaryStatus::CheckedFalse));
                }
            else
                for (const auto &ell : ells)
                    status.push_back(ordinary_status(opt.r, ell));
            VerificationWorkspace ws(ring_from_cache(cfg));
            for (size_t i = 0; i < ells.size(); ++i)
                if (status[i] != OrdinaryStatus::CheckedFalse)
                    reports.push_back(verify_harder(ws, opt.r, cfg.p_delta_list, ells[i], status[i]));
            if (reports.empty())
                reports.push_back(vacuous_report(CongruenceKind::Harder, opt.r, cfg.p_delta_list,
                                                 "no ordinary prime above r divides the critical value"));
        }
        else if (opt.kind == "sym2")
        {
            std::vector<Integer> ells = opt.ells;
            if (ells.empty())
            {
                if (cfg.sym2_table.empty())
                    throw PreconditionError("verify sym2: no prime table configured (set sym2_table or pass --ell)");
                ells = sym2_primes_for(load_sym2_table(cfg.sym2_table), opt.r);
            }
            VerificationWorkspace ws(ring_from_cache(cfg));
            reports = verify_sym2(ws, opt.r, cfg.p_delta_list, ells);
        }
        else
            throw PreconditionError("verify: kind must be 'harder' or 'sym2'");

        bool pass = true;
        if (opt.format == ReportFormat::Json)
        {
            auto arr = nlohmann::json::array();
            for (const auto &rep : reports)
            {
                arr.push_back(report_json(rep));
                pass = pass && rep.pass;
            }
            os << arr.dump(2) << "\n";
        }
        else
            for (const auto &rep : reports)
            {
                os << emit_report(rep, ReportFormat::Text);
                pass = pass && rep.pass;
            }
        return pass ? kExitOk : kExitCongruenceFail;
    }

    struct LValueOptions
    {
        int r = 0;
        std::optional<int> t;  ///< all critical points when empty
        ReportFormat format = ReportFormat::Text;
    };

    /**
     * Critical-value ratios Lambda(f, t)/Lambda(f, t0) per Galois orbit with their minimal polynomials.
     * For a single t the large norm primes are listed; over all t only the Harder point r/2 + 2 is scanned.
     */
    inline int cmd_lvalue(const RunConfig &cfg, const LValueOptions &opt, std::ostream &os)
    {
        cfg.validate();
        int r = opt.r;
        if (r < 12 || r % 2 != 0)
            throw PreconditionError("lvalue: r must be even and at least 12");
        long prec = cfg.precision_bits;
        auto forms = eigenforms_for_lvalues(r, static_cast<mpfr_prec_t>(lvalue_coefficient_precision(prec)));
        std::vector<int> ts;
        if (opt.t)
        {
            if (*opt.t < 1 || *opt.t > r - 1)
                throw PreconditionError("lvalue: t must lie in [1, r - 1]");
            ts.push_back(*opt.t);
        }
        else
            for (int t = 1; t <= r - 1; ++t)
                ts.push_back(t);

        nlohmann::json j{{"r", r}, {"precision_bits", prec}};
        auto rows = nlohmann::json::array();
        std::ostringstream text;
        text << "r " << r << "  orbits " << forms.size() << "  precision " << prec << " bits\n";
        for (int t : ts)
        {
            Parity parity = t % 2 == 0 ? Parity::Even : Parity::Odd;
            int t0 = default_t0(parity);
            for (size_t o = 0; o < forms.size(); ++o)
            {
                RationalPolynomial p;
                try
                {
                    p = critical_ratio_minpoly(forms[o], t, t0, prec);
                }
                catch (const ComputationError &e)
                {
                    throw ComputationError(std::string(e.what()) + "; retry with --precision " + std::to_string(2 * prec));
                }
                auto vals = critical_ratio_values(forms[o], t, t0, static_cast<mpfr_prec_t>(prec));
                auto vj = nlohmann::json::array();
                text << "t " << t << "  t0 " << t0 << "  orbit " << o << "  values";
                for (const auto &v : vals)
                {
                    vj.push_back(v.to_string(20));
                    text << " " << v.to_string(20);
                }
                text << "\n    minpoly " << p.to_string() << "\n";
                rows.push_back({{"t", t}, {"t0", t0}, {"orbit", o}, {"values", vj}, {"minpoly", p.to_string()}});
            }
        }
        j["ratios"] = rows;

        std::optional<int> scan;
        if (opt.t)
            scan = *opt.t;
        else if (r % 4 == 0)
            scan = r / 2 + 2;
        if (scan)
        {
            auto primes = harder_congruence_primes(r, *scan, 0, prec);
            auto pj = nlohmann::json::array();
            text << "candidate primes at t = " << *scan << ":";
            if (primes.empty())
                text << " none";
            for (const auto &hp : primes)
            {
                std::string ord = !hp.ordinary ? "unchecked" : (*hp.ordinary ? "ordinary" : "non-ordinary");
                text << " " << hp.ell << " (" << ord << (hp.square_divides ? ", square divides" : "") << ")";
                pj.push_back({{"ell", hp.ell.get_str()}, {"orbit", hp.orbit}, {"ordinary", ord}, {"square_divides", hp.square_divides}});
            }
            text << "\n";
            j["candidate_primes"] = {{"t", *scan}, {"primes", pj}};
        }
        if (opt.format == ReportFormat::Json)
            os << j.dump(2) << "\n";
        else
            os << text.str();
        return kExitOk;
    }
} // namespace smf::cli
