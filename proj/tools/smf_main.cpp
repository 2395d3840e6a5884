#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "smf/cli/commands.hpp"

using namespace smf;

namespace
{
    std::vector<Integer> parse_integers(const std::vector<std::string> &words)
    {
        std::vector<Integer> out;
        for (const auto &w : words)
        {
            Integer z;
            if (z.set_str(w, 10) != 0)
                throw PreconditionError("not an integer: " + w);
            out.push_back(z);
        }
        return out;
    }

    ReportFormat parse_format(const std::string &s)
    {
        if (s == "text")
            return ReportFormat::Text;
        if (s == "json")
            return ReportFormat::Json;
        throw PreconditionError("format must be 'text' or 'json'");
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Degree-2 Siegel modular forms of weight (k,2) and the congruences they take part in.\n"
                 "Exit status: 0 success or pass, 1 computational or usage failure, 2 congruence or check FAIL."};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file (keys are the long option names)");

    RunConfig cfg;
    cfg.sym2_table = SMF_DATA_DIR "/sym2_primes.txt";
    std::string out_path;
    app.add_option("--disc-bound", cfg.disc_bound, "Discriminant bound D")->capture_default_str();
    app.add_option("--singular-bound", cfg.singular_bound, "Singular bound S")->capture_default_str();
    app.add_option("--precision", cfg.precision_bits, "Working precision in bits for L-values")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Thread count (results do not depend on it)")->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "Cache directory")->envname("SMF_CACHE_DIR")->capture_default_str();
    app.add_option("--pdelta", cfg.p_delta_list, "Prime powers p^delta with delta <= 3")->delimiter(',')->capture_default_str();
    app.add_option("--sym2-table", cfg.sym2_table, "Symmetric-square prime table (lines 'r t ell dim')")->capture_default_str();
    app.add_option("-o,--output", out_path, "Write the command output to this file instead of stdout");

    int k = 0, r = 0;
    std::string kind, format = "text", t_arg;
    std::vector<long> primes;
    std::vector<std::string> ell_words;
    long tolerance_bits = 40;

    auto *igusa = app.add_subcommand("igusa", "Compute or check the generator caches E4, E6, X10, X12");
    auto *basis = app.add_subcommand("basis", "List the Satoh basis of M_{k,2}");
    basis->add_option("k", k, "Weight k")->required();
    auto *eigen = app.add_subcommand("eigen", "Decompose M_{k,2} under T(2)");
    eigen->add_option("k", k, "Weight k")->required();
    auto *eigenvalues = app.add_subcommand("eigenvalues", "Hecke eigenvalues lambda(p^delta)");
    eigenvalues->add_option("k", k, "Weight k")->required();
    eigenvalues->add_option("--primes", primes, "Prime powers p^delta")->delimiter(',')->required();
    auto *verify = app.add_subcommand("verify", "Check the Harder or symmetric-square congruence for weight r");
    verify->add_option("kind", kind, "harder or sym2")->required()->check(CLI::IsMember({"harder", "sym2"}));
    verify->add_option("r", r, "Elliptic weight r")->required();
    verify->add_option("--ell", ell_words, "Primes to check instead of the computed or tabulated ones")->delimiter(',');
    verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    auto *lvalue = app.add_subcommand("lvalue", "Critical-value ratios, minimal polynomials and candidate primes");
    lvalue->add_option("r", r, "Elliptic weight r")->required();
    lvalue->add_option("t", t_arg, "Critical point t, or 'all' (default)");
    lvalue->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    auto *check = app.add_subcommand("check", "Consistency checks");
    check->require_subcommand(1);
    check->fallthrough();
    auto *rp = check->add_subcommand("rp", "Ramanujan-Petersson bound for the cuspidal eigenforms of weight (k,2)");
    rp->add_option("k", k, "Weight k")->required();
    rp->add_option("--primes", primes, "Primes p")->delimiter(',')->default_str("2,3,5");
    rp->add_option("--tolerance-bits", tolerance_bits, "Relative tolerance 2^-bits")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitFailure;
    }

    std::ofstream file;
    if (!out_path.empty())
    {
        file.open(out_path, std::ios::trunc);
        if (!file)
        {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitFailure;
        }
    }
    std::ostream &os = out_path.empty() ? std::cout : file;

    try
    {
        cfg.validate();
        if (*igusa)
            return cli::cmd_igusa(cfg, os);
        if (*basis)
            return cli::cmd_basis(cfg, k, os);
        if (*eigen)
            return cli::cmd_eigen(cfg, k, os);
        if (*eigenvalues)
            return cli::cmd_eigenvalues(cfg, k, primes, os);
        if (*verify)
            return cli::cmd_verify(cfg, {kind, r, parse_integers(ell_words), parse_format(format)}, os);
        if (*lvalue)
        {
            cli::LValueOptions opt{r, std::nullopt, parse_format(format)};
            if (!t_arg.empty() && t_arg != "all")
                opt.t = std::stoi(t_arg);
            return cli::cmd_lvalue(cfg, opt, os);
        }
        if (*rp)
            return cli::cmd_check_rp(cfg, k, primes.empty() ? std::vector<long>{2, 3, 5} : primes, tolerance_bits, os);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
