#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "smf/cli/commands.hpp"

using namespace smf;
namespace fs = std::filesystem;

namespace
{
    fs::path scratch_dir(const std::string &tag)
    {
        auto dir = fs::temp_directory_path() / ("smf_cli_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }

    RunConfig config_for(const fs::path &dir, long D, long S)
    {
        RunConfig cfg;
        cfg.cache_dir = dir.string();
        cfg.disc_bound = D;
        cfg.singular_bound = S;
        cfg.sym2_table = SMF_DATA_DIR "/sym2_primes.txt";
        return cfg;
    }

    /// Shared full-size cache, built once per test binary.
    const RunConfig &desk_config()
    {
        static RunConfig cfg = []
        {
            auto c = config_for(scratch_dir("desk"), 3000, 750);
            std::ostringstream os;
            cli::cmd_igusa(c, os);
            return c;
        }();
        return cfg;
    }

    struct RunResult
    {
        int status;
        std::string out;
    };

    RunResult run_cli(const std::string &args)
    {
        auto out_file = fs::temp_directory_path() / ("smf_cli_out_" + std::to_string(::getpid()));
        std::string cmd = std::string(SMF_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
        int raw = std::system(cmd.c_str());
        std::ifstream in(out_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str()};
    }

    Rational random_rational(std::mt19937 &rng)
    {
        std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 5000);
        return make_rational(num(rng), den(rng));
    }
} // namespace

TEST(Cache, RoundTripIsByteExact)
{
    std::mt19937 rng(11);
    for (int j : {0, 2})
    {
        SiegelExpansion<Rational> F(12, j, 60, 15);
        for (const BQF &h : F.index_set())
        {
            if (rng() % 3 == 0)
                continue;
            CoeffValue<Rational> v = j == 0 ? CoeffValue<Rational>::scalar(random_rational(rng))
                                            : CoeffValue<Rational>::quadratic(random_rational(rng), random_rational(rng), random_rational(rng));
            F.set(h, v);
        }
        CacheFile c = cache_from_expansion("F", F);
        std::string first = cache_to_string(c);
        CacheFile back = cache_from_string(first);
        EXPECT_EQ(back, c);
        EXPECT_EQ(cache_to_string(back), first);
        EXPECT_EQ(expansion_from_cache(back), F);
    }
}

TEST(Cache, RejectsCorruption)
{
    SiegelExpansion<Rational> F(10, 0, 20, 5);
    F.set({1, 1, 1}, CoeffValue<Rational>::scalar(Rational(1)));
    F.set({1, 0, 1}, CoeffValue<Rational>::scalar(Rational(-2)));
    F.set({1, 1, 2}, CoeffValue<Rational>::scalar(make_rational(3, 7)));
    std::string good = cache_to_string(cache_from_expansion("X", F));
    EXPECT_NE(good.find("\n1 1 2 3/7\n"), std::string::npos);

    std::string tampered = good;
    tampered.replace(tampered.find("3/7"), 3, "4/7");
    EXPECT_THROW(cache_from_string(tampered), CacheFormatError);

    std::string unreduced = good;
    unreduced.replace(unreduced.find("3/7"), 3, "6/14");
    EXPECT_THROW(cache_from_string(unreduced), CacheFormatError);

    auto body = good.find("1 1 1 1\n");
    std::string swapped = good.substr(0, body) + "1 0 1 -2\n1 1 1 1\n" + good.substr(body + std::string("1 1 1 1\n1 0 1 -2\n").size());
    EXPECT_THROW(cache_from_string(swapped), CacheFormatError);

    EXPECT_THROW(cache_from_string("smf-cache 2\n"), CacheFormatError);
    EXPECT_THROW(cache_from_string("smf-cache 1\nname X\nweight ten 0\n"), CacheFormatError);
}

TEST(Igusa, TinyBoundsAreIdempotent)
{
    auto dir = scratch_dir("tiny");
    auto cfg = config_for(dir, 20, 10);
    std::ostringstream first, second;
    EXPECT_EQ(cli::cmd_igusa(cfg, first), kExitOk);
    for (Igusa g : cli::kAllGenerators)
        EXPECT_TRUE(fs::exists(cli::generator_cache_path(cfg, g)));
    auto x10 = load_cache_file(cli::generator_cache_path(cfg, Igusa::X10));
    ASSERT_FALSE(x10.records.empty());
    EXPECT_EQ(x10.records.front().first, (BQF{1, 1, 1}));
    EXPECT_EQ(x10.records.front().second.v[0], 1);

    auto before = cache_to_string(x10);
    EXPECT_EQ(cli::cmd_igusa(cfg, second), kExitOk);
    EXPECT_EQ(second.str(), "cache up to date\n");
    EXPECT_EQ(cache_to_string(load_cache_file(cli::generator_cache_path(cfg, Igusa::X10))), before);

    {
        std::ofstream clobber(cli::generator_cache_path(cfg, Igusa::E6), std::ios::app);
        clobber << "1 1 50 7\n";
    }
    std::ostringstream third;
    cli::cmd_igusa(cfg, third);
    EXPECT_NE(third.str().find("stale"), std::string::npos);
    EXPECT_NE(third.str().find("wrote"), std::string::npos);

    std::ostringstream basis;
    EXPECT_EQ(cli::cmd_basis(cfg, 14, basis), kExitOk);
    EXPECT_NE(basis.str().find("dim M 2  dim S 1"), std::string::npos);

    EXPECT_THROW(cli::ring_from_cache(config_for(dir, 24, 10)), PreconditionError);
    EXPECT_THROW(cli::ring_from_cache(config_for(scratch_dir("empty"), 20, 10)), PreconditionError);
}

TEST(Igusa, DeskScaleCacheMatchesNormalization)
{
    const auto &cfg = desk_config();
    auto x10 = load_cache_file(cli::generator_cache_path(cfg, Igusa::X10));
    EXPECT_EQ(x10.disc_bound, 3000);
    EXPECT_EQ(x10.singular_bound, 750);
    EXPECT_EQ(x10.records.front().first, (BQF{1, 1, 1}));
    EXPECT_EQ(x10.records.front().second.v[0], 1);
    EXPECT_NO_THROW(cli::ring_from_cache(cfg));
}

TEST(Eigen, WorkedWeights)
{
    const auto &cfg = desk_config();
    std::ostringstream k14, k16, k20;
    cli::cmd_eigen(cfg, 14, k14);
    cli::cmd_eigen(cfg, 16, k16);
    cli::cmd_eigen(cfg, 20, k20);
    EXPECT_NE(k14.str().find("dim S 1"), std::string::npos);
    EXPECT_NE(k16.str().find("degree 1, non-cuspidal"), std::string::npos);
    EXPECT_NE(k16.str().find("degree 2, cuspidal"), std::string::npos);
    EXPECT_NE(k20.str().find("degree 1, cuspidal"), std::string::npos);
    EXPECT_NE(k20.str().find("degree 2, cuspidal"), std::string::npos);
    EXPECT_TRUE(fs::exists(cli::eigen_cache_path(cfg, 20)));

    std::ostringstream again;
    cli::cmd_eigen(cfg, 20, again);
    EXPECT_EQ(again.str(), k20.str());
}

TEST(Verify, CommandsAndDeterminism)
{
    const auto &cfg = desk_config();
    std::ostringstream h32, h32b, s16, h24;
    EXPECT_EQ(cli::cmd_verify(cfg, {"harder", 32, {}, ReportFormat::Json}, h32), kExitOk);
    RunConfig threaded = cfg;
    threaded.threads = 4;
    EXPECT_EQ(cli::cmd_verify(threaded, {"harder", 32, {}, ReportFormat::Json}, h32b), kExitOk);
    EXPECT_EQ(h32.str(), h32b.str());
    auto j = nlohmann::json::parse(h32.str());
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["ell"], "211");

    EXPECT_EQ(cli::cmd_verify(cfg, {"sym2", 16, {}, ReportFormat::Text}, s16), kExitOk);
    EXPECT_NE(s16.str().find("ell 373"), std::string::npos);

    EXPECT_EQ(cli::cmd_verify(cfg, {"harder", 24, {}, ReportFormat::Text}, h24), kExitOk);
    EXPECT_NE(h24.str().find("PASS (vacuous)"), std::string::npos);

    std::ostringstream bad;
    EXPECT_EQ(cli::cmd_verify(cfg, {"harder", 32, {Integer(43)}, ReportFormat::Text}, bad), kExitCongruenceFail);
    EXPECT_THROW(cli::cmd_verify(cfg, {"harder", 30, {}, ReportFormat::Text}, bad), PreconditionError);
}

TEST(LValue, Tables)
{
    RunConfig cfg;
    std::ostringstream r32, r12;
    cli::cmd_lvalue(cfg, {32, 3, ReportFormat::Text}, r32);
    EXPECT_NE(r32.str().find("0.045375"), std::string::npos);
    EXPECT_NE(r32.str().find("23353726728074242500*x^2 - 2119526470366720695*x + 48090744655111646"), std::string::npos);

    cli::cmd_lvalue(cfg, {12, std::nullopt, ReportFormat::Json}, r12);
    auto j = nlohmann::json::parse(r12.str());
    EXPECT_EQ(j["ratios"].size(), 11u);
    for (const auto &row : j["ratios"])
        EXPECT_EQ(row["minpoly"].get<std::string>().find("x^"), std::string::npos) << row["minpoly"];
    EXPECT_TRUE(j["candidate_primes"]["primes"].empty());
}

TEST(Binary, ExitCodes)
{
    const auto &cfg = desk_config();
    std::string dir = "--cache-dir " + cfg.cache_dir;
    EXPECT_EQ(run_cli("--help").status, 0);
    EXPECT_EQ(run_cli("verify banana 32").status, 1);
    EXPECT_EQ(run_cli("--cache-dir /nonexistent/smf basis 14").status, 1);

    auto pass = run_cli(dir + " verify harder 32 --pdelta 2,3,4");
    EXPECT_EQ(pass.status, 0) << pass.out;
    EXPECT_NE(pass.out.find("verdict PASS"), std::string::npos);

    auto fail = run_cli(dir + " verify harder 32 --ell 43 --pdelta 2,3");
    EXPECT_EQ(fail.status, 2) << fail.out;
    EXPECT_NE(fail.out.find("UNMATCHED"), std::string::npos);

    auto rp = run_cli(dir + " check rp 16");
    EXPECT_EQ(rp.status, 0) << rp.out;

    auto cfg_file = fs::path(cfg.cache_dir) / "run.conf";
    {
        std::ofstream c(cfg_file);
        c << "cache-dir=" << cfg.cache_dir << "\npdelta=[2,3]\n";
    }
    auto via_config = run_cli("--config " + cfg_file.string() + " verify sym2 18");
    EXPECT_EQ(via_config.status, 0) << via_config.out;
    EXPECT_NE(via_config.out.find("ell 2879"), std::string::npos);
}
