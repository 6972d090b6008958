#include <array>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(ASIANVOL_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kCase1 = "--strike 2 --spot 2 --rate 0.02 --vol 0.1 --maturity 1";

}  // namespace

TEST(Cli, PriceAtmCaseOne) {
    const auto r = run("price " + kCase1 + " --method atm");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "method,strike,price\natm,2.000000,0.055986\n");
}

TEST(Cli, PriceJson) {
    const auto r = run("--format json price " + kCase1 + " --method lead --digits 8");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["method"], "lead");
    EXPECT_NEAR(j["price"].get<double>(), 0.05592335, 1e-8);
}

TEST(Cli, StrikeAtm) {
    const auto r = run("--format json price --strike atm --spot 2 --rate 0.18 --vol 0.3 --maturity 1 --method nlo");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["strike"].get<double>(), 2.1913, 1e-4);
}

TEST(Cli, NloOffAtmIsDomainError) {
    EXPECT_EQ(run("price " + kCase1 + " --method nlo").code, 3);
}

TEST(Cli, FlagValidation) {
    EXPECT_EQ(run("price " + kCase1 + " --method bogus").code, 2);
    EXPECT_EQ(run("price --strike 2 --spot 2 --rate 0.02 --maturity 1").code, 2);
    EXPECT_EQ(run("price --strike -1 --spot 2 --vol 0.1 --maturity 1").code, 2);
    EXPECT_EQ(run("--format xml bench").code, 2);
    EXPECT_EQ(run("bench --table 3").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(Cli, BenchTableOneReportsEveryCell) {
    const auto r = run("bench --table 1");
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "case,k,r,sigma,T,method,price,ref,err_bps,status");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 22);
    // Exit status is 0 only when every cell is within tolerance.
    const bool all_pass = r.out.find("FAIL") == std::string::npos && r.out.find("ERROR") == std::string::npos;
    EXPECT_EQ(r.code, all_pass ? 0 : 1);
    EXPECT_EQ(run("bench --table 1 --tolerance 1e-4").code, 0);
}

TEST(Cli, BenchTableTwoSkips) {
    const auto r = run("bench --table 2");
    EXPECT_NE(r.out.find("4,1.052632,0.05,0.5,1,nlo,nan,0.193188,nan,SKIPPED"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("6,0.952381,0.05,0.5,1,nlo,nan,0.306193,nan,SKIPPED"), std::string::npos);
}

TEST(Cli, BenchFixtureOverride) {
    const auto r = run(std::string("bench --table 1 --tolerance 1e-4 --fixtures ") + ASIANVOL_FIXTURE_FILE);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(run("bench --fixtures /nonexistent/file.txt").code, 2);
}

TEST(Cli, Smile) {
    const auto r = run("smile --rate 0.05 --vol 0.5 --maturity 1 --k-min 0.9 --k-max 1.1 --n-points 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "k,sigma_ln,price,marker");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
    EXPECT_NE(r.out.find(",atm"), std::string::npos);
    const auto c = run("smile --vol 0.5 --maturity 1 --case 2 --n-points 3");
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find(",benchmark"), std::string::npos);
    EXPECT_EQ(run("smile --vol 0.5 --maturity 1 --k-min 1.2 --k-max 0.8").code, 2);
}

TEST(Cli, McCheckIsDeterministic) {
    const std::string args = "--seed 11 mc-check " + kCase1 + " --paths 20000 --steps 64 --antithetic";
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("PASS"), std::string::npos);
    EXPECT_EQ(run("mc-check " + kCase1 + " --paths 11 --antithetic").code, 3);
}

TEST(Cli, McBudget) {
    const std::string cmd = "ASIANVOL_MC_BUDGET=1000 " + std::string(ASIANVOL_CLI) + " mc-check " + kCase1 +
                            " --paths 100 --steps 100 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 4);
}

TEST(Cli, LeadCaseSeven) {
    const auto r = run("price --strike 2 --spot 2 --rate 0.05 --vol 0.5 --maturity 2 --method lead");
    EXPECT_EQ(r.out, "method,strike,price\nlead,2.000000,0.349314\n");
}

TEST(Cli, McDeterministicLimit) {
    const auto r = run("--format json price --strike 1.9 --spot 2 --rate 0.05 --vol 1e-8 --maturity 1 "
                       "--method mc --paths 1000 --digits 10");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    const double a_fwd = 2 * std::expm1(0.05) / 0.05;
    EXPECT_NEAR(j["price"].get<double>(), std::exp(-0.05) * (a_fwd - 1.9), 1e-8);
    EXPECT_LT(j["std_error"].get<double>(), 1e-8);
}

TEST(Cli, SmileCaseFiveAtTheMoneyStrike) {
    const auto r = run("--format json smile --vol 0.5 --maturity 1 --case 5 --k-min 0.9 --k-max 1.1 --n-points 3 "
                       "--method atm");
    ASSERT_EQ(r.code, 0);
    std::istringstream lines(r.out);
    std::string line;
    bool found = false;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        if (j["k"].get<double>() == 1.0 && j["marker"] == "") {
            EXPECT_NEAR(j["price"].get<double>(), 0.246412, 5e-7);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}
