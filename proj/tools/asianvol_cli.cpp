// asianvol: short-maturity Asian option pricing from the command line.
//
//   asianvol price   --strike 2 --spot 2 --rate 0.02 --vol 0.1 --maturity 1 --method atm
//   asianvol bench   --table 1
//   asianvol smile   --rate 0.05 --vol 0.5 --maturity 1 --k-min 0.8 --k-max 1.2
//   asianvol mc-check --strike 2 --spot 2 --rate 0.02 --vol 0.1 --maturity 1
//
// Exit codes: 0 success, 1 benchmark or check failure, 2 invalid flags,
// 3 domain error (e.g. NLO away from the forward), 4 other runtime errors.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "asianvol/bench.hpp"
#include "asianvol/bspricer.hpp"
#include "asianvol/errors.hpp"
#include "asianvol/mcoracle.hpp"
#include "asianvol/nlo.hpp"
#include "asianvol/smile.hpp"
#include "asianvol/volexp.hpp"

namespace {

using namespace asianvol;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitRuntime = 4;

enum class Format { Csv, Json };

struct GlobalOptions {
    Format format = Format::Csv;
    std::uint64_t seed = McConfig{}.seed;
};

struct MarketFlags {
    std::string strike = "1";
    double spot = 1.0;
    double rate = 0.0;
    double dividend = 0.0;
    double vol = 0.2;
    double maturity = 1.0;
    OptionSide side = OptionSide::Call;

    MarketParams params() const {
        MarketParams p;
        p.spot = spot;
        p.rate = rate;
        p.dividend = dividend;
        p.vol = vol;
        p.maturity = maturity;
        p.validate();
        return p;
    }

    // "atm" selects the forward of the average.
    double strike_value() const {
        if (strike == "atm") {
            return volexp::forward_price(params());
        }
        std::size_t used = 0;
        double k = 0.0;
        try {
            k = std::stod(strike, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != strike.size() || !(k > 0.0)) {
            throw CLI::ValidationError("--strike", "must be a positive number or 'atm'");
        }
        return k;
    }
};

struct McFlags {
    std::uint64_t paths = 200000;
    std::uint32_t steps = 252;
    bool antithetic = false;

    McConfig config(const GlobalOptions& g) const {
        McConfig c;
        c.paths = paths;
        c.steps = steps;
        c.seed = g.seed;
        c.antithetic = antithetic;
        if (const char* env = std::getenv("ASIANVOL_MC_BUDGET")) {
            char* end = nullptr;
            const unsigned long long b = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') {
                throw CLI::ValidationError("ASIANVOL_MC_BUDGET", "must be an unsigned integer");
            }
            c.budget = b;
        }
        return c;
    }
};

void add_market_flags(CLI::App* cmd, MarketFlags& m, bool with_strike) {
    if (with_strike) {
        cmd->add_option("--strike", m.strike, "Strike, or 'atm' for the forward average")->required();
    }
    cmd->add_option("--spot", m.spot, "Spot price S0")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--rate", m.rate, "Continuously-compounded rate r")->capture_default_str();
    cmd->add_option("--dividend", m.dividend, "Dividend yield q")->capture_default_str();
    cmd->add_option("--vol", m.vol, "Volatility sigma")->check(CLI::PositiveNumber)->required();
    cmd->add_option("--maturity", m.maturity, "Maturity T in years")->check(CLI::PositiveNumber)->required();
    cmd->add_option("--side", m.side, "call or put")
        ->transform(CLI::CheckedTransformer(std::map<std::string, OptionSide>{{"call", OptionSide::Call},
                                                                               {"put", OptionSide::Put}},
                                            CLI::ignore_case));
}

void add_mc_flags(CLI::App* cmd, McFlags& f) {
    cmd->add_option("--paths", f.paths, "Monte Carlo paths")->check(CLI::Range(std::uint64_t{1}, UINT64_MAX))
        ->capture_default_str();
    cmd->add_option("--steps", f.steps, "Time steps per path")->check(CLI::Range(2u, UINT32_MAX))
        ->capture_default_str();
    cmd->add_flag("--antithetic", f.antithetic, "Pair each path with its sign-flipped driver");
}

const std::map<std::string, Order> kOrderMethods{
    {"lead", Order::Leading}, {"atm", Order::AtmCorrection}, {"lin", Order::Linear}, {"quad", Order::Quadratic}};

std::string fixed(double v, int digits) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, bench::round_half_even(v, digits));
    return buf;
}

// Prints one record; `fields` keeps insertion order.
void print_record(const GlobalOptions& g, const std::vector<std::pair<std::string, nlohmann::ordered_json>>& fields,
                  int digits) {
    if (g.format == Format::Json) {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : fields) {
            j[k] = v.is_number_float() ? nlohmann::ordered_json(bench::round_half_even(v.get<double>(), digits)) : v;
        }
        std::cout << j.dump() << '\n';
        return;
    }
    std::string header, row;
    for (const auto& [k, v] : fields) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += k;
        row += v.is_number_float() ? fixed(v.get<double>(), digits)
               : v.is_string()     ? v.get<std::string>()
                                   : v.dump();
    }
    std::cout << header << '\n' << row << '\n';
}

int run_price(const GlobalOptions& g, const MarketFlags& m, const McFlags& mcf, const std::string& method,
              int digits) {
    const MarketParams p = m.params();
    const double strike = m.strike_value();
    if (method == "mc") {
        const McResult r = mc::asian_price(strike, p, m.side, mcf.config(g));
        print_record(g, {{"method", method}, {"strike", strike}, {"price", r.price}, {"std_error", r.std_error}},
                     digits);
        return 0;
    }
    const VolSource source = (method == "nlo") ? VolSource{NloAtm{}} : VolSource{kOrderMethods.at(method)};
    const double price = bs::asian_price(strike, p, source, m.side);
    print_record(g, {{"method", method}, {"strike", strike}, {"price", price}}, digits);
    return 0;
}

int run_bench(const GlobalOptions& g, int table, double tolerance, const std::string& fixtures) {
    const auto cases = fixtures.empty() ? bench::embedded_cases()
                                        : bench::group_cases(bench::parse_fixtures(bench::read_fixture_file(fixtures)));
    const auto report = bench::run_benchmark(cases, table, tolerance);
    std::cout << (g.format == Format::Json ? bench::format_json(report) : bench::format_csv(report));
    for (const auto& r : report.rows) {
        if (!r.reason.empty()) {
            std::cerr << "case " << r.case_id << " " << r.method << " " << bench::to_string(r.status) << ": "
                      << r.reason << '\n';
        }
    }
    return report.passed() ? 0 : kExitCheckFailed;
}

int run_smile(const GlobalOptions& g, const MarketFlags& m, double k_min, double k_max, int n_points,
              const std::string& method, std::optional<int> case_id) {
    MarketParams p = m.params();
    std::optional<bench::BenchmarkCase> bc;
    if (case_id) {
        for (const auto& c : bench::embedded_cases()) {
            if (c.case_id == *case_id) bc = c;
        }
        if (!bc) throw CLI::ValidationError("--case", "no such benchmark case");
        p = bc->params();
    }
    auto points = smile::curve(p, k_min, k_max, n_points, kOrderMethods.at(method), m.side);
    if (bc && bc->ref_benchmark) {
        points.push_back({bc->k(), bench::benchmark_implied_vol(*bc), *bc->ref_benchmark, "benchmark"});
    }
    if (g.format == Format::Csv) {
        std::cout << smile::kCsvHeader << '\n';
    }
    for (const auto& pt : points) {
        if (g.format == Format::Json) {
            nlohmann::ordered_json j;
            j["k"] = pt.k;
            j["sigma_ln"] = pt.sigma_ln;
            j["price"] = pt.price;
            j["marker"] = pt.marker;
            std::cout << j.dump() << '\n';
        } else {
            std::printf("%.10g,%.10g,%.10g,%s\n", pt.k, pt.sigma_ln, pt.price, pt.marker.c_str());
        }
    }
    return 0;
}

int run_mc_check(const GlobalOptions& g, const MarketFlags& m, const McFlags& mcf, int digits) {
    const MarketParams p = m.params();
    const double strike = m.strike_value();
    const McResult r = mc::asian_price(strike, p, m.side, mcf.config(g));
    const double asymptotic = bs::asian_price(strike, p, Order::Linear, m.side);
    const double diff = r.price - asymptotic;
    const double tol = std::max(3.0 * r.std_error, 2e-4);
    const bool ok = std::abs(diff) <= tol;
    print_record(g,
                 {{"strike", strike},
                  {"mc_price", r.price},
                  {"std_error", r.std_error},
                  {"asymptotic_lin", asymptotic},
                  {"diff", diff},
                  {"tolerance", tol},
                  {"status", ok ? "PASS" : "FAIL"}},
                 digits);
    return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short-maturity asymptotic pricing of arithmetic-average Asian options"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--format", g.format, "Output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}},
                                            CLI::ignore_case))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Monte Carlo seed")->capture_default_str();

    MarketFlags market;
    McFlags mcf;
    std::string method = "lin";
    int digits = 6;

    auto* price = app.add_subcommand("price", "Price one Asian option");
    add_market_flags(price, market, true);
    add_mc_flags(price, mcf);
    price->add_option("--method", method, "lead, atm, lin, quad, nlo or mc")
        ->check(CLI::IsMember({"lead", "atm", "lin", "quad", "nlo", "mc"}))
        ->capture_default_str();
    price->add_option("--digits", digits, "Decimal places in the output")->check(CLI::Range(0, 17))
        ->capture_default_str();

    int table = 1;
    double tolerance = 1e-6;
    std::string fixtures;
    auto* benchcmd = app.add_subcommand("bench", "Recompute the benchmark tables");
    benchcmd->add_option("--table", table, "1 (expansion orders) or 2 (NLO)")->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    benchcmd->add_option("--tolerance", tolerance, "Absolute price tolerance")->check(CLI::PositiveNumber)
        ->capture_default_str();
    benchcmd->add_option("--fixtures", fixtures, "Fixture file (default: embedded table)")
        ->check(CLI::ExistingFile);

    double k_min = 0.8, k_max = 1.2;
    int n_points = 41;
    std::optional<int> case_id;
    std::string smile_method = "atm";
    auto* smilecmd = app.add_subcommand("smile", "Emit an equivalent log-normal vol smile as CSV");
    add_market_flags(smilecmd, market, false);
    smilecmd->add_option("--k-min", k_min, "Lowest K/S0")->check(CLI::PositiveNumber)->capture_default_str();
    smilecmd->add_option("--k-max", k_max, "Highest K/S0")->check(CLI::PositiveNumber)->capture_default_str();
    smilecmd->add_option("--n-points", n_points, "Number of grid points")->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    smilecmd->add_option("--method", smile_method, "lead, atm, lin or quad")
        ->check(CLI::IsMember({"lead", "atm", "lin", "quad"}))
        ->capture_default_str();
    smilecmd->add_option("--case", case_id, "Use a benchmark case's parameters and add its benchmark point")
        ->check(CLI::Range(1, 7));

    auto* mccmd = app.add_subcommand("mc-check", "Compare Monte Carlo against the linear-order expansion");
    add_market_flags(mccmd, market, true);
    add_mc_flags(mccmd, mcf);
    mccmd->add_option("--digits", digits, "Decimal places in the output")->check(CLI::Range(0, 17))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*price) return run_price(g, market, mcf, method, digits);
        if (*benchcmd) return run_bench(g, table, tolerance, fixtures);
        if (*smilecmd) {
            if (!(k_max > k_min)) throw CLI::ValidationError("--k-max", "must exceed --k-min");
            return run_smile(g, market, k_min, k_max, n_points, smile_method, case_id);
        }
        if (*mccmd) return run_mc_check(g, market, mcf, digits);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
