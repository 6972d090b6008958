#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asianvol/bspricer.hpp"
#include "asianvol/volexp.hpp"

namespace asianvol::bench {

enum class Column : std::uint8_t { C0, C1Atm, C1Lin, Nlo, Benchmark };

[[nodiscard]] std::string_view to_string(Column c) noexcept;
[[nodiscard]] Column column_from_string(std::string_view s);

/// One line of the fixture table.
struct FixtureRow {
    int table = 0;
    int case_id = 0;
    double strike = 0.0;
    double spot = 0.0;
    double rate = 0.0;
    double vol = 0.0;
    double maturity = 0.0;
    Column column = Column::Benchmark;
    double price = 0.0;
    std::optional<double> err_bps;
    std::string price_text;  ///< price exactly as written in the file
};

/// A benchmark scenario with every reference value the tables quote for it.
struct BenchmarkCase {
    int case_id = 0;
    double strike = 0.0;
    double spot = 0.0;
    double rate = 0.0;
    double vol = 0.0;
    double maturity = 0.0;
    std::optional<double> ref_c0, ref_c1_atm, ref_c1_lin, ref_benchmark, ref_nlo;
    std::optional<double> err_c0, err_c1_atm, err_c1_lin, err_nlo;

    [[nodiscard]] double k() const noexcept { return strike / spot; }
    [[nodiscard]] MarketParams params() const noexcept;
    [[nodiscard]] std::optional<double> reference(Column c) const noexcept;
    [[nodiscard]] std::optional<double> printed_err_bps(Column c) const noexcept;
};

/// Fixture text compiled into the library.
[[nodiscard]] std::string_view embedded_fixture_text() noexcept;
[[nodiscard]] std::string read_fixture_file(const std::filesystem::path& path);

/// Parses the whitespace-separated fixture format; '#' starts a comment line.
/// Throws std::invalid_argument with the offending line number on malformed input.
[[nodiscard]] std::vector<FixtureRow> parse_fixtures(std::string_view text);
/// Groups rows by case id; throws if a case's market data differ between rows.
[[nodiscard]] std::vector<BenchmarkCase> group_cases(const std::vector<FixtureRow>& rows);
[[nodiscard]] std::vector<BenchmarkCase> embedded_cases();

enum class Status : std::uint8_t { Pass, Fail, Skipped, Error };
[[nodiscard]] std::string_view to_string(Status s) noexcept;

struct ReportRow {
    int case_id = 0;
    double k = 0.0;
    double rate = 0.0;
    double vol = 0.0;
    double maturity = 0.0;
    std::string method;
    Column column = Column::C0;
    double price = 0.0;      ///< NaN when not computed
    double reference = 0.0;
    double abs_dev = 0.0;    ///< |price - reference|, NaN when not computed
    double err_bps = 0.0;    ///< (price / benchmark - 1) 1e4, unrounded
    Status status = Status::Error;
    std::string reason;
};

struct BenchmarkReport {
    int table = 1;
    double tolerance = 1e-6;
    std::vector<ReportRow> rows;

    [[nodiscard]] bool passed() const noexcept;
};

inline constexpr std::string_view kNloSkipReason =
    "general-strike resummed volatility not specified in paper";
inline constexpr std::string_view kCsvHeader = "case,k,r,sigma,T,method,price,ref,err_bps,status";

/// Method name used on the command line for a fixture column.
[[nodiscard]] std::string_view method_name(Column c) noexcept;
[[nodiscard]] VolSource vol_source(Column c);

/// Recomputes every reproducible cell of table 1 (C0, C1_atm, C1_lin) or
/// table 2 (NLO). Table-2 cases whose strike differs from spot are skipped.
[[nodiscard]] BenchmarkReport run_benchmark(const std::vector<BenchmarkCase>& cases, int table,
                                            double tolerance = 1e-6);

/// Round half to even at `decimals` decimal places.
[[nodiscard]] double round_half_even(double value, int decimals);
[[nodiscard]] double err_bps(double computed, double benchmark) noexcept;

[[nodiscard]] std::string format_csv(const BenchmarkReport& report);
/// JSON Lines: one object per record, keys equal to the CSV header fields.
[[nodiscard]] std::string format_json(const BenchmarkReport& report);

/// Equivalent log-normal vol implied by the benchmark price of a case.
[[nodiscard]] double benchmark_implied_vol(const BenchmarkCase& c);

}  // namespace asianvol::bench
