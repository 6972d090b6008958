#include "asianvol/bench.hpp"

#include <charconv>
#include <cmath>
#include <cfenv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "asianvol/errors.hpp"

namespace asianvol::bench {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::invalid_argument("fixture line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view s, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(line_no, "not a number: '" + std::string(s) + "'");
    }
    return v;
}

int parse_int(std::string_view s, std::size_t line_no) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(line_no, "not an integer: '" + std::string(s) + "'");
    }
    return v;
}

std::string format_number(const char* fmt, double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

std::string_view to_string(Column c) noexcept {
    switch (c) {
        case Column::C0: return "C0";
        case Column::C1Atm: return "C1_atm";
        case Column::C1Lin: return "C1_lin";
        case Column::Nlo: return "NLO";
        case Column::Benchmark: return "benchmark";
    }
    return "?";
}

Column column_from_string(std::string_view s) {
    for (Column c : {Column::C0, Column::C1Atm, Column::C1Lin, Column::Nlo, Column::Benchmark}) {
        if (to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown fixture column '" + std::string(s) + "'");
}

std::string_view to_string(Status s) noexcept {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Skipped: return "SKIPPED";
        case Status::Error: return "ERROR";
    }
    return "?";
}

std::string_view method_name(Column c) noexcept {
    switch (c) {
        case Column::C0: return "lead";
        case Column::C1Atm: return "atm";
        case Column::C1Lin: return "lin";
        case Column::Nlo: return "nlo";
        case Column::Benchmark: return "benchmark";
    }
    return "?";
}

VolSource vol_source(Column c) {
    switch (c) {
        case Column::C0: return Order::Leading;
        case Column::C1Atm: return Order::AtmCorrection;
        case Column::C1Lin: return Order::Linear;
        case Column::Nlo: return NloAtm{};
        case Column::Benchmark: break;
    }
    throw std::invalid_argument("benchmark column has no volatility source");
}

MarketParams BenchmarkCase::params() const noexcept {
    MarketParams p;
    p.spot = spot;
    p.rate = rate;
    p.dividend = 0.0;
    p.vol = vol;
    p.maturity = maturity;
    return p;
}

std::optional<double> BenchmarkCase::reference(Column c) const noexcept {
    switch (c) {
        case Column::C0: return ref_c0;
        case Column::C1Atm: return ref_c1_atm;
        case Column::C1Lin: return ref_c1_lin;
        case Column::Nlo: return ref_nlo;
        case Column::Benchmark: return ref_benchmark;
    }
    return std::nullopt;
}

std::optional<double> BenchmarkCase::printed_err_bps(Column c) const noexcept {
    switch (c) {
        case Column::C0: return err_c0;
        case Column::C1Atm: return err_c1_atm;
        case Column::C1Lin: return err_c1_lin;
        case Column::Nlo: return err_nlo;
        case Column::Benchmark: break;
    }
    return std::nullopt;
}

std::string read_fixture_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open fixture file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<FixtureRow> parse_fixtures(std::string_view text) {
    std::vector<FixtureRow> rows;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        const auto fields = split_ws(line);
        if (fields.empty() || fields.front().front() == '#') {
            continue;
        }
        if (fields.size() != 10) {
            fail(line_no, "expected 10 columns, found " + std::to_string(fields.size()));
        }
        FixtureRow r;
        r.table = parse_int(fields[0], line_no);
        r.case_id = parse_int(fields[1], line_no);
        r.strike = parse_double(fields[2], line_no);
        r.spot = parse_double(fields[3], line_no);
        r.rate = parse_double(fields[4], line_no);
        r.vol = parse_double(fields[5], line_no);
        r.maturity = parse_double(fields[6], line_no);
        try {
            r.column = column_from_string(fields[7]);
        } catch (const std::invalid_argument& e) {
            fail(line_no, e.what());
        }
        r.price_text = std::string(fields[8]);
        r.price = parse_double(fields[8], line_no);
        if (fields[9] != "-") {
            r.err_bps = parse_double(fields[9], line_no);
        }
        if (r.table != 1 && r.table != 2) fail(line_no, "table must be 1 or 2");
        if (r.case_id < 1 || r.case_id > 7) fail(line_no, "case must be in 1..7");
        if (!(r.strike > 0.0 && r.spot > 0.0 && r.vol > 0.0 && r.maturity > 0.0)) {
            fail(line_no, "strike, spot, sigma and T must be positive");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<BenchmarkCase> group_cases(const std::vector<FixtureRow>& rows) {
    std::map<int, BenchmarkCase> by_id;
    for (const auto& r : rows) {
        auto [it, inserted] = by_id.try_emplace(r.case_id);
        BenchmarkCase& c = it->second;
        if (inserted) {
            c.case_id = r.case_id;
            c.strike = r.strike;
            c.spot = r.spot;
            c.rate = r.rate;
            c.vol = r.vol;
            c.maturity = r.maturity;
        } else if (c.strike != r.strike || c.spot != r.spot || c.rate != r.rate || c.vol != r.vol ||
                   c.maturity != r.maturity) {
            throw std::invalid_argument("fixture case " + std::to_string(r.case_id) +
                                        " has inconsistent market data between rows");
        }
        switch (r.column) {
            case Column::C0: c.ref_c0 = r.price; c.err_c0 = r.err_bps; break;
            case Column::C1Atm: c.ref_c1_atm = r.price; c.err_c1_atm = r.err_bps; break;
            case Column::C1Lin: c.ref_c1_lin = r.price; c.err_c1_lin = r.err_bps; break;
            case Column::Nlo: c.ref_nlo = r.price; c.err_nlo = r.err_bps; break;
            case Column::Benchmark:
                if (c.ref_benchmark && *c.ref_benchmark != r.price) {
                    throw std::invalid_argument("fixture case " + std::to_string(r.case_id) +
                                                " has conflicting benchmark prices");
                }
                c.ref_benchmark = r.price;
                break;
        }
    }
    std::vector<BenchmarkCase> out;
    out.reserve(by_id.size());
    for (auto& [id, c] : by_id) out.push_back(std::move(c));
    return out;
}

std::vector<BenchmarkCase> embedded_cases() { return group_cases(parse_fixtures(embedded_fixture_text())); }

bool BenchmarkReport::passed() const noexcept {
    for (const auto& r : rows) {
        if (r.status == Status::Fail || r.status == Status::Error) return false;
    }
    return true;
}

double round_half_even(double value, int decimals) {
    if (!std::isfinite(value)) return value;
    const double scale = std::pow(10.0, decimals);
    const int saved = std::fegetround();
    std::fesetround(FE_TONEAREST);
    const double r = std::nearbyint(value * scale) / scale;
    std::fesetround(saved);
    return r;
}

double err_bps(double computed, double benchmark) noexcept { return (computed / benchmark - 1.0) * 1e4; }

BenchmarkReport run_benchmark(const std::vector<BenchmarkCase>& cases, int table, double tolerance) {
    if (table != 1 && table != 2) {
        throw std::invalid_argument("run_benchmark: table must be 1 or 2");
    }
    BenchmarkReport report;
    report.table = table;
    report.tolerance = tolerance;
    const std::vector<Column> columns =
        (table == 1) ? std::vector<Column>{Column::C0, Column::C1Atm, Column::C1Lin} : std::vector<Column>{Column::Nlo};

    for (const auto& c : cases) {
        for (Column col : columns) {
            const auto ref = c.reference(col);
            if (!ref) continue;
            ReportRow row;
            row.case_id = c.case_id;
            row.k = c.k();
            row.rate = c.rate;
            row.vol = c.vol;
            row.maturity = c.maturity;
            row.method = std::string(method_name(col));
            row.column = col;
            row.reference = *ref;
            row.price = kNaN;
            row.abs_dev = kNaN;
            row.err_bps = kNaN;

            if (col == Column::Nlo && c.strike != c.spot) {
                row.status = Status::Skipped;
                row.reason = std::string(kNloSkipReason);
                report.rows.push_back(std::move(row));
                continue;
            }
            try {
                row.price = bs::asian_price(c.strike, c.params(), vol_source(col), OptionSide::Call);
                row.abs_dev = std::abs(row.price - row.reference);
                if (c.ref_benchmark) row.err_bps = err_bps(row.price, *c.ref_benchmark);
                row.status = (row.abs_dev <= tolerance) ? Status::Pass : Status::Fail;
            } catch (const std::exception& e) {
                row.status = Status::Error;
                row.reason = e.what();
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

std::string format_csv(const BenchmarkReport& report) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : report.rows) {
        out += std::to_string(r.case_id);
        out += ',' + format_number("%.6f", r.k);
        out += ',' + format_number("%.10g", r.rate);
        out += ',' + format_number("%.10g", r.vol);
        out += ',' + format_number("%.10g", r.maturity);
        out += ',' + r.method;
        out += ',' + format_number("%.6f", round_half_even(r.price, 6));
        out += ',' + format_number("%.6f", r.reference);
        out += ',' + format_number("%.1f", round_half_even(r.err_bps, 1));
        out += ',';
        out += to_string(r.status);
        out += '\n';
    }
    return out;
}

std::string format_json(const BenchmarkReport& report) {
    std::string out;
    auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
    for (const auto& r : report.rows) {
        nlohmann::ordered_json j;
        j["case"] = r.case_id;
        j["k"] = num(round_half_even(r.k, 6));
        j["r"] = r.rate;
        j["sigma"] = r.vol;
        j["T"] = r.maturity;
        j["method"] = r.method;
        j["price"] = num(round_half_even(r.price, 6));
        j["ref"] = r.reference;
        j["err_bps"] = num(round_half_even(r.err_bps, 1));
        j["status"] = std::string(to_string(r.status));
        out += j.dump();
        out += '\n';
    }
    return out;
}

double benchmark_implied_vol(const BenchmarkCase& c) {
    if (!c.ref_benchmark) {
        throw std::invalid_argument("benchmark_implied_vol: case has no benchmark price");
    }
    const MarketParams p = c.params();
    VanillaQuote q;
    q.forward = volexp::forward_price(p);
    q.strike = c.strike;
    q.maturity = p.maturity;
    q.discount = std::exp(-p.rate * p.maturity);
    q.side = OptionSide::Call;
    return bs::implied_vol(*c.ref_benchmark, q);
}

}  // namespace asianvol::bench
