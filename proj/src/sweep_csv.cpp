#include "msloc/sweep_csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "msloc/errors.hpp"

namespace msloc {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double to_double(const std::string& s, const std::string& field) {
    if (s == "nan") return std::nan("");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(field, "not a number: '" + s + "'");
    return v;
}

std::size_t to_count(const std::string& s, const std::string& field) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(field, "not a count: '" + s + "'");
    return v;
}

}  // namespace

double SweepCsvRow::swept_sigma() const {
    switch (channel) {
        case SweepChannel::br: return noise.sigma_br_m;
        case SweepChannel::brr: return noise.sigma_brr_mps;
        case SweepChannel::doa: return noise.sigma_doa_deg;
    }
    return 0.0;
}

std::string format_g9(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_sweep_csv(std::ostream& out, SweepChannel channel, std::span<const SweepPoint> points, std::size_t pairs) {
    out << kSweepCsvHeader << '\n';
    for (const auto& p : points) {
        out << to_string(channel) << ',' << format_g9(p.noise.sigma_br_m) << ',' << format_g9(p.noise.sigma_brr_mps)
            << ',' << format_g9(p.noise.sigma_doa_deg) << ',' << format_g9(p.report.rmse_position_m) << ','
            << (p.report.rmse_velocity_mps ? format_g9(*p.report.rmse_velocity_mps) : std::string()) << ','
            << p.report.trials_succeeded + p.report.trials_failed << ',' << p.report.trials_failed << ',' << pairs
            << '\n';
    }
}

std::vector<SweepCsvRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("line 1", "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepCsvHeader) throw ParseError("line 1", "unexpected header");

    std::vector<SweepCsvRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        const auto f = split(line);
        if (f.size() != 9) throw ParseError(where, "expected 9 fields, got " + std::to_string(f.size()));
        SweepCsvRow r;
        const auto ch = parse_sweep_channel(f[0]);
        if (!ch) throw ParseError(where + " sweep_channel", "unknown channel '" + f[0] + "'");
        r.channel = *ch;
        r.noise = {to_double(f[1], where + " sigma_br_m"), to_double(f[2], where + " sigma_brr_mps"),
                   to_double(f[3], where + " sigma_doa_deg")};
        r.rmse_pos_m = to_double(f[4], where + " rmse_pos_m");
        if (!f[5].empty()) r.rmse_vel_mps = to_double(f[5], where + " rmse_vel_mps");
        r.trials = to_count(f[6], where + " trials");
        r.failed = to_count(f[7], where + " failed");
        r.pairs = to_count(f[8], where + " pairs");
        rows.push_back(r);
    }
    return rows;
}

}  // namespace msloc
