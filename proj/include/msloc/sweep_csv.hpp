#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msloc/montecarlo.hpp"

namespace msloc {

/// Frozen header of sweep CSV files.
inline constexpr std::string_view kSweepCsvHeader =
    "sweep_channel,sigma_br_m,sigma_brr_mps,sigma_doa_deg,rmse_pos_m,rmse_vel_mps,trials,failed,pairs";

/// One parsed sweep CSV row. rmse_vel_mps is empty for single-pair scenes.
struct SweepCsvRow {
    SweepChannel channel = SweepChannel::br;
    NoiseSpec noise;
    double rmse_pos_m = 0.0;
    std::optional<double> rmse_vel_mps;
    std::size_t trials = 0;
    std::size_t failed = 0;
    std::size_t pairs = 0;

    /// Sigma of the swept channel.
    double swept_sigma() const;
};

/// Formats with 9 significant digits (printf %.9g).
std::string format_g9(double v);

/// Header plus one row per sweep point, '\n' line endings.
void write_sweep_csv(std::ostream& out, SweepChannel channel, std::span<const SweepPoint> points, std::size_t pairs);

/// Throws ParseError naming the line for a wrong header or malformed row.
std::vector<SweepCsvRow> read_sweep_csv(std::istream& in);

}  // namespace msloc
