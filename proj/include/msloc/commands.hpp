#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "msloc/estimator.hpp"
#include "msloc/svg_plot.hpp"

namespace msloc {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,  ///< usage, parse and I/O errors
    kExitValidation = 2,
    kExitEstimation = 3,
    kExitOracle = 4,
};

struct CommandOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    bool noise_off = false;
    HeadingDomain heading_domain = HeadingDomain::full;
    unsigned threads = 0;
};

/// One noisy trial (trial index 0 of the seed) plus the noise-free truth, as key-value text.
int cmd_simulate(const std::filesystem::path& scenario, const CommandOptions& opts, std::ostream& out,
                 std::ostream& err);

/// Runs the scenario's sweep and writes the CSV to `csv_out`.
int cmd_sweep(const std::filesystem::path& scenario, const std::filesystem::path& csv_out,
              const CommandOptions& opts, std::ostream& out, std::ostream& err);

struct OracleCommandOptions {
    std::size_t samples = 1000;
    std::optional<std::uint64_t> seed;
    AngleResolution angle_resolution = AngleResolution::law_of_cosines;
};

/// Oracle suite around the scenario's scene; exit 4 on any threshold breach.
int cmd_oracle(const std::filesystem::path& scenario, const OracleCommandOptions& opts, std::ostream& out,
               std::ostream& err);

int cmd_plot(const std::filesystem::path& csv, const std::filesystem::path& svg_out, PlotMetric metric,
             std::ostream& err);

}  // namespace msloc
