#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "msloc/estimator.hpp"
#include "msloc/montecarlo.hpp"

namespace msloc {

/// Scenario file contents in boundary units (degrees, SI lengths and speeds).
///
/// JSON layout:
///   { "txs": [{"range_m": 50, "angle_deg": 0}, ...],
///     "target": {"range_m", "angle_deg", "speed_mps", "heading_deg"},
///     "noise": {"sigma_br_m", "sigma_brr_mps", "sigma_doa_deg"},
///     "bounds": {"max_range_m": 1000, "max_speed_mps": 100},   (optional)
///     "trials": 5000, "seed": 0,                                 (optional)
///     "sweep": {"channel": "br"|"brr"|"doa", "values": [...]} }  (optional)
/// Omitting sweep.values selects 7 log-spaced points from 0.1 to 10.
struct ScenarioFile {
    struct Tx {
        double range_m = 0.0;
        double angle_deg = 0.0;
        friend bool operator==(const Tx&, const Tx&) = default;
    };
    struct Target {
        double range_m = 0.0;
        double angle_deg = 0.0;
        double speed_mps = 0.0;
        double heading_deg = 0.0;
        friend bool operator==(const Target&, const Target&) = default;
    };
    struct Bounds {
        double max_range_m = 1000.0;
        double max_speed_mps = 100.0;
        friend bool operator==(const Bounds&, const Bounds&) = default;
    };
    struct Sweep {
        SweepChannel channel = SweepChannel::br;
        std::vector<double> values;
        friend bool operator==(const Sweep&, const Sweep&) = default;
    };

    std::vector<Tx> txs;
    Target target;
    NoiseSpec noise;
    Bounds bounds;
    std::size_t trials = 5000;
    std::uint64_t seed = 0;
    std::optional<Sweep> sweep;

    /// Radian-valued scene. Throws ValidationError.
    Scene scene() const;
    TargetState target_state() const;
    TrialSpec trial_spec(const EstimatorOptions& estimator = {}) const;
    /// Throws ValidationError naming `sweep` when the file has no sweep block.
    SweepSpec sweep_spec(const EstimatorOptions& estimator = {}) const;

    /// Checks every invariant; throws ValidationError naming the field.
    void validate() const;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Throws ParseError (malformed JSON, wrong types, unknown keys) or ValidationError.
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile parse_scenario(const std::filesystem::path& path);

/// Pretty-printed JSON that parses back to an equal ScenarioFile.
std::string write_scenario(const ScenarioFile& scenario);

}  // namespace msloc
