#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "msloc/estimator.hpp"
#include "msloc/geometry.hpp"
#include "msloc/measurement.hpp"

namespace msloc {

struct TrialSpec {
    Scene scene;
    TargetState target;
    NoiseSpec noise;
    std::size_t trials = 5000;
    std::uint64_t master_seed = 0;
    EstimatorOptions estimator;
};

enum class SweepChannel { br, brr, doa };

std::string_view to_string(SweepChannel c);
/// Accepts "br", "brr", "doa".
std::optional<SweepChannel> parse_sweep_channel(std::string_view s);

struct SweepSpec {
    TrialSpec base;
    SweepChannel swept_channel = SweepChannel::br;
    /// Sigma values in the channel's unit (m, m/s, deg); non-empty, strictly increasing, >= 0.
    std::vector<double> values;

    void validate() const;
};

struct RmseReport {
    /// NaN when no trial succeeded.
    double rmse_position_m = 0.0;
    /// Absent for single-pair scenes.
    std::optional<double> rmse_velocity_mps;
    std::size_t trials_succeeded = 0;
    std::size_t trials_failed = 0;

    friend bool operator==(const RmseReport&, const RmseReport&) = default;
};

struct SweepPoint {
    double sigma = 0.0;
    NoiseSpec noise;
    RmseReport report;
};

struct RunOptions {
    /// Worker threads; 0 picks the hardware concurrency. Never changes results.
    unsigned threads = 0;
};

/// Root-mean-square distance between polar estimates and the truth (law of cosines).
double rmse_position(std::span<const PolarPoint> estimates, const PolarPoint& truth);
double rmse_velocity(std::span<const PolarVelocity> estimates, const PolarVelocity& truth);

/// Runs spec.trials noisy trials. Trial m draws from derive_stream(master_seed, m, channel).
/// Estimator failures are counted, not fatal. Ground-truth failures (target
/// out of bounds, target on a TX) propagate.
RmseReport run_trials(const TrialSpec& spec, const RunOptions& run = {});

/// One run_trials per sweep value with the swept sigma overridden. Point k
/// uses master seed derive_point_seed(base.master_seed, k).
std::vector<SweepPoint> run_sweep(const SweepSpec& spec, const RunOptions& run = {});

/// n log-spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

NoiseSpec with_sigma(NoiseSpec base, SweepChannel channel, double sigma);

}  // namespace msloc
