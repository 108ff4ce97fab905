#pragma once

#include <span>
#include <vector>

#include "msloc/geometry.hpp"
#include "msloc/random.hpp"

namespace msloc {

/// Standard deviations of the three measurement channels. Zero disables a channel's noise.
struct NoiseSpec {
    double sigma_br_m = 0.0;
    double sigma_brr_mps = 0.0;
    double sigma_doa_deg = 0.0;

    /// Throws ValidationError naming `noise.<field>` for negative or non-finite values.
    void validate() const;

    friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

/// Noisy observations for every pair. DOA values are raw and may fall outside [0, π].
struct MeasurementSet {
    std::vector<double> br_m;
    std::vector<double> brr_mps;
    std::vector<double> doa_rad;
    NoiseSpec noise;

    std::size_t pair_count() const noexcept { return br_m.size(); }
    /// Measurements of the listed pairs only, in that order.
    MeasurementSet subset(const std::vector<std::size_t>& pairs) const;

    friend bool operator==(const MeasurementSet&, const MeasurementSet&) = default;
};

/// Adds zero-mean Gaussian noise to ground truth.
///
/// Draw order is fixed: N BR draws from `br_stream`, then N BRR draws from
/// `brr_stream`, then N DOA draws from `doa_stream`. The DOA sigma is given
/// in degrees and converted to radians here. Throws EmptyTruth for N = 0.
MeasurementSet generate_measurements(std::span<const PairTruth> truth, double theta0_rad, const NoiseSpec& noise,
                                     RandomStream& br_stream, RandomStream& brr_stream, RandomStream& doa_stream);

/// Single-stream form: all 3N draws come from `stream` in the same order.
MeasurementSet generate_measurements(std::span<const PairTruth> truth, double theta0_rad, const NoiseSpec& noise,
                                     RandomStream& stream);

/// Uses the three channel streams derived from (master_seed, trial).
MeasurementSet generate_trial_measurements(std::span<const PairTruth> truth, double theta0_rad,
                                           const NoiseSpec& noise, std::uint64_t master_seed, std::uint64_t trial);

}  // namespace msloc
