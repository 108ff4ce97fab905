#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "msloc/geometry.hpp"
#include "msloc/measurement.hpp"

namespace msloc {

/// Search domain for the estimated heading.
enum class HeadingDomain {
    full,  ///< [0, 2π)
    half,  ///< [0, π]
};

struct EstimatorOptions {
    HeadingDomain heading_domain = HeadingDomain::full;
    AngleResolution angle_resolution = AngleResolution::law_of_cosines;
};

/// Condition number of the velocity design matrix above which the fit is rejected.
inline constexpr double kMaxVelocityCondition = 1e8;
/// Below this speed the heading is reported as 0 and flagged.
inline constexpr double kZeroSpeed = 1e-12;
/// Range inversion is rejected when its denominator is at most this times the baseline.
inline constexpr double kRangeDenominatorTol = 1e-9;

struct PositionEstimate {
    PolarPoint position;
    /// Per-pair range inversions in TX order; NaN for excluded pairs.
    std::vector<double> per_pair_range_m;
    /// Pairs whose inversion was degenerate and left out of the fusion.
    std::vector<std::size_t> excluded_pairs;
};

struct VelocityEstimate {
    PolarVelocity velocity;
    /// Euclidean norm of predicted minus measured BRR over the usable pairs.
    double residual_mps = 0.0;
    /// Predicted BRR at the solution, TX order; NaN for excluded pairs.
    std::vector<double> predicted_brr_mps;
    std::vector<std::size_t> excluded_pairs;
    double condition_number = 0.0;
    bool heading_degenerate = false;
    bool speed_clamped = false;
};

struct Estimate {
    PositionEstimate position_part;
    /// Present only for N >= 2.
    std::optional<VelocityEstimate> velocity_part;
};

/// Fused DOA: the mean of the measured angles projected onto [0, π].
double estimate_doa(const MeasurementSet& meas);

/// Target range from one pair's bistatic range, the TX position and an angle estimate.
///
/// Inverts L0 + |TX - target| - L_i = br for L0 along the ray at theta_hat.
/// Throws DegenerateGeometry when the target direction lies on the TX baseline
/// and br is ~0, where the bistatic range carries no range information.
double single_pair_range(double br_m, const PolarPoint& tx, double theta_hat_rad);

/// DOA fusion, per-pair range inversion and range fusion (mean clamped to [0, A]).
///
/// Negative noisy bistatic ranges are floored at 0 before inversion. Degenerate
/// pairs are excluded and reported; NoUsablePairs when none remain.
PositionEstimate estimate_position(const Scene& scene, const MeasurementSet& meas);

/// BRR the target would produce for pair `pair` at `pos_hat` moving at (v, phi).
double predicted_brr(const Scene& scene, std::size_t pair, const PolarPoint& pos_hat, double v, double phi,
                     AngleResolution resolution = AngleResolution::law_of_cosines);

/// Norm of predicted minus measured BRR over the pairs where the prediction is defined.
double velocity_objective(const Scene& scene, const MeasurementSet& meas, const PolarPoint& pos_hat, double v,
                          double phi, AngleResolution resolution = AngleResolution::law_of_cosines);

/// Least-squares speed and heading from the BRR measurements.
///
/// The predicted BRR is linear in (v cos phi, v sin phi), so the fit is an
/// N x 2 linear least-squares problem solved by SVD. Speed is clamped to
/// [0, V] radially. With HeadingDomain::half the fit is constrained to
/// v sin phi >= 0.
///
/// Throws InsufficientPairs with fewer than two usable pairs and
/// SingularGeometry when the design matrix condition number exceeds 1e8.
VelocityEstimate estimate_velocity(const Scene& scene, const MeasurementSet& meas, const PolarPoint& pos_hat,
                                   const EstimatorOptions& options = {});

/// Brute-force minimiser of velocity_objective on a grid.
///
/// Speeds are v_steps nodes spanning [0, V] inclusive. Headings are
/// phi_steps nodes spaced 2π/phi_steps over [0, 2π), or phi_steps nodes
/// spanning [0, π] inclusive for HeadingDomain::half.
VelocityEstimate grid_search_velocity(const Scene& scene, const MeasurementSet& meas, const PolarPoint& pos_hat,
                                      std::size_t v_steps, std::size_t phi_steps,
                                      const EstimatorOptions& options = {});

/// Grid spacing used by grid_search_velocity: {speed step, heading step}.
std::pair<double, double> velocity_grid_spacing(const Scene& scene, std::size_t v_steps, std::size_t phi_steps,
                                                HeadingDomain domain = HeadingDomain::full);

/// Chebyshev distance, in grid nodes, between the grid node nearest `a` and
/// the node nearest `b` (heading index taken circularly for the full domain).
/// 0 means same cell, 1 means adjacent cells.
std::size_t velocity_grid_cell_distance(const Scene& scene, std::size_t v_steps, std::size_t phi_steps,
                                        const PolarVelocity& a, const PolarVelocity& b,
                                        HeadingDomain domain = HeadingDomain::full);

/// Position, then velocity when the scene has at least two pairs.
Estimate estimate(const Scene& scene, const MeasurementSet& meas, const EstimatorOptions& options = {});

}  // namespace msloc
