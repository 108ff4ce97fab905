#pragma once

#include <cstddef>
#include <vector>

namespace msloc {

/// Position relative to the receiver at the origin. Angles in radians.
struct PolarPoint {
    double range_m = 0.0;
    double angle_rad = 0.0;

    friend bool operator==(const PolarPoint&, const PolarPoint&) = default;
};

struct PolarVelocity {
    double speed_mps = 0.0;
    double heading_rad = 0.0;

    friend bool operator==(const PolarVelocity&, const PolarVelocity&) = default;
};

struct TargetState {
    PolarPoint position;
    PolarVelocity velocity;

    friend bool operator==(const TargetState&, const TargetState&) = default;
};

struct Cartesian {
    double x = 0.0;
    double y = 0.0;
};

/// Transmitter layout plus the estimator's search bounds.
///
/// The receiver sits at the origin. Pair indices used throughout the library
/// are zero-based positions in `txs`.
class Scene {
public:
    /// Throws ValidationError on an empty TX list, a TX at the origin,
    /// non-finite values or non-positive bounds.
    Scene(std::vector<PolarPoint> txs, double max_range_m, double max_speed_mps);

    const std::vector<PolarPoint>& txs() const noexcept { return txs_; }
    const PolarPoint& tx(std::size_t pair) const;
    std::size_t pair_count() const noexcept { return txs_.size(); }
    double max_range_m() const noexcept { return max_range_m_; }
    double max_speed_mps() const noexcept { return max_speed_mps_; }

    /// Same bounds, subset of transmitters in the given order.
    Scene with_pairs(const std::vector<std::size_t>& pairs) const;

    friend bool operator==(const Scene&, const Scene&) = default;

private:
    std::vector<PolarPoint> txs_;
    double max_range_m_;
    double max_speed_mps_;
};

/// How the TX interior angle is recovered from the triangle sides.
///
/// `law_of_cosines` is single-valued on [0, π]. `law_of_sines` is the arcsin
/// form; it folds obtuse angles onto their acute supplement and is kept only
/// as a negative control for the oracle suite.
enum class AngleResolution { law_of_cosines, law_of_sines };

/// Noise-free quantities for one TX-RX pair.
struct PairTruth {
    double target_path_range_m = 0.0;
    double bistatic_range_m = 0.0;
    double bistatic_range_rate_mps = 0.0;
    double tx_angle_rad = 0.0;
};

/// Radicands and cosine arguments may leave their domain by this much
/// before DegenerateGeometry is raised.
inline constexpr double kDomainGuard = 1e-12;

/// x = -L cos(theta), y = L sin(theta).
Cartesian to_cartesian(const PolarPoint& p);
PolarPoint from_cartesian(const Cartesian& c);
/// Velocity vector under the same embedding as positions.
Cartesian to_cartesian(const PolarVelocity& v);

/// Law-of-cosines distance between two polar points.
double polar_distance(const PolarPoint& a, const PolarPoint& b);

/// TX-to-target distance.
double target_path_range(const Scene& scene, std::size_t pair, const PolarPoint& pos);

/// Path length TX -> target -> RX minus the TX -> RX baseline.
double bistatic_range(const Scene& scene, std::size_t pair, const PolarPoint& pos);

/// Interior angle at the TX of the RX-TX-target triangle, in [0, π].
/// Throws DegenerateGeometry when the target coincides with the TX.
double tx_angle(const Scene& scene, std::size_t pair, const PolarPoint& pos,
                AngleResolution resolution = AngleResolution::law_of_cosines);
double tx_angle(const PolarPoint& tx, const PolarPoint& pos,
                AngleResolution resolution = AngleResolution::law_of_cosines);

/// Headings along which the target velocity is projected for one pair.
///
/// The range rate is v cos(heading - reflected_dir) for the reflected path and
/// v cos(heading - target_path_dir) for the target path, so
/// brr = -v cos(h - reflected_dir) + v cos(h - target_path_dir).
/// Both the forward model and the velocity estimator are built on this.
struct ProjectionDirections {
    double reflected_dir = 0.0;
    double target_path_dir = 0.0;
    double tx_angle_rad = 0.0;
};

ProjectionDirections projection_directions(const PolarPoint& tx, const PolarPoint& pos,
                                           AngleResolution resolution = AngleResolution::law_of_cosines);

/// Range rate of the reflected path term as it enters the BRR with a leading minus:
/// v cos(heading - π - theta0).
double reflected_path_term(const PolarPoint& pos, const PolarVelocity& vel);

/// Target-path rate, general form with sign(theta0 - thetai), sign(0) = +1.
double target_path_rate(const PolarPoint& tx, double tx_angle_rad, const PolarPoint& pos,
                        const PolarVelocity& vel);
/// Target-path rate for a TX at a smaller angle than the target.
double target_path_rate_tx_below(const PolarPoint& tx, double tx_angle_rad, const PolarVelocity& vel);
/// Target-path rate for a TX at a larger angle than the target.
double target_path_rate_tx_above(const PolarPoint& tx, double tx_angle_rad, const PolarVelocity& vel);

/// Bistatic range rate of one pair for a target in straight-line motion.
double bistatic_range_rate(const Scene& scene, std::size_t pair, const TargetState& state,
                           AngleResolution resolution = AngleResolution::law_of_cosines);
double bistatic_range_rate(const PolarPoint& tx, const TargetState& state,
                           AngleResolution resolution = AngleResolution::law_of_cosines);

/// Central difference of bistatic_range along the Cartesian velocity.
/// Independent of the projection formulas; used to validate them.
double brr_finite_difference(const Scene& scene, std::size_t pair, const TargetState& state, double dt);

/// Per-pair truth in TX order. Throws OutOfBounds when the target exceeds the
/// scene's range or speed bound and DegenerateGeometry when it sits on a TX.
std::vector<PairTruth> ground_truth(const Scene& scene, const TargetState& state,
                                    AngleResolution resolution = AngleResolution::law_of_cosines);

}  // namespace msloc
