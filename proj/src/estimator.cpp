#include "msloc/estimator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"

namespace msloc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_sizes(const Scene& scene, const MeasurementSet& meas) {
    const auto n = meas.br_m.size();
    if (n == 0 || meas.brr_mps.size() != n || meas.doa_rad.size() != n) {
        throw EmptyInput("measurement set must hold N >= 1 equal-length sequences");
    }
    if (n != scene.pair_count()) {
        throw std::invalid_argument("measurement set has " + std::to_string(n) + " pairs, scene has " +
                                    std::to_string(scene.pair_count()));
    }
}

struct PairGeometry {
    std::size_t pair;
    PolarPoint tx;
    ProjectionDirections dirs;
};

// Pairs whose target path is defined at pos_hat; the rest are reported as excluded.
std::vector<PairGeometry> usable_pairs(const Scene& scene, const PolarPoint& pos_hat, AngleResolution resolution,
                                       std::vector<std::size_t>& excluded) {
    std::vector<PairGeometry> out;
    for (std::size_t i = 0; i < scene.pair_count(); ++i) {
        try {
            out.push_back({i, scene.tx(i), projection_directions(scene.tx(i), pos_hat, resolution)});
        } catch (const DegenerateGeometry&) {
            excluded.push_back(i);
        }
    }
    return out;
}

double pair_prediction(const PairGeometry& g, const PolarPoint& pos_hat, const PolarVelocity& vel) {
    return -reflected_path_term(pos_hat, vel) + target_path_rate(g.tx, g.dirs.tx_angle_rad, pos_hat, vel);
}

void fill_diagnostics(VelocityEstimate& est, const std::vector<PairGeometry>& pairs, const Scene& scene,
                      const MeasurementSet& meas, const PolarPoint& pos_hat) {
    est.predicted_brr_mps.assign(scene.pair_count(), kNaN);
    double sq = 0.0;
    for (const auto& g : pairs) {
        const double p = pair_prediction(g, pos_hat, est.velocity);
        est.predicted_brr_mps[g.pair] = p;
        sq += (p - meas.brr_mps[g.pair]) * (p - meas.brr_mps[g.pair]);
    }
    est.residual_mps = std::sqrt(sq);
}

}  // namespace

double estimate_doa(const MeasurementSet& meas) {
    if (meas.doa_rad.empty()) throw EmptyInput("no DOA measurements");
    const double mean =
        std::accumulate(meas.doa_rad.begin(), meas.doa_rad.end(), 0.0) / static_cast<double>(meas.doa_rad.size());
    return std::clamp(mean, 0.0, kPi);
}

double single_pair_range(double br_m, const PolarPoint& tx, double theta_hat_rad) {
    if (!(br_m >= 0.0)) throw std::invalid_argument("bistatic range must be >= 0");
    const double li = tx.range_m;
    const double numerator = br_m * br_m + 2.0 * br_m * li;
    const double denominator = 2.0 * br_m + 2.0 * li - 2.0 * li * std::cos(tx.angle_rad - theta_hat_rad);
    if (denominator <= kRangeDenominatorTol * li) {
        throw DegenerateGeometry("range inversion denominator vanishes: target direction on the TX baseline");
    }
    return numerator / denominator;
}

PositionEstimate estimate_position(const Scene& scene, const MeasurementSet& meas) {
    check_sizes(scene, meas);
    PositionEstimate est;
    est.position.angle_rad = estimate_doa(meas);
    est.per_pair_range_m.assign(scene.pair_count(), kNaN);

    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < scene.pair_count(); ++i) {
        try {
            const double a = single_pair_range(std::max(meas.br_m[i], 0.0), scene.tx(i), est.position.angle_rad);
            est.per_pair_range_m[i] = a;
            sum += a;
            ++used;
        } catch (const DegenerateGeometry&) {
            est.excluded_pairs.push_back(i);
        }
    }
    if (used == 0) throw NoUsablePairs("every pair's range inversion is degenerate");
    est.position.range_m = std::clamp(sum / static_cast<double>(used), 0.0, scene.max_range_m());
    return est;
}

double predicted_brr(const Scene& scene, std::size_t pair, const PolarPoint& pos_hat, double v, double phi,
                     AngleResolution resolution) {
    return bistatic_range_rate(scene, pair, TargetState{pos_hat, {v, phi}}, resolution);
}

double velocity_objective(const Scene& scene, const MeasurementSet& meas, const PolarPoint& pos_hat, double v,
                          double phi, AngleResolution resolution) {
    check_sizes(scene, meas);
    std::vector<std::size_t> excluded;
    const auto pairs = usable_pairs(scene, pos_hat, resolution, excluded);
    double sq = 0.0;
    for (const auto& g : pairs) {
        const double r = pair_prediction(g, pos_hat, {v, phi}) - meas.brr_mps[g.pair];
        sq += r * r;
    }
    return std::sqrt(sq);
}

VelocityEstimate estimate_velocity(const Scene& scene, const MeasurementSet& meas, const PolarPoint& pos_hat,
                                   const EstimatorOptions& options) {
    check_sizes(scene, meas);
    VelocityEstimate est;
    const auto pairs = usable_pairs(scene, pos_hat, options.angle_resolution, est.excluded_pairs);
    if (pairs.size() < 2) {
        throw InsufficientPairs("velocity needs >= 2 usable pairs, have " + std::to_string(pairs.size()));
    }

    // -v cos(phi - c1) + v cos(phi - c2) = w1 (cos c2 - cos c1) + w2 (sin c2 - sin c1)
    const auto k = static_cast<Eigen::Index>(pairs.size());
    Eigen::MatrixXd design(k, 2);
    Eigen::VectorXd rhs(k);
    for (Eigen::Index r = 0; r < k; ++r) {
        const auto& d = pairs[static_cast<std::size_t>(r)].dirs;
        design(r, 0) = std::cos(d.target_path_dir) - std::cos(d.reflected_dir);
        design(r, 1) = std::sin(d.target_path_dir) - std::sin(d.reflected_dir);
        rhs(r) = meas.brr_mps[pairs[static_cast<std::size_t>(r)].pair];
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    est.condition_number = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
    if (!(est.condition_number <= kMaxVelocityCondition)) {
        throw SingularGeometry("velocity design matrix condition number " + std::to_string(est.condition_number) +
                               " exceeds 1e8");
    }
    Eigen::Vector2d w = svd.solve(rhs);

    if (options.heading_domain == HeadingDomain::half && w(1) < 0.0) {
        // Optimum of the convex problem lies on the boundary w2 = 0.
        const Eigen::VectorXd col = design.col(0);
        const double denom = col.squaredNorm();
        w = {denom > 0.0 ? col.dot(rhs) / denom : 0.0, 0.0};
    }

    double speed = std::hypot(w(0), w(1));
    double heading = wrap_two_pi(std::atan2(w(1), w(0)));
    if (options.heading_domain == HeadingDomain::half && w(1) == 0.0) heading = w(0) < 0.0 ? kPi : 0.0;
    if (speed > scene.max_speed_mps()) {
        speed = scene.max_speed_mps();
        est.speed_clamped = true;
    }
    if (speed < kZeroSpeed) {
        speed = 0.0;
        heading = 0.0;
        est.heading_degenerate = true;
    }
    est.velocity = {speed, heading};
    fill_diagnostics(est, pairs, scene, meas, pos_hat);
    return est;
}

std::pair<double, double> velocity_grid_spacing(const Scene& scene, std::size_t v_steps, std::size_t phi_steps,
                                                HeadingDomain domain) {
    if (v_steps < 2 || phi_steps < 2) throw std::invalid_argument("grid needs >= 2 steps per axis");
    const double dv = scene.max_speed_mps() / static_cast<double>(v_steps - 1);
    const double dphi = domain == HeadingDomain::half ? kPi / static_cast<double>(phi_steps - 1)
                                                      : kTwoPi / static_cast<double>(phi_steps);
    return {dv, dphi};
}

VelocityEstimate grid_search_velocity(const Scene& scene, const MeasurementSet& meas, const PolarPoint& pos_hat,
                                      std::size_t v_steps, std::size_t phi_steps, const EstimatorOptions& options) {
    check_sizes(scene, meas);
    const auto [dv, dphi] = velocity_grid_spacing(scene, v_steps, phi_steps, options.heading_domain);
    VelocityEstimate est;
    const auto pairs = usable_pairs(scene, pos_hat, options.angle_resolution, est.excluded_pairs);
    if (pairs.size() < 2) {
        throw InsufficientPairs("velocity needs >= 2 usable pairs, have " + std::to_string(pairs.size()));
    }

    double best = std::numeric_limits<double>::infinity();
    PolarVelocity best_vel;
    for (std::size_t a = 0; a < v_steps; ++a) {
        const double v = a + 1 == v_steps ? scene.max_speed_mps() : dv * static_cast<double>(a);
        for (std::size_t b = 0; b < phi_steps; ++b) {
            const PolarVelocity vel{v, dphi * static_cast<double>(b)};
            double sq = 0.0;
            for (const auto& g : pairs) {
                const double r = pair_prediction(g, pos_hat, vel) - meas.brr_mps[g.pair];
                sq += r * r;
            }
            if (sq < best) {
                best = sq;
                best_vel = vel;
            }
            if (v == 0.0) break;  // every heading is the same point
        }
    }
    est.velocity = best_vel;
    est.heading_degenerate = best_vel.speed_mps == 0.0;
    fill_diagnostics(est, pairs, scene, meas, pos_hat);
    return est;
}

std::size_t velocity_grid_cell_distance(const Scene& scene, std::size_t v_steps, std::size_t phi_steps,
                                        const PolarVelocity& a, const PolarVelocity& b, HeadingDomain domain) {
    const auto [dv, dphi] = velocity_grid_spacing(scene, v_steps, phi_steps, domain);
    const auto v_index = [&](double v) { return std::llround(std::clamp(v, 0.0, scene.max_speed_mps()) / dv); };
    const long long dv_idx = std::llabs(v_index(a.speed_mps) - v_index(b.speed_mps));
    long long dphi_idx = 0;
    if (domain == HeadingDomain::half) {
        const auto h = [&](double phi) { return std::llround(std::clamp(phi, 0.0, kPi) / dphi); };
        dphi_idx = std::llabs(h(a.heading_rad) - h(b.heading_rad));
    } else {
        const auto n = static_cast<long long>(phi_steps);
        const auto h = [&](double phi) { return std::llround(wrap_two_pi(phi) / dphi) % n; };
        const long long d = std::llabs(h(a.heading_rad) - h(b.heading_rad));
        dphi_idx = std::min(d, n - d);
    }
    return static_cast<std::size_t>(std::max(dv_idx, dphi_idx));
}

Estimate estimate(const Scene& scene, const MeasurementSet& meas, const EstimatorOptions& options) {
    Estimate out;
    out.position_part = estimate_position(scene, meas);
    if (scene.pair_count() >= 2) {
        out.velocity_part = estimate_velocity(scene, meas, out.position_part.position, options);
    }
    return out;
}

}  // namespace msloc
