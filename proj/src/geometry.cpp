#include "msloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"

namespace msloc {

namespace {

bool finite(double v) { return std::isfinite(v); }

void check_pair(const Scene& scene, std::size_t pair) {
    if (pair >= scene.pair_count()) {
        throw std::out_of_range("pair index " + std::to_string(pair) + " out of range for " +
                                std::to_string(scene.pair_count()) + " TXs");
    }
}

// Clamps x into [lo, hi] if it overshoots by at most the guard.
double guarded_clamp(double x, double lo, double hi, const char* what) {
    if (x < lo - kDomainGuard || x > hi + kDomainGuard || std::isnan(x)) {
        std::ostringstream os;
        os << what << " out of domain: " << x;
        throw DegenerateGeometry(os.str());
    }
    return std::clamp(x, lo, hi);
}

bool collocated(const PolarPoint& tx, const PolarPoint& pos, double b) {
    return b <= kDomainGuard * std::max({1.0, tx.range_m, pos.range_m});
}

// +1 when the target is at or above the TX angle.
double side_sign(const PolarPoint& tx, const PolarPoint& pos) {
    return wrap_pi(pos.angle_rad - tx.angle_rad) >= 0.0 ? 1.0 : -1.0;
}

}  // namespace

Scene::Scene(std::vector<PolarPoint> txs, double max_range_m, double max_speed_mps)
    : txs_(std::move(txs)), max_range_m_(max_range_m), max_speed_mps_(max_speed_mps) {
    if (txs_.empty()) throw ValidationError("txs", "scene needs at least one TX");
    for (std::size_t i = 0; i < txs_.size(); ++i) {
        const auto& tx = txs_[i];
        const std::string field = "txs[" + std::to_string(i) + "]";
        if (!finite(tx.range_m) || !finite(tx.angle_rad)) throw ValidationError(field, "non-finite value");
        if (tx.range_m <= 0.0) throw ValidationError(field + ".range_m", "TX must not sit on the receiver");
    }
    if (!finite(max_range_m_) || max_range_m_ <= 0.0) throw ValidationError("max_range_m", "must be > 0");
    if (!finite(max_speed_mps_) || max_speed_mps_ <= 0.0) throw ValidationError("max_speed_mps", "must be > 0");
}

const PolarPoint& Scene::tx(std::size_t pair) const {
    check_pair(*this, pair);
    return txs_[pair];
}

Scene Scene::with_pairs(const std::vector<std::size_t>& pairs) const {
    std::vector<PolarPoint> subset;
    subset.reserve(pairs.size());
    for (auto p : pairs) subset.push_back(tx(p));
    return Scene(std::move(subset), max_range_m_, max_speed_mps_);
}

Cartesian to_cartesian(const PolarPoint& p) {
    return {-p.range_m * std::cos(p.angle_rad), p.range_m * std::sin(p.angle_rad)};
}

Cartesian to_cartesian(const PolarVelocity& v) {
    return {-v.speed_mps * std::cos(v.heading_rad), v.speed_mps * std::sin(v.heading_rad)};
}

PolarPoint from_cartesian(const Cartesian& c) {
    return {std::hypot(c.x, c.y), std::atan2(c.y, -c.x)};
}

double polar_distance(const PolarPoint& a, const PolarPoint& b) {
    // a^2 - 2ab cos(d) + b^2 rewritten as (a - b)^2 + 4ab sin^2(d / 2); the
    // textbook form loses all significant digits for nearly coincident points.
    const double half_sin = std::sin(0.5 * (a.angle_rad - b.angle_rad));
    const double diff = a.range_m - b.range_m;
    return std::sqrt(diff * diff + 4.0 * a.range_m * b.range_m * half_sin * half_sin);
}

double target_path_range(const Scene& scene, std::size_t pair, const PolarPoint& pos) {
    return polar_distance(scene.tx(pair), pos);
}

double bistatic_range(const Scene& scene, std::size_t pair, const PolarPoint& pos) {
    const auto& tx = scene.tx(pair);
    return pos.range_m + polar_distance(tx, pos) - tx.range_m;
}

double tx_angle(const PolarPoint& tx, const PolarPoint& pos, AngleResolution resolution) {
    const double b = polar_distance(tx, pos);
    if (collocated(tx, pos, b)) throw DegenerateGeometry("target coincides with TX; angle undefined");
    if (resolution == AngleResolution::law_of_sines) {
        const double s = pos.range_m * std::sin(std::abs(pos.angle_rad - tx.angle_rad)) / b;
        return std::asin(guarded_clamp(s, -1.0, 1.0, "arcsin argument"));
    }
    const double c = (tx.range_m * tx.range_m + b * b - pos.range_m * pos.range_m) / (2.0 * tx.range_m * b);
    return std::acos(guarded_clamp(c, -1.0, 1.0, "arccos argument"));
}

double tx_angle(const Scene& scene, std::size_t pair, const PolarPoint& pos, AngleResolution resolution) {
    return tx_angle(scene.tx(pair), pos, resolution);
}

ProjectionDirections projection_directions(const PolarPoint& tx, const PolarPoint& pos,
                                           AngleResolution resolution) {
    const double alpha = tx_angle(tx, pos, resolution);
    const double s = side_sign(tx, pos);
    return {kPi + pos.angle_rad, tx.angle_rad - s * (alpha - kPi), alpha};
}

double reflected_path_term(const PolarPoint& pos, const PolarVelocity& vel) {
    return vel.speed_mps * std::cos(vel.heading_rad - kPi - pos.angle_rad);
}

double target_path_rate(const PolarPoint& tx, double tx_angle_rad, const PolarPoint& pos,
                        const PolarVelocity& vel) {
    const double s = side_sign(tx, pos);
    return vel.speed_mps * std::cos(vel.heading_rad - tx.angle_rad + s * (tx_angle_rad - kPi));
}

double target_path_rate_tx_below(const PolarPoint& tx, double tx_angle_rad, const PolarVelocity& vel) {
    return vel.speed_mps * std::cos(vel.heading_rad - tx.angle_rad + (tx_angle_rad - kPi));
}

double target_path_rate_tx_above(const PolarPoint& tx, double tx_angle_rad, const PolarVelocity& vel) {
    return vel.speed_mps * std::cos(vel.heading_rad - tx.angle_rad - (tx_angle_rad - kPi));
}

double bistatic_range_rate(const PolarPoint& tx, const TargetState& state, AngleResolution resolution) {
    const double alpha = tx_angle(tx, state.position, resolution);
    return -reflected_path_term(state.position, state.velocity) +
           target_path_rate(tx, alpha, state.position, state.velocity);
}

double bistatic_range_rate(const Scene& scene, std::size_t pair, const TargetState& state,
                           AngleResolution resolution) {
    return bistatic_range_rate(scene.tx(pair), state, resolution);
}

double brr_finite_difference(const Scene& scene, std::size_t pair, const TargetState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");
    check_pair(scene, pair);
    if (state.velocity.speed_mps == 0.0) return 0.0;
    const Cartesian p = to_cartesian(state.position);
    const Cartesian u = to_cartesian(state.velocity);
    const PolarPoint ahead = from_cartesian({p.x + dt * u.x, p.y + dt * u.y});
    const PolarPoint behind = from_cartesian({p.x - dt * u.x, p.y - dt * u.y});
    return (bistatic_range(scene, pair, ahead) - bistatic_range(scene, pair, behind)) / (2.0 * dt);
}

std::vector<PairTruth> ground_truth(const Scene& scene, const TargetState& state, AngleResolution resolution) {
    if (state.position.range_m > scene.max_range_m()) {
        throw OutOfBounds("target range " + std::to_string(state.position.range_m) + " m exceeds max range " +
                          std::to_string(scene.max_range_m()) + " m");
    }
    if (state.velocity.speed_mps > scene.max_speed_mps()) {
        throw OutOfBounds("target speed " + std::to_string(state.velocity.speed_mps) + " m/s exceeds max speed " +
                          std::to_string(scene.max_speed_mps()) + " m/s");
    }
    std::vector<PairTruth> out;
    out.reserve(scene.pair_count());
    for (std::size_t i = 0; i < scene.pair_count(); ++i) {
        const auto& tx = scene.tx(i);
        PairTruth t;
        t.target_path_range_m = polar_distance(tx, state.position);
        t.bistatic_range_m = state.position.range_m + t.target_path_range_m - tx.range_m;
        t.tx_angle_rad = tx_angle(tx, state.position, resolution);
        t.bistatic_range_rate_mps = -reflected_path_term(state.position, state.velocity) +
                                    target_path_rate(tx, t.tx_angle_rad, state.position, state.velocity);
        out.push_back(t);
    }
    return out;
}

}  // namespace msloc
